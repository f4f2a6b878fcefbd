#pragma once

#include <cstdint>
#include <vector>

namespace spreadrank {

// splitmix64 finalizer; bijective, used both for seeding and for hashing
// (master, node, run) triples into independent stream keys.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        return mix64(state);
    }
};

// xoshiro256++, seeded through splitmix64 as its authors recommend.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }

    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
        if (!(s_[0] | s_[1] | s_[2] | s_[3])) s_[0] = 1;  // all-zero state is absorbing
    }

    std::uint64_t operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits, so u < p is exact for p = 0
    // (never) and p = 1 (always).
    double uniform01() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

    // Unbiased integer in [0, n) via multiply-shift rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(operator()()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(operator()()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Key for the RNG stream of one (node, run) Monte-Carlo repetition. Every
// repetition draws from its own generator, so results do not depend on how
// repetitions are scheduled across threads.
inline std::uint64_t stream_key(std::uint64_t master_seed, std::uint64_t node, std::uint64_t run) {
    std::uint64_t h = mix64(master_seed + 0x9E3779B97F4A7C15ULL * (node + 1));
    return mix64(h + 0x9E3779B97F4A7C15ULL * (run + 1));
}

template <typename T>
void fisher_yates(std::vector<T>& v, Xoshiro256pp& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace spreadrank
