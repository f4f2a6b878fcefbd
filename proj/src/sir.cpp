#include "spreadrank/sir.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spreadrank/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spreadrank {

void SirConfig::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("transmission probability must lie in [0,1]");
    if (gamma != 1.0)
        throw std::invalid_argument("only certain recovery (gamma = 1) is supported");
    if (runs < 1) throw std::invalid_argument("run count must be positive");
}

namespace {

// Scratch reused across runs; the stamp trick avoids O(N) clears per run.
struct SirScratch {
    std::vector<std::int64_t> stamp;
    std::vector<NodeId> frontier, next;
    std::int64_t epoch = 0;

    explicit SirScratch(NodeId n) : stamp(n, -1) {}
};

std::int64_t run_once(const Graph& g, NodeId seed, double lambda, Xoshiro256pp& rng,
                      SirScratch& sc) {
    const std::int64_t epoch = ++sc.epoch;
    sc.stamp[seed] = epoch;
    sc.frontier.assign(1, seed);
    std::int64_t infected = 1;
    while (!sc.frontier.empty()) {
        sc.next.clear();
        for (NodeId u : sc.frontier) {
            for (NodeId v : g.neighbors(u)) {
                if (sc.stamp[v] == epoch) continue;  // already infected or recovered
                if (rng.uniform01() < lambda) {
                    sc.stamp[v] = epoch;
                    sc.next.push_back(v);
                    ++infected;
                }
            }
        }
        // Skipping attempts on nodes another spreader reached this round does
        // not change the infection law: a node falls with probability
        // 1-(1-lambda)^(#attackers) either way. The whole frontier recovers
        // here (certain recovery).
        std::swap(sc.frontier, sc.next);
    }
    return infected;
}

OutbreakSummary summarize(std::int64_t sum, std::int64_t sum_sq, std::int64_t lo, std::int64_t hi,
                          std::int64_t runs) {
    OutbreakSummary s;
    s.runs = runs;
    s.min = lo;
    s.max = hi;
    s.mean = static_cast<double>(sum) / static_cast<double>(runs);
    if (runs > 1) {
        // Sample variance from integer moments: (sum_sq - sum^2/runs)/(runs-1).
        const double num = static_cast<double>(sum_sq) -
                           static_cast<double>(sum) * static_cast<double>(sum) /
                               static_cast<double>(runs);
        const double var = std::max(0.0, num / static_cast<double>(runs - 1));
        s.std_error = std::sqrt(var / static_cast<double>(runs));
    }
    return s;
}

OutbreakSummary simulate_node(const Graph& g, NodeId seed, const SirConfig& cfg,
                              SirScratch& sc) {
    std::int64_t sum = 0, sum_sq = 0;
    std::int64_t lo = g.node_count(), hi = 0;
    for (std::int64_t run = 0; run < cfg.runs; ++run) {
        Xoshiro256pp rng(stream_key(cfg.master_seed, static_cast<std::uint64_t>(seed),
                                    static_cast<std::uint64_t>(run)));
        const std::int64_t size = run_once(g, seed, cfg.lambda, rng, sc);
        sum += size;
        sum_sq += size * size;
        lo = std::min(lo, size);
        hi = std::max(hi, size);
    }
    return summarize(sum, sum_sq, lo, hi, cfg.runs);
}

}  // namespace

OutbreakSummary simulate_single_seed(const Graph& g, NodeId seed_node, const SirConfig& cfg) {
    cfg.validate();
    if (seed_node < 0 || seed_node >= g.node_count())
        throw std::invalid_argument("seed node out of range");
    SirScratch sc(g.node_count());
    return simulate_node(g, seed_node, cfg, sc);
}

SpreadScores spreading_power_all(const Graph& g, const SirConfig& cfg, int threads) {
    cfg.validate();
    const NodeId n = g.node_count();
    SpreadScores out;
    out.config = cfg;
    out.mean_outbreak.resize(n);
    out.std_error.resize(n);
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    // Every (node, run) pair owns an RNG stream derived from the master seed,
    // so the schedule cannot leak into the results.
#pragma omp parallel
    {
        SirScratch sc(n);
#pragma omp for schedule(dynamic, 16)
        for (NodeId u = 0; u < n; ++u) {
            const OutbreakSummary s = simulate_node(g, u, cfg, sc);
            out.mean_outbreak[u] = s.mean;
            out.std_error[u] = s.std_error;
        }
    }
    return out;
}

SpreadScores spreading_power_all_serial(const Graph& g, const SirConfig& cfg) {
    cfg.validate();
    const NodeId n = g.node_count();
    SpreadScores out;
    out.config = cfg;
    out.mean_outbreak.resize(n);
    out.std_error.resize(n);
    SirScratch sc(n);
    for (NodeId u = 0; u < n; ++u) {
        const OutbreakSummary s = simulate_node(g, u, cfg, sc);
        out.mean_outbreak[u] = s.mean;
        out.std_error[u] = s.std_error;
    }
    return out;
}

double exact_expected_outbreak(const Graph& g, NodeId seed_node, double lambda) {
    if (seed_node < 0 || seed_node >= g.node_count())
        throw std::invalid_argument("seed node out of range");
    const auto edge_list = g.edges();
    const std::size_t m = edge_list.size();
    if (m > 20)
        throw std::invalid_argument("exact outbreak enumeration limited to 20 edges, got " +
                                 std::to_string(m));
    const NodeId n = g.node_count();

    std::vector<double> pow_open(m + 1), pow_closed(m + 1);
    pow_open[0] = pow_closed[0] = 1.0;
    for (std::size_t i = 1; i <= m; ++i) {
        pow_open[i] = pow_open[i - 1] * lambda;
        pow_closed[i] = pow_closed[i - 1] * (1.0 - lambda);
    }

    double expectation = 0.0;
    std::vector<NodeId> stack;
    std::vector<char> seen(n);
    std::vector<std::vector<NodeId>> adj(n);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        for (auto& a : adj) a.clear();
        int open = 0;
        for (std::size_t e = 0; e < m; ++e) {
            if (mask & (1u << e)) {
                ++open;
                adj[edge_list[e].first].push_back(edge_list[e].second);
                adj[edge_list[e].second].push_back(edge_list[e].first);
            }
        }
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, seed_node);
        seen[seed_node] = 1;
        std::int64_t reach = 1;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = 1;
                    ++reach;
                    stack.push_back(v);
                }
            }
        }
        expectation += pow_open[open] * pow_closed[m - open] * static_cast<double>(reach);
    }
    return expectation;
}

std::vector<double> threshold_sweep(double base) {
    if (!(base > 0.0)) throw std::invalid_argument("sweep base rate must be positive");
    std::vector<double> rates = {base / 2.0, base / 1.5, base, 1.5 * base, 2.0 * base};
    for (double& r : rates) r = std::min(r, 1.0);
    return rates;
}

}  // namespace spreadrank
