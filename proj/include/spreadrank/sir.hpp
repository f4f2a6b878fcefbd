#pragma once

#include <cstdint>
#include <vector>

#include "spreadrank/graph.hpp"

namespace spreadrank {

// Discrete-time SIR with certain recovery: a node infects each susceptible
// neighbor once, with probability lambda, in the round after it was infected,
// then recovers. Final recovered count (seed included) is the outbreak size.
struct SirConfig {
    double lambda = 0.0;
    double gamma = 1.0;  // only certain recovery is supported
    std::int64_t runs = 1;
    std::uint64_t master_seed = 0;

    void validate() const;  // throws on lambda outside [0,1], gamma != 1, runs < 1
};

// Run-count policy: exhaustive sampling is affordable below a few thousand
// nodes, above that a tenth of the repetitions still gives stable means.
inline std::int64_t default_run_count(std::int64_t n) { return n < 6000 ? 1000 : 100; }

struct OutbreakSummary {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t min = 0;
    std::int64_t max = 0;
    std::int64_t runs = 0;
};

// cfg.runs repetitions seeded from stream_key(master_seed, seed_node, run).
// Throws on an invalid seed node.
OutbreakSummary simulate_single_seed(const Graph& g, NodeId seed_node, const SirConfig& cfg);

struct SpreadScores {
    std::vector<double> mean_outbreak;
    std::vector<double> std_error;
    SirConfig config;
};

// Spreading power of every node. Outbreak sizes accumulate as integer sums of
// squares per node, so the result is bit-identical for any thread count.
SpreadScores spreading_power_all(const Graph& g, const SirConfig& cfg, int threads = 0);
SpreadScores spreading_power_all_serial(const Graph& g, const SirConfig& cfg);

// Exact expected outbreak by enumerating all 2^|E| edge activations; the
// certain-recovery dynamics make outbreak size equal the seed's component
// size when each edge transmits independently. Refuses |E| > 20.
double exact_expected_outbreak(const Graph& g, NodeId seed_node, double lambda);

// {base/2, base/1.5, base, 1.5*base, 2*base}, each clamped to at most 1.
std::vector<double> threshold_sweep(double base);

}  // namespace spreadrank
