// Wall-clock comparison of the OpenMP kernels against their serial reference
// implementations on a generated random graph. The parallel results must be
// bit-identical to the serial ones; the table says so explicitly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "spreadrank/centrality.hpp"
#include "spreadrank/graph.hpp"
#include "spreadrank/partition.hpp"
#include "spreadrank/rng.hpp"
#include "spreadrank/sir.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace spreadrank;

namespace {

template <typename F>
double best_ms(int repeat, F&& fn) {
    double best = 1e300;
    for (int i = 0; i < repeat; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (ms < best) best = ms;
    }
    return best;
}

void row(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-24s %12.1f %12.1f %9.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "identical" : "MISMATCH");
}

Graph random_graph(int n, double avg_degree, std::uint64_t seed) {
    const double prob = avg_degree / static_cast<double>(n - 1);
    Xoshiro256pp rng(seed);
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform01() < prob) edges.emplace_back(std::to_string(i), std::to_string(j));
    std::vector<std::string> all_nodes;
    for (int i = 0; i < n; ++i) all_nodes.push_back(std::to_string(i));
    return Graph::from_edges(edges, nullptr, all_nodes);
}

Partition block_partition(const Graph& g, int communities) {
    Partition p;
    p.assignment.resize(static_cast<std::size_t>(g.node_count()));
    p.communities.resize(static_cast<std::size_t>(communities));
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const std::int32_t c = u % communities;
        p.assignment[static_cast<std::size_t>(u)] = c;
        p.communities[static_cast<std::size_t>(c)].push_back(u);
    }
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel kernel timings"};
    int nodes = 2000;
    double avg_degree = 10.0;
    int communities = 8;
    std::int64_t sir_runs = 50;
    std::uint64_t seed = 1;
    int repeat = 3;
    app.add_option("--nodes", nodes)->capture_default_str();
    app.add_option("--avg-degree", avg_degree)->capture_default_str();
    app.add_option("--communities", communities)->capture_default_str();
    app.add_option("--sir-runs", sir_runs)->capture_default_str();
    app.add_option("--seed", seed)->capture_default_str();
    app.add_option("--repeat", repeat)->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    const Graph g = random_graph(nodes, avg_degree, seed);
    const Partition p = block_partition(g, communities);
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("graph: n=%d m=%lld, %d communities, %d threads, best of %d\n",
                static_cast<int>(g.node_count()), static_cast<long long>(g.edge_count()),
                communities, threads, repeat);
    std::printf("%-24s %12s %12s %10s\n", "kernel", "serial ms", "parallel ms", "speedup");

    {
        std::int64_t a = 0, b = 0;
        const double s = best_ms(repeat, [&] { a = count_triangles_serial(g); });
        const double q = best_ms(repeat, [&] { b = count_triangles(g); });
        row("triangle count", s, q, a == b);
    }
    {
        CentralityVector a, b;
        const double s = best_ms(repeat, [&] { a = modularity_vitality_serial(g, p); });
        const double q = best_ms(repeat, [&] { b = modularity_vitality(g, p); });
        // The reference recomputes from scratch, so agreement is approximate;
        // cross-thread bit equality is covered separately below.
        bool close = a.raw.size() == b.raw.size();
        for (std::size_t i = 0; close && i < a.raw.size(); ++i)
            close = std::abs(a.raw[i] - b.raw[i]) <= 1e-9;
        row("modularity vitality", s, q, close);

        const CentralityVector one = modularity_vitality(g, p, 1);
        std::printf("%-24s %36s   %s\n", "  1-thread vs all", "",
                    one.raw == b.raw ? "identical" : "MISMATCH");
    }
    {
        SirConfig cfg;
        cfg.lambda = 0.1;
        cfg.runs = sir_runs;
        cfg.master_seed = seed;
        SpreadScores a, b;
        const double s = best_ms(repeat, [&] { a = spreading_power_all_serial(g, cfg); });
        const double q = best_ms(repeat, [&] { b = spreading_power_all(g, cfg); });
        row("spreading power", s, q,
            a.mean_outbreak == b.mean_outbreak && a.std_error == b.std_error);
    }
    return 0;
}
