#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spreadrank/centrality.hpp"
#include "spreadrank/evaluation.hpp"
#include "spreadrank/graph.hpp"
#include "spreadrank/partition.hpp"
#include "spreadrank/sir.hpp"

namespace spreadrank {

// Every CSV cell that holds a real number goes through this (%.12g): compact,
// stable, and identical across runs because all upstream values are.
std::string format_double(double x);

// Writes through a temp file in the same directory plus rename, so readers
// never observe a half-written file and failures leave no partial output.
void atomic_write(const std::string& path, const std::string& content);

struct StatsReport {
    GraphStats stats;
    LoadReport load;
    bool lcc_applied = false;
    bool has_partition = false;
    double mixing = 0.0;
    double modularity_value = 0.0;
    std::int32_t community_count = 0;
    std::string partition_provenance;  // "file" or "fallback"
};

std::string stats_json(const StatsReport& r);
// One data row: n,m,avg_degree,transitivity,lambda_th
std::string stats_csv(const GraphStats& s);

// node,score,rank with rows in original-label order; rank is the 1-based
// position in the descending-score ranking.
std::string centrality_csv(const Graph& g, const CentralityVector& v, const Ranking& r);

struct CentralityRow {
    std::string node;
    double score = 0.0;
    std::int64_t rank = 0;
};
// Rows come back in file order; callers sort by rank to recover the ranking.
std::vector<CentralityRow> read_centrality_csv(const std::string& path);

// node,mean_outbreak,std_error,lambda,runs in original-label order.
std::string spread_csv(const Graph& g, const SpreadScores& s);

struct LongRow {
    std::string network;
    std::string measure;
    double lambda = 0.0;
    double p = 0.0;
    double epsilon = 0.0;
};
std::string long_csv(const std::vector<LongRow>& rows);
std::vector<LongRow> read_long_csv(const std::string& path);

std::vector<LongRow> to_long_rows(const std::vector<ImprecisionCurve>& curves);

// measure,p,mean_eps,q1,median,q3,min,max
std::string aggregate_csv(const std::vector<AggregateCurve>& aggs);

// Cache of per-node spreading power, keyed by everything that determines it.
// Layout: "SRSC" magic, u32 version, u64 graph hash, f64 lambda, f64 gamma,
// i64 runs, u64 master seed, i64 n, then n pairs of f64 (mean, std error),
// native byte order.
std::string spread_cache_name(std::uint64_t graph_hash, const SirConfig& cfg);

// nullopt when the file does not exist; throws when it exists but its header
// disagrees with the requested key (corrupt or foreign file).
std::optional<SpreadScores> read_spread_cache(const std::string& path,
                                              std::uint64_t graph_hash, const SirConfig& cfg,
                                              std::int64_t n);
void write_spread_cache(const std::string& path, std::uint64_t graph_hash,
                        const SpreadScores& scores);

}  // namespace spreadrank
