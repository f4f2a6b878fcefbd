#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spreadrank/centrality.hpp"
#include "spreadrank/graph.hpp"
#include "spreadrank/sir.hpp"

namespace spreadrank {

// Ground truth for ranking quality: nodes ordered by decreasing simulated
// spreading power, ties by ascending original label.
struct ReferenceSet {
    std::vector<NodeId> order;
    std::vector<double> power;  // per node, indexed by NodeId
};

ReferenceSet build_reference_set(const SpreadScores& scores, const Graph& g);

// Number of nodes in the top fraction p: ceil(p*N) with a tiny backlash so
// that fractions like 0.1 of 500 do not round up through float error; always
// at least 1 and at most N.
std::int64_t top_count(double p, std::int64_t n);

// 1 - (mean power of the ranking's top ceil(p*N) nodes) / (mean power of the
// true top ceil(p*N) nodes). 0 means the ranking finds the best spreaders.
double imprecision(const Ranking& ranking, const ReferenceSet& ref, double p);

struct ImprecisionCurve {
    std::string network;
    std::string measure;
    double lambda = 0.0;
    std::vector<double> p_grid;
    std::vector<double> epsilon;
};

ImprecisionCurve curve(const Ranking& ranking, const ReferenceSet& ref,
                       const std::vector<double>& p_grid);

// {0.02, 0.04, ..., 0.20}; values built by integer division so they compare
// equal to the same fractions parsed back from text.
std::vector<double> default_p_grid();

// Per-p mean and box-plot statistics over one measure's curves from several
// networks. All curves must share the p grid exactly.
struct AggregateCurve {
    std::string measure;
    std::vector<double> p_grid;
    std::vector<double> mean, q1, median, q3, min, max;
};

AggregateCurve cross_network_average(const std::vector<ImprecisionCurve>& curves);

// Linear-interpolation quantile of a sorted sample (the convention most
// plotting stacks use for box plots).
double quantile_sorted(const std::vector<double>& sorted, double q);

struct RateSweepRow {
    std::string measure;
    double lambda = 0.0;
    double p = 0.0;
    double epsilon = 0.0;
};

// Full factorial (measure x lambda x p); the reference set is rebuilt per
// lambda via the provider, which lets callers insert caching.
std::vector<RateSweepRow> rate_sweep_evaluation(
    const Graph& g, const Partition& partition, const std::vector<Measure>& measures,
    const MeasureParams& params, const std::vector<double>& lambdas,
    const std::vector<double>& p_values,
    const std::function<SpreadScores(double lambda)>& spread_provider);

// {0.02, 0.10, 0.20}: the fractions reported for rate-sweep tables.
std::vector<double> sweep_p_values();

}  // namespace spreadrank
