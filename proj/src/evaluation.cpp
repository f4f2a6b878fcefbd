#include "spreadrank/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spreadrank/partition.hpp"

namespace spreadrank {

ReferenceSet build_reference_set(const SpreadScores& scores, const Graph& g) {
    if (static_cast<NodeId>(scores.mean_outbreak.size()) != g.node_count())
        throw std::invalid_argument("spread scores do not cover the graph");
    ReferenceSet ref;
    ref.power = scores.mean_outbreak;
    ref.order.resize(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) ref.order[u] = u;
    std::sort(ref.order.begin(), ref.order.end(), [&](NodeId a, NodeId b) {
        if (ref.power[a] != ref.power[b]) return ref.power[a] > ref.power[b];
        return label_less(g.label(a), g.label(b));
    });
    return ref;
}

std::int64_t top_count(double p, std::int64_t n) {
    const auto k = static_cast<std::int64_t>(std::ceil(p * static_cast<double>(n) - 1e-9));
    return std::clamp<std::int64_t>(k, 1, n);
}

double imprecision(const Ranking& ranking, const ReferenceSet& ref, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("fraction p must lie in (0,1]");
    const std::int64_t n = static_cast<std::int64_t>(ref.order.size());
    if (static_cast<std::int64_t>(ranking.order.size()) != n)
        throw std::invalid_argument("ranking and reference cover different node sets");
    const std::int64_t k = top_count(p, n);
    double measured = 0.0, best = 0.0;
    for (std::int64_t i = 0; i < k; ++i) {
        measured += ref.power[ranking.order[i]];
        best += ref.power[ref.order[i]];
    }
    // best > 0 since outbreaks always count the seed. When the two top sets
    // hold the same mass, different summation order can push the ratio a few
    // ulps past 1; the result is still a fraction of lost spreading power.
    return std::max(0.0, 1.0 - measured / best);
}

ImprecisionCurve curve(const Ranking& ranking, const ReferenceSet& ref,
                       const std::vector<double>& p_grid) {
    ImprecisionCurve c;
    c.p_grid = p_grid;
    c.epsilon.reserve(p_grid.size());
    for (double p : p_grid) c.epsilon.push_back(imprecision(ranking, ref, p));
    return c;
}

std::vector<double> default_p_grid() {
    std::vector<double> grid;
    for (int i = 2; i <= 20; i += 2) grid.push_back(static_cast<double>(i) / 100.0);
    return grid;
}

std::vector<double> sweep_p_values() { return {2.0 / 100.0, 10.0 / 100.0, 20.0 / 100.0}; }

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

AggregateCurve cross_network_average(const std::vector<ImprecisionCurve>& curves) {
    if (curves.empty()) throw std::invalid_argument("nothing to aggregate");
    AggregateCurve agg;
    agg.measure = curves.front().measure;
    agg.p_grid = curves.front().p_grid;
    for (const auto& c : curves) {
        if (c.measure != agg.measure)
            throw std::invalid_argument("aggregation mixes measures: " + agg.measure + " vs " +
                                     c.measure);
        if (c.p_grid != agg.p_grid)
            throw std::invalid_argument("aggregation requires identical p grids");
    }
    const std::size_t np = agg.p_grid.size();
    std::vector<double> sample(curves.size());
    for (std::size_t ip = 0; ip < np; ++ip) {
        for (std::size_t ic = 0; ic < curves.size(); ++ic) sample[ic] = curves[ic].epsilon[ip];
        std::sort(sample.begin(), sample.end());
        double sum = 0.0;
        for (double v : sample) sum += v;
        agg.mean.push_back(sum / static_cast<double>(sample.size()));
        agg.q1.push_back(quantile_sorted(sample, 0.25));
        agg.median.push_back(quantile_sorted(sample, 0.5));
        agg.q3.push_back(quantile_sorted(sample, 0.75));
        agg.min.push_back(sample.front());
        agg.max.push_back(sample.back());
    }
    return agg;
}

std::vector<RateSweepRow> rate_sweep_evaluation(
    const Graph& g, const Partition& partition, const std::vector<Measure>& measures,
    const MeasureParams& params, const std::vector<double>& lambdas,
    const std::vector<double>& p_values,
    const std::function<SpreadScores(double lambda)>& spread_provider) {
    const LinkSplit split = link_split(g, partition);
    std::vector<Ranking> rankings;  // lambda-independent, computed once
    rankings.reserve(measures.size());
    for (Measure m : measures)
        rankings.push_back(rank_nodes(compute_measure(g, partition, split, m, params), g));
    std::vector<RateSweepRow> rows;
    for (double lambda : lambdas) {
        const SpreadScores scores = spread_provider(lambda);
        const ReferenceSet ref = build_reference_set(scores, g);
        for (std::size_t i = 0; i < measures.size(); ++i)
            for (double p : p_values)
                rows.push_back(
                    {measure_id(measures[i]), lambda, p, imprecision(rankings[i], ref, p)});
    }
    return rows;
}

}  // namespace spreadrank
