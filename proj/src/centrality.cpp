#include "spreadrank/centrality.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spreadrank {

const char* measure_id(Measure m) {
    switch (m) {
        case Measure::CommunityHubBridge: return "chb";
        case Measure::ParticipationCoefficient: return "pc";
        case Measure::CommunityBasedMediator: return "cbm";
        case Measure::CommCentrality: return "comm";
        case Measure::ModularityVitality: return "mv";
        case Measure::CommunityBasedCentrality: return "cbc";
        case Measure::KShellCommunity: return "ksc";
    }
    return "?";
}

std::optional<Measure> measure_from_id(const std::string& id) {
    for (Measure m : all_measures())
        if (id == measure_id(m)) return m;
    return std::nullopt;
}

const std::vector<Measure>& all_measures() {
    static const std::vector<Measure> all = {
        Measure::CommunityHubBridge,   Measure::ParticipationCoefficient,
        Measure::CommunityBasedMediator, Measure::CommCentrality,
        Measure::ModularityVitality,   Measure::CommunityBasedCentrality,
        Measure::KShellCommunity,
    };
    return all;
}

CentralityVector community_hub_bridge(const Graph& g, const Partition& p, const LinkSplit& s) {
    CentralityVector v{Measure::CommunityHubBridge, std::vector<double>(g.node_count()), {}, {}};
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const std::int64_t own_size = p.size_of(p.assignment[u]);
        const std::int64_t a = own_size * s.k_intra[u] +
                               static_cast<std::int64_t>(s.nnc[u]) * s.k_inter[u];
        v.scores[u] = static_cast<double>(a);
    }
    return v;
}

CentralityVector participation_coefficient(const Graph& g, const LinkSplit& s) {
    CentralityVector v{Measure::ParticipationCoefficient, std::vector<double>(g.node_count()), {},
                       {}};
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const std::int64_t k = g.degree(u);
        if (k == 0) continue;
        std::int64_t sum_sq = 0;
        for (std::size_t e = s.entries_begin(u); e < s.entries_end(u); ++e)
            sum_sq += static_cast<std::int64_t>(s.count[e]) * s.count[e];
        v.scores[u] = 1.0 - static_cast<double>(sum_sq) / static_cast<double>(k * k);
    }
    return v;
}

CentralityVector community_based_mediator(const Graph& g, const LinkSplit& s) {
    CentralityVector v{Measure::CommunityBasedMediator, std::vector<double>(g.node_count()), {},
                       {}};
    const double total_endpoints = 2.0 * static_cast<double>(g.edge_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const double k = g.degree(u);
        if (k == 0.0) continue;
        const double rho_intra = s.k_intra[u] / k;
        const double rho_inter = s.k_inter[u] / k;
        double h = 0.0;
        if (rho_intra > 0.0) h -= rho_intra * std::log(rho_intra);
        if (rho_inter > 0.0) h -= rho_inter * std::log(rho_inter);
        v.scores[u] = h * (k / total_endpoints);
    }
    return v;
}

CentralityVector comm_centrality(const Graph& g, const Partition& p, const LinkSplit& s,
                                 double r) {
    const std::int32_t nc = p.community_count();
    std::vector<std::int32_t> max_intra(nc, 0), max_inter(nc, 0);
    std::vector<std::int64_t> inter_endpoints(nc, 0), total_endpoints(nc, 0);
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const std::int32_t c = p.assignment[u];
        max_intra[c] = std::max(max_intra[c], s.k_intra[u]);
        max_inter[c] = std::max(max_inter[c], s.k_inter[u]);
        inter_endpoints[c] += s.k_inter[u];
        total_endpoints[c] += g.degree(u);
    }
    CentralityVector v{Measure::CommCentrality, std::vector<double>(g.node_count()), {}, r};
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const std::int32_t c = p.assignment[u];
        const double mu = total_endpoints[c] > 0
                              ? static_cast<double>(inter_endpoints[c]) /
                                    static_cast<double>(total_endpoints[c])
                              : 0.0;
        const double chi =
            max_intra[c] > 0 ? (static_cast<double>(s.k_intra[u]) / max_intra[c]) * r : 0.0;
        const double phi =
            max_inter[c] > 0 ? (static_cast<double>(s.k_inter[u]) / max_inter[c]) * r : 0.0;
        v.scores[u] = (1.0 + mu) * chi + (1.0 - mu) * phi * phi;
    }
    return v;
}

namespace {

// Shared bookkeeping for both modularity-vitality implementations.
struct ModularityParts {
    std::int64_t m = 0;                    // edge count
    std::int64_t intra = 0;                // total intra-community edges
    std::vector<std::int64_t> e;           // per-community intra edges
    std::vector<std::int64_t> d;           // per-community degree sums
    std::int64_t sum_d2 = 0;

    double value() const {
        if (m == 0) return 0.0;
        const double md = static_cast<double>(m);
        return static_cast<double>(intra) / md -
               static_cast<double>(sum_d2) / (4.0 * md * md);
    }
};

ModularityParts modularity_parts(const Graph& g, const Partition& p) {
    ModularityParts parts;
    parts.m = g.edge_count();
    parts.e.assign(p.community_count(), 0);
    parts.d.assign(p.community_count(), 0);
    for (NodeId u = 0; u < g.node_count(); ++u) {
        parts.d[p.assignment[u]] += g.degree(u);
        for (NodeId v : g.neighbors(u))
            if (u < v && p.assignment[u] == p.assignment[v]) ++parts.e[p.assignment[u]];
    }
    for (std::int64_t e : parts.e) parts.intra += e;
    for (std::int64_t d : parts.d) parts.sum_d2 += d * d;
    return parts;
}

}  // namespace

CentralityVector modularity_vitality(const Graph& g, const Partition& p, int threads) {
    const NodeId n = g.node_count();
    const ModularityParts parts = modularity_parts(g, p);
    const LinkSplit s = link_split(g, p);
    const double m_before = parts.value();

    CentralityVector v{Measure::ModularityVitality, std::vector<double>(n),
                       std::vector<double>(n), {}};
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    // Deleting node u only touches its own community's intra edges, and the
    // degree sums of the communities it links into. All deltas are integers.
#pragma omp parallel for schedule(static)
    for (NodeId u = 0; u < n; ++u) {
        const std::int32_t own = p.assignment[u];
        const std::int64_t deg = g.degree(u);
        const std::int64_t m_after = parts.m - deg;
        double m_removed = 0.0;
        if (m_after > 0) {
            const std::int64_t intra_after = parts.intra - s.k_intra[u];
            std::int64_t sum_d2_after = parts.sum_d2;
            bool own_touched = false;
            for (std::size_t e = s.entries_begin(u); e < s.entries_end(u); ++e) {
                const std::int32_t c = s.comm[e];
                std::int64_t dc_after = parts.d[c] - s.count[e];
                if (c == own) {
                    dc_after -= deg;
                    own_touched = true;
                }
                sum_d2_after += dc_after * dc_after - parts.d[c] * parts.d[c];
            }
            if (!own_touched) {
                // u has no neighbor in its own community; its degree still
                // leaves the community's sum.
                const std::int64_t dc_after = parts.d[own] - deg;
                sum_d2_after += dc_after * dc_after - parts.d[own] * parts.d[own];
            }
            const double md = static_cast<double>(m_after);
            m_removed = static_cast<double>(intra_after) / md -
                        static_cast<double>(sum_d2_after) / (4.0 * md * md);
        }
        v.raw[u] = m_before - m_removed;
        v.scores[u] = std::fabs(v.raw[u]);
    }
    return v;
}

CentralityVector modularity_vitality_serial(const Graph& g, const Partition& p) {
    const NodeId n = g.node_count();
    CentralityVector v{Measure::ModularityVitality, std::vector<double>(n),
                       std::vector<double>(n), {}};
    const ModularityParts before = modularity_parts(g, p);
    const double m_before = before.value();
    for (NodeId u = 0; u < n; ++u) {
        // Recompute every community tally from scratch on the node-deleted
        // graph; quadratic overall, kept as the cross-check oracle.
        ModularityParts after;
        after.e.assign(p.community_count(), 0);
        after.d.assign(p.community_count(), 0);
        for (NodeId a = 0; a < n; ++a) {
            if (a == u) continue;
            for (NodeId b : g.neighbors(a)) {
                if (b == u) continue;
                ++after.d[p.assignment[a]];
                if (a < b) {
                    ++after.m;
                    if (p.assignment[a] == p.assignment[b]) ++after.e[p.assignment[a]];
                }
            }
        }
        for (std::int64_t e : after.e) after.intra += e;
        for (std::int64_t d : after.d) after.sum_d2 += d * d;
        v.raw[u] = m_before - after.value();
        v.scores[u] = std::fabs(v.raw[u]);
    }
    return v;
}

CentralityVector community_based_centrality(const Graph& g, const Partition& p,
                                            const LinkSplit& s) {
    CentralityVector v{Measure::CommunityBasedCentrality, std::vector<double>(g.node_count()), {},
                       {}};
    const double n_total = static_cast<double>(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        std::int64_t weighted = 0;
        for (std::size_t e = s.entries_begin(u); e < s.entries_end(u); ++e)
            weighted += static_cast<std::int64_t>(s.count[e]) * p.size_of(s.comm[e]);
        v.scores[u] = static_cast<double>(weighted) / n_total;
    }
    return v;
}

CentralityVector kshell_with_community(const Graph& g, const Partition& p, double delta) {
    const NodeId n = g.node_count();
    // Split the adjacency into intra- and inter-community halves over the
    // full node set, then peel each independently.
    std::vector<std::int64_t> off_intra(n + 1, 0), off_inter(n + 1, 0);
    std::vector<NodeId> adj_intra, adj_inter;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : g.neighbors(u)) {
            if (p.assignment[u] == p.assignment[v]) adj_intra.push_back(v);
            else adj_inter.push_back(v);
        }
        off_intra[u + 1] = static_cast<std::int64_t>(adj_intra.size());
        off_inter[u + 1] = static_cast<std::int64_t>(adj_inter.size());
    }
    const std::vector<int> shell_intra = k_shell_of_adjacency(off_intra, adj_intra);
    const std::vector<int> shell_inter = k_shell_of_adjacency(off_inter, adj_inter);
    CentralityVector v{Measure::KShellCommunity, std::vector<double>(n), {}, delta};
    for (NodeId u = 0; u < n; ++u)
        v.scores[u] = delta * shell_intra[u] + (1.0 - delta) * shell_inter[u];
    return v;
}

CentralityVector compute_measure(const Graph& g, const Partition& p, const LinkSplit& s,
                                 Measure m, const MeasureParams& params) {
    switch (m) {
        case Measure::CommunityHubBridge: return community_hub_bridge(g, p, s);
        case Measure::ParticipationCoefficient: return participation_coefficient(g, s);
        case Measure::CommunityBasedMediator: return community_based_mediator(g, s);
        case Measure::CommCentrality: return comm_centrality(g, p, s, params.comm_r);
        case Measure::ModularityVitality: return modularity_vitality(g, p, params.threads);
        case Measure::CommunityBasedCentrality: return community_based_centrality(g, p, s);
        case Measure::KShellCommunity: return kshell_with_community(g, p, params.delta);
    }
    throw std::logic_error("unknown measure");
}

Ranking rank_nodes(const CentralityVector& v, const Graph& g) {
    for (double x : v.scores)
        if (std::isnan(x)) throw std::runtime_error("ranking rejects NaN scores");
    Ranking r;
    r.order.resize(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) r.order[u] = u;
    std::sort(r.order.begin(), r.order.end(), [&](NodeId a, NodeId b) {
        if (v.scores[a] != v.scores[b]) return v.scores[a] > v.scores[b];
        return label_less(g.label(a), g.label(b));
    });
    return r;
}

}  // namespace spreadrank
