#include "testutil.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "spreadrank/rng.hpp"

namespace testutil {

using spreadrank::Xoshiro256pp;

Graph graph_of(const std::vector<std::pair<std::string, std::string>>& edges,
               const std::vector<std::string>& isolated) {
    return Graph::from_edges(edges, nullptr, isolated);
}

Partition partition_of(const Graph& g, const std::vector<std::vector<std::string>>& groups) {
    Partition p;
    p.assignment.assign(g.node_count(), -1);
    p.communities.resize(groups.size());
    for (std::size_t c = 0; c < groups.size(); ++c) {
        for (const auto& label : groups[c]) {
            const auto id = g.index_of(label);
            if (!id) throw std::runtime_error("fixture names unknown node " + label);
            p.assignment[*id] = static_cast<std::int32_t>(c);
        }
    }
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (p.assignment[u] < 0)
            throw std::runtime_error("fixture leaves node " + g.label(u) + " unassigned");
        p.communities[p.assignment[u]].push_back(u);
    }
    for (const auto& members : p.communities)
        if (members.empty()) throw std::runtime_error("fixture has an empty community");
    return p;
}

Graph random_graph(int n, double prob, std::uint64_t seed) {
    Xoshiro256pp rng(seed);
    auto name = [](int i) { return "v" + std::to_string(i); };
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform01() < prob) edges.emplace_back(name(i), name(j));
    if (edges.empty() && n >= 2) {
        const int a = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
        const int b = (a + 1 + static_cast<int>(rng.uniform_below(
                                   static_cast<std::uint64_t>(n - 1)))) % n;
        edges.emplace_back(name(std::min(a, b)), name(std::max(a, b)));
    }
    std::vector<std::string> all;
    for (int i = 0; i < n; ++i) all.push_back(name(i));
    return Graph::from_edges(edges, nullptr, all);
}

Partition random_partition(const Graph& g, int k, std::uint64_t seed) {
    const NodeId n = g.node_count();
    if (k > n) throw std::runtime_error("more communities than nodes");
    Xoshiro256pp rng(seed ^ 0xC0FFEE);
    Partition p;
    p.assignment.resize(n);
    p.communities.resize(k);
    for (NodeId u = 0; u < n; ++u) {
        // Pinning the first k nodes to distinct communities keeps them all
        // nonempty without a repair pass.
        const std::int32_t c = u < k ? u
                                     : static_cast<std::int32_t>(
                                           rng.uniform_below(static_cast<std::uint64_t>(k)));
        p.assignment[u] = c;
        p.communities[c].push_back(u);
    }
    return p;
}

Relabeled relabel(const Graph& g, std::uint64_t seed) {
    const NodeId n = g.node_count();
    Xoshiro256pp rng(seed ^ 0x5EED);
    std::vector<int> number(n);
    std::iota(number.begin(), number.end(), 0);
    spreadrank::fisher_yates(number, rng);
    auto new_label = [&](NodeId u) { return "x" + std::to_string(number[u]); };

    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [u, v] : g.edges()) edges.emplace_back(new_label(u), new_label(v));
    spreadrank::fisher_yates(edges, rng);  // also scramble dense-id assignment order
    std::vector<std::string> all;
    for (NodeId u = 0; u < n; ++u) all.push_back(new_label(u));

    Relabeled r;
    r.graph = Graph::from_edges(edges, nullptr, all);
    r.new_index_of.resize(n);
    for (NodeId u = 0; u < n; ++u) r.new_index_of[u] = *r.graph.index_of(new_label(u));
    return r;
}

Partition map_partition(const Partition& p, const Relabeled& r) {
    Partition q;
    const auto n = static_cast<NodeId>(p.assignment.size());
    q.assignment.assign(n, -1);
    q.communities.resize(p.communities.size());
    for (NodeId u = 0; u < n; ++u) q.assignment[r.new_index_of[u]] = p.assignment[u];
    for (NodeId v = 0; v < n; ++v) q.communities[q.assignment[v]].push_back(v);
    q.provenance = p.provenance;
    return q;
}

std::vector<Graph> connected_graph_catalog(int max_n) {
    std::vector<Graph> out;
    for (int n = 1; n <= max_n; ++n) {
        const int slots = n * (n - 1) / 2;
        std::vector<std::pair<int, int>> pair_of(slots);
        {
            int idx = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) pair_of[idx++] = {i, j};
        }
        auto slot_of = [&](int i, int j) {
            if (i > j) std::swap(i, j);
            // index of (i,j) in the lexicographic i<j enumeration
            return i * (2 * n - i - 1) / 2 + (j - i - 1);
        };
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::set<std::uint32_t> canon_seen;
        for (std::uint32_t mask = 0; mask < (1u << slots); ++mask) {
            // Connectivity check first (cheap), then canonicalization.
            std::vector<int> comp(n, -1);
            std::vector<int> stack = {0};
            comp[0] = 0;
            int seen = 1;
            while (!stack.empty()) {
                const int u = stack.back();
                stack.pop_back();
                for (int v = 0; v < n; ++v) {
                    if (v == u || comp[v] == 0) continue;
                    const int s = slot_of(u, v);
                    if ((mask >> s) & 1u) {
                        comp[v] = 0;
                        ++seen;
                        stack.push_back(v);
                    }
                }
            }
            if (seen != n) continue;
            std::uint32_t canon = mask;
            std::sort(perm.begin(), perm.end());
            do {
                std::uint32_t remapped = 0;
                for (int s = 0; s < slots; ++s)
                    if ((mask >> s) & 1u)
                        remapped |= 1u << slot_of(perm[pair_of[s].first], perm[pair_of[s].second]);
                canon = std::min(canon, remapped);
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (!canon_seen.insert(canon).second) continue;

            std::vector<std::pair<std::string, std::string>> edges;
            for (int s = 0; s < slots; ++s)
                if ((mask >> s) & 1u)
                    edges.emplace_back(std::to_string(pair_of[s].first),
                                       std::to_string(pair_of[s].second));
            std::vector<std::string> all;
            for (int i = 0; i < n; ++i) all.push_back(std::to_string(i));
            out.push_back(Graph::from_edges(edges, nullptr, all));
        }
    }
    return out;
}

namespace {

// k_{i,c} by direct neighbor scan.
std::vector<std::int64_t> links_into(const Graph& g, const Partition& p, NodeId u) {
    std::vector<std::int64_t> k(p.communities.size(), 0);
    for (NodeId v : g.neighbors(u)) ++k[p.assignment[v]];
    return k;
}

}  // namespace

std::vector<double> naive_chb(const Graph& g, const Partition& p) {
    std::vector<double> out(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const auto k = links_into(g, p, u);
        const std::int32_t own = p.assignment[u];
        double inter = 0.0, nnc = 0.0;
        for (std::size_t c = 0; c < k.size(); ++c) {
            if (static_cast<std::int32_t>(c) == own) continue;
            inter += static_cast<double>(k[c]);
            if (k[c] > 0) nnc += 1.0;
        }
        out[u] = static_cast<double>(p.communities[own].size()) * static_cast<double>(k[own]) +
                 nnc * inter;
    }
    return out;
}

std::vector<double> naive_pc(const Graph& g, const Partition& p) {
    std::vector<double> out(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const double deg = g.degree(u);
        if (deg == 0.0) continue;
        double sum = 0.0;
        for (const std::int64_t kc : links_into(g, p, u)) {
            const double frac = static_cast<double>(kc) / deg;
            sum += frac * frac;
        }
        out[u] = 1.0 - sum;
    }
    return out;
}

std::vector<double> naive_cbm(const Graph& g, const Partition& p) {
    std::vector<double> out(g.node_count());
    double total_degree = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) total_degree += g.degree(u);
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const double deg = g.degree(u);
        if (deg == 0.0) continue;
        double intra = 0.0;
        for (NodeId v : g.neighbors(u))
            if (p.assignment[v] == p.assignment[u]) intra += 1.0;
        const double rho_intra = intra / deg;
        const double rho_inter = (deg - intra) / deg;
        double h = 0.0;
        if (rho_intra > 0.0) h -= rho_intra * std::log(rho_intra);
        if (rho_inter > 0.0) h -= rho_inter * std::log(rho_inter);
        out[u] = h * deg / total_degree;
    }
    return out;
}

std::vector<double> naive_comm(const Graph& g, const Partition& p, double r) {
    std::vector<double> out(g.node_count());
    for (std::size_t c = 0; c < p.communities.size(); ++c) {
        double max_intra = 0.0, max_inter = 0.0, inter_sum = 0.0, deg_sum = 0.0;
        for (NodeId u : p.communities[c]) {
            const auto k = links_into(g, p, u);
            const double intra = static_cast<double>(k[c]);
            const double inter = static_cast<double>(g.degree(u)) - intra;
            max_intra = std::max(max_intra, intra);
            max_inter = std::max(max_inter, inter);
            inter_sum += inter;
            deg_sum += static_cast<double>(g.degree(u));
        }
        const double mu = deg_sum > 0.0 ? inter_sum / deg_sum : 0.0;
        for (NodeId u : p.communities[c]) {
            const auto k = links_into(g, p, u);
            const double intra = static_cast<double>(k[c]);
            const double inter = static_cast<double>(g.degree(u)) - intra;
            const double chi = max_intra > 0.0 ? intra / max_intra * r : 0.0;
            const double phi = max_inter > 0.0 ? inter / max_inter * r : 0.0;
            out[u] = (1.0 + mu) * chi + (1.0 - mu) * phi * phi;
        }
    }
    return out;
}

std::vector<double> naive_cbc(const Graph& g, const Partition& p) {
    std::vector<double> out(g.node_count());
    const double n = g.node_count();
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const auto k = links_into(g, p, u);
        double sum = 0.0;
        for (std::size_t c = 0; c < k.size(); ++c)
            sum += static_cast<double>(k[c]) *
                   (static_cast<double>(p.communities[c].size()) / n);
        out[u] = sum;
    }
    return out;
}

std::vector<int> naive_kshell(const std::vector<std::vector<NodeId>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> deg(n), shell(n, 0);
    std::vector<char> alive(n, 1);
    for (int u = 0; u < n; ++u) deg[u] = static_cast<int>(adj[u].size());
    int remaining = n;
    int k = 0;
    while (remaining > 0) {
        bool removed = false;
        for (int u = 0; u < n; ++u) {
            if (!alive[u] || deg[u] > k) continue;
            alive[u] = 0;
            shell[u] = k;
            --remaining;
            for (NodeId v : adj[u])
                if (alive[v]) --deg[v];
            removed = true;
            u = -1;  // rescan: removals can cascade below the threshold
        }
        if (!removed) ++k;
    }
    return shell;
}

std::vector<int> naive_kshell(const Graph& g) {
    std::vector<std::vector<NodeId>> adj(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.neighbors(u)) adj[u].push_back(v);
    return naive_kshell(adj);
}

std::vector<double> naive_ksc(const Graph& g, const Partition& p, double delta) {
    std::vector<std::vector<NodeId>> intra(g.node_count()), inter(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v : g.neighbors(u)) {
            if (p.assignment[u] == p.assignment[v]) intra[u].push_back(v);
            else inter[u].push_back(v);
        }
    }
    const auto s_intra = naive_kshell(intra);
    const auto s_inter = naive_kshell(inter);
    std::vector<double> out(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u)
        out[u] = delta * s_intra[u] + (1.0 - delta) * s_inter[u];
    return out;
}

double naive_modularity_sum(const Graph& g, const Partition& p) {
    const double m = static_cast<double>(g.edge_count());
    double total = 0.0;
    for (std::size_t c = 0; c < p.communities.size(); ++c) {
        double e_c = 0.0, d_c = 0.0;
        for (NodeId u : p.communities[c]) {
            d_c += g.degree(u);
            for (NodeId v : g.neighbors(u))
                if (u < v && p.assignment[v] == static_cast<std::int32_t>(c)) e_c += 1.0;
        }
        total += e_c / m - (d_c / (2.0 * m)) * (d_c / (2.0 * m));
    }
    return total;
}

double naive_modularity_double_loop(const Graph& g, const Partition& p) {
    const double two_m = 2.0 * static_cast<double>(g.edge_count());
    double total = 0.0;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        for (NodeId j = 0; j < g.node_count(); ++j) {
            if (p.assignment[i] != p.assignment[j]) continue;
            const double a_ij = g.has_edge(i, j) && i != j ? 1.0 : 0.0;
            total += a_ij - static_cast<double>(g.degree(i)) *
                                static_cast<double>(g.degree(j)) / two_m;
        }
    }
    return total / two_m;
}

namespace {

// The graph with drop_node removed, with its partition restricted; empty
// communities vanish.
std::pair<Graph, Partition> delete_node(const Graph& g, const Partition& p, NodeId drop) {
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::string> labels;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (u == drop) continue;
        labels.push_back(g.label(u));
        for (NodeId v : g.neighbors(u))
            if (u < v && v != drop) edges.emplace_back(g.label(u), g.label(v));
    }
    Graph h = Graph::from_edges(edges, nullptr, labels);
    std::vector<std::vector<std::string>> groups(p.communities.size());
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (u != drop) groups[p.assignment[u]].push_back(g.label(u));
    groups.erase(std::remove_if(groups.begin(), groups.end(),
                                [](const auto& v) { return v.empty(); }),
                 groups.end());
    return {std::move(h), partition_of(h, groups)};
}

}  // namespace

std::vector<double> naive_mv_signed(const Graph& g, const Partition& p) {
    const double before = naive_modularity_sum(g, p);
    std::vector<double> out(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto [h, q] = delete_node(g, p, u);
        const double after = h.edge_count() > 0 ? naive_modularity_sum(h, q) : 0.0;
        out[u] = before - after;
    }
    return out;
}

std::vector<double> naive_mv_signed_double_loop(const Graph& g, const Partition& p) {
    const double before = naive_modularity_double_loop(g, p);
    std::vector<double> out(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto [h, q] = delete_node(g, p, u);
        const double after = h.edge_count() > 0 ? naive_modularity_double_loop(h, q) : 0.0;
        out[u] = before - after;
    }
    return out;
}

}  // namespace testutil
