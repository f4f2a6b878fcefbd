#include "spreadrank/partition.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "parse_util.hpp"
#include "spreadrank/rng.hpp"

namespace spreadrank {

namespace {

// Appends up to `cap` offending labels to an error message.
std::string list_offenders(const std::vector<std::string>& labels, std::size_t cap = 10) {
    std::string out;
    for (std::size_t i = 0; i < labels.size() && i < cap; ++i) {
        if (i) out += ", ";
        out += labels[i];
    }
    if (labels.size() > cap) out += ", ... (" + std::to_string(labels.size()) + " total)";
    return out;
}

Partition from_labels(const Graph& g, const std::vector<std::int32_t>& raw,
                      Partition::Provenance prov) {
    // Re-index densely in node order so the result is independent of how the
    // raw community labels were numbered.
    Partition p;
    p.provenance = prov;
    p.assignment.assign(raw.size(), -1);
    std::unordered_map<std::int32_t, std::int32_t> dense;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto [it, inserted] = dense.emplace(raw[u], static_cast<std::int32_t>(dense.size()));
        p.assignment[u] = it->second;
        if (inserted) p.communities.emplace_back();
        p.communities[it->second].push_back(u);
    }
    return p;
}

}  // namespace

Partition load_partition(std::istream& in, const Graph& g) {
    std::unordered_map<std::string, std::string> file_map;  // node label -> community label
    std::vector<std::string> duplicates, unknown;
    std::string line;
    std::vector<std::string> tokens;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto kind = detail::split_line(line, "#%", true, tokens);
        if (kind != detail::LineKind::Data) continue;
        if (tokens.size() != 2) {
            throw std::runtime_error("partition line " + std::to_string(lineno) +
                                     ": expected two tokens, got \"" + line + "\"");
        }
        if (!g.index_of(tokens[0])) {
            unknown.push_back(tokens[0]);
            continue;
        }
        if (!file_map.emplace(tokens[0], tokens[1]).second) duplicates.push_back(tokens[0]);
    }
    if (!duplicates.empty())
        throw std::runtime_error("partition assigns nodes more than once: " +
                                 list_offenders(duplicates));
    if (!unknown.empty())
        throw std::runtime_error("partition names nodes absent from the graph: " +
                                 list_offenders(unknown));

    std::vector<std::string> missing;
    std::vector<std::int32_t> raw(g.node_count());
    std::unordered_map<std::string, std::int32_t> comm_ids;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto it = file_map.find(g.label(u));
        if (it == file_map.end()) {
            missing.push_back(g.label(u));
            continue;
        }
        auto [cit, _] = comm_ids.emplace(it->second, static_cast<std::int32_t>(comm_ids.size()));
        raw[u] = cit->second;
    }
    if (!missing.empty())
        throw std::runtime_error("partition leaves unassigned node(s): " +
                                 list_offenders(missing));
    return from_labels(g, raw, Partition::Provenance::File);
}

Partition load_partition_file(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open partition: " + path);
    return load_partition(in, g);
}

Partition detect_fallback(const Graph& g, std::uint64_t seed) {
    const NodeId n = g.node_count();
    std::vector<std::int32_t> label(n), next(n), prev(n);
    std::iota(label.begin(), label.end(), 0);

    // Most frequent neighbor label, ties to the lowest. Neighbor lists are
    // sorted by node id but not by label, so count into a small map.
    std::unordered_map<std::int32_t, std::int32_t> freq;
    auto best_label = [&](NodeId u, const std::vector<std::int32_t>& lab) {
        if (g.degree(u) == 0) return lab[u];
        freq.clear();
        for (NodeId v : g.neighbors(u)) ++freq[lab[v]];
        std::int32_t best = -1, best_count = 0;
        for (const auto& [l, c] : freq) {
            if (c > best_count || (c == best_count && l < best)) {
                best = l;
                best_count = c;
            }
        }
        return best;
    };

    Xoshiro256pp rng(mix64(seed ^ g.content_hash()));
    constexpr int kMaxRounds = 100;
    prev.assign(n, -1);
    for (int round = 0; round < kMaxRounds; ++round) {
        for (NodeId u = 0; u < n; ++u) next[u] = best_label(u, label);
        if (next == label) break;
        if (next == prev) {
            // Two-state oscillation (common on bipartite-ish cores under
            // synchronous updates): one asynchronous sweep in shuffled order
            // perturbs the cycle, then synchronous rounds resume.
            std::vector<NodeId> order(n);
            std::iota(order.begin(), order.end(), 0);
            fisher_yates(order, rng);
            for (NodeId u : order) next[u] = best_label(u, next);
        }
        prev = label;
        label = next;
    }
    return from_labels(g, label, Partition::Provenance::Fallback);
}

LinkSplit link_split(const Graph& g, const Partition& p) {
    const NodeId n = g.node_count();
    const std::int32_t nc = p.community_count();
    LinkSplit s;
    s.k_intra.assign(n, 0);
    s.k_inter.assign(n, 0);
    s.nnc.assign(n, 0);
    s.offsets.assign(n + 1, 0);

    // Scratch indexed by community with an epoch stamp, so per-node gathering
    // is O(degree) without clearing between nodes.
    std::vector<std::int32_t> stamp(nc, -1), acc(nc, 0);
    std::vector<std::int32_t> touched;
    for (NodeId u = 0; u < n; ++u) {
        touched.clear();
        for (NodeId v : g.neighbors(u)) {
            const std::int32_t c = p.assignment[v];
            if (stamp[c] != u) {
                stamp[c] = u;
                acc[c] = 0;
                touched.push_back(c);
            }
            ++acc[c];
        }
        std::sort(touched.begin(), touched.end());
        const std::int32_t own = p.assignment[u];
        for (std::int32_t c : touched) {
            if (c == own) s.k_intra[u] = acc[c];
            else ++s.nnc[u];
            s.comm.push_back(c);
            s.count.push_back(acc[c]);
        }
        s.k_inter[u] = g.degree(u) - s.k_intra[u];
        s.offsets[u + 1] = static_cast<std::int64_t>(s.comm.size());
    }
    return s;
}

double mixing_parameter(const LinkSplit& split, const Graph& g) {
    std::int64_t intra_endpoints = 0;
    for (std::int32_t k : split.k_intra) intra_endpoints += k;
    const std::int64_t inter_edges = g.edge_count() - intra_endpoints / 2;
    return static_cast<double>(inter_edges) / static_cast<double>(g.edge_count());
}

double modularity(const Graph& g, const Partition& p) {
    const std::int64_t m = g.edge_count();
    std::vector<std::int64_t> degree_sum(p.community_count(), 0);
    std::int64_t intra_edges = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        degree_sum[p.assignment[u]] += g.degree(u);
        for (NodeId v : g.neighbors(u))
            if (u < v && p.assignment[u] == p.assignment[v]) ++intra_edges;
    }
    std::int64_t sum_d2 = 0;
    for (std::int64_t d : degree_sum) sum_d2 += d * d;
    const double md = static_cast<double>(m);
    return static_cast<double>(intra_edges) / md -
           static_cast<double>(sum_d2) / (4.0 * md * md);
}

}  // namespace spreadrank
