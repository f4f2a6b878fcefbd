#include "spreadrank/graph.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "parse_util.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spreadrank {

namespace {

bool parse_integral(const std::string& s, long long& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& h, const std::string& s, unsigned char sep) {
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
    h ^= sep;
    h *= kFnvPrime;
}

}  // namespace

bool label_less(const std::string& a, const std::string& b) {
    long long na = 0, nb = 0;
    const bool ia = parse_integral(a, na);
    const bool ib = parse_integral(b, nb);
    if (ia != ib) return ia;  // numeric labels sort before non-numeric ones
    if (ia && na != nb) return na < nb;
    return a < b;
}

Graph Graph::from_edges(const std::vector<std::pair<std::string, std::string>>& edges,
                        LoadReport* report, const std::vector<std::string>& extra_nodes) {
    Graph g;
    auto intern = [&g](const std::string& label) -> NodeId {
        auto it = g.index_.find(label);
        if (it != g.index_.end()) return it->second;
        NodeId id = static_cast<NodeId>(g.labels_.size());
        g.labels_.push_back(label);
        g.index_.emplace(label, id);
        return id;
    };

    std::vector<std::pair<NodeId, NodeId>> kept;
    std::unordered_set<std::uint64_t> seen;
    kept.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        NodeId u = intern(a);
        if (a == b) {
            // The node stays (possibly isolated), only the loop goes.
            if (report) ++report->self_loops_dropped;
            continue;
        }
        NodeId v = intern(b);
        if (u > v) std::swap(u, v);
        std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
        if (!seen.insert(key).second) {
            if (report) ++report->duplicate_edges_dropped;
            continue;
        }
        kept.emplace_back(u, v);
    }
    for (const auto& label : extra_nodes) intern(label);

    const std::size_t n = g.labels_.size();
    g.offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : kept) {
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.adj_.resize(2 * kept.size());
    std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : kept) {
        g.adj_[cursor[u]++] = v;
        g.adj_[cursor[v]++] = u;
    }
    for (std::size_t i = 0; i < n; ++i)
        std::sort(g.adj_.begin() + g.offsets_[i], g.adj_.begin() + g.offsets_[i + 1]);

    // Content hash: edges canonicalized as ordered label pairs, sorted, then
    // FNV-1a over the label bytes with separators. Independent of input order
    // and of the dense numbering.
    std::vector<std::pair<const std::string*, const std::string*>> canon;
    canon.reserve(kept.size());
    for (const auto& [u, v] : kept) {
        const std::string* la = &g.labels_[u];
        const std::string* lb = &g.labels_[v];
        if (label_less(*lb, *la)) std::swap(la, lb);
        canon.emplace_back(la, lb);
    }
    std::sort(canon.begin(), canon.end(), [](const auto& x, const auto& y) {
        if (label_less(*x.first, *y.first)) return true;
        if (label_less(*y.first, *x.first)) return false;
        return label_less(*x.second, *y.second);
    });
    std::uint64_t h = kFnvOffset;
    for (const auto& [la, lb] : canon) {
        fnv_mix(h, *la, 0x1F);
        fnv_mix(h, *lb, 0x1E);
    }
    g.content_hash_ = h;
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<NodeId> Graph::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(static_cast<std::size_t>(edge_count()));
    for (NodeId u = 0; u < node_count(); ++u)
        for (NodeId v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph load_edge_list(std::istream& in, const LoadOptions& opts, LoadReport* report) {
    std::vector<std::pair<std::string, std::string>> edges;
    std::string line;
    std::vector<std::string> tokens;
    std::size_t lineno = 0;
    LoadReport local;
    LoadReport* rep = report ? report : &local;
    while (std::getline(in, line)) {
        ++lineno;
        ++rep->lines_total;
        switch (detail::split_line(line, opts.comment_chars, opts.comma_is_separator, tokens)) {
            case detail::LineKind::Blank:
                ++rep->blank_lines;
                continue;
            case detail::LineKind::Comment:
                ++rep->comment_lines;
                continue;
            case detail::LineKind::Data:
                break;
        }
        if (tokens.size() != 2) {
            throw std::runtime_error("edge list line " + std::to_string(lineno) +
                                     ": expected two tokens, got \"" + line + "\"");
        }
        edges.emplace_back(std::move(tokens[0]), std::move(tokens[1]));
    }
    if (edges.empty())
        throw std::runtime_error("edge list contains no edges");
    return Graph::from_edges(edges, report);
}

Graph load_edge_list_file(const std::string& path, const LoadOptions& opts, LoadReport* report) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return load_edge_list(in, opts, report);
}

Graph largest_connected_component(const Graph& g) {
    const NodeId n = g.node_count();
    if (n == 0) return {};
    std::vector<NodeId> comp(n, -1);
    std::vector<NodeId> stack;
    NodeId comp_count = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = comp_count;
        stack.push_back(s);
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v : g.neighbors(u)) {
                if (comp[v] < 0) {
                    comp[v] = comp_count;
                    stack.push_back(v);
                }
            }
        }
        ++comp_count;
    }
    std::vector<std::int64_t> size(comp_count, 0);
    // Representative label per component = the least original label in it;
    // used only to break exact size ties deterministically.
    std::vector<const std::string*> least(comp_count, nullptr);
    for (NodeId u = 0; u < n; ++u) {
        ++size[comp[u]];
        const std::string& lab = g.label(u);
        if (!least[comp[u]] || label_less(lab, *least[comp[u]])) least[comp[u]] = &lab;
    }
    NodeId best = 0;
    for (NodeId c = 1; c < comp_count; ++c) {
        if (size[c] > size[best] ||
            (size[c] == size[best] && label_less(*least[c], *least[best])))
            best = c;
    }
    std::vector<std::pair<std::string, std::string>> kept;
    for (const auto& [u, v] : g.edges())
        if (comp[u] == best) kept.emplace_back(g.label(u), g.label(v));
    if (kept.empty()) {
        // The winning component is a single isolated node.
        return Graph::from_edges({}, nullptr, {*least[best]});
    }
    return Graph::from_edges(kept);
}

std::int64_t count_triangles_serial(const Graph& g) {
    // Each triangle u < v < w is counted once, at its smallest node, by
    // testing adjacency of every forward neighbor pair.
    std::int64_t total = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto nb = g.neighbors(u);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] <= u) continue;
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (g.has_edge(nb[i], nb[j])) ++total;
        }
    }
    return total;
}

std::int64_t count_triangles(const Graph& g, int threads) {
    const NodeId n = g.node_count();
    std::int64_t total = 0;
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    // Merge-intersect adj(u) and adj(v) above v for every edge u < v. The
    // count is an exact integer, so the parallel schedule cannot change it.
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : total)
    for (NodeId u = 0; u < n; ++u) {
        auto nu = g.neighbors(u);
        for (NodeId v : nu) {
            if (v <= u) continue;
            auto nv = g.neighbors(v);
            auto it = std::lower_bound(nu.begin(), nu.end(), v + 1);
            auto jt = std::lower_bound(nv.begin(), nv.end(), v + 1);
            while (it != nu.end() && jt != nv.end()) {
                if (*it < *jt) ++it;
                else if (*jt < *it) ++jt;
                else { ++total; ++it; ++jt; }
            }
        }
    }
    return total;
}

GraphStats compute_stats(const Graph& g, int threads) {
    GraphStats s;
    s.n = g.node_count();
    s.m = g.edge_count();
    std::int64_t sum_k2 = 0;
    std::int64_t triads = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        std::int64_t k = g.degree(u);
        sum_k2 += k * k;
        triads += k * (k - 1) / 2;
    }
    s.avg_degree = s.n ? 2.0 * static_cast<double>(s.m) / static_cast<double>(s.n) : 0.0;
    s.second_moment = s.n ? static_cast<double>(sum_k2) / static_cast<double>(s.n) : 0.0;
    if (triads > 0) {
        s.transitivity =
            3.0 * static_cast<double>(count_triangles(g, threads)) / static_cast<double>(triads);
    } else {
        s.transitivity = 0.0;
        s.transitivity_defined = false;
    }
    // <k>/(<k^2> - <k>) reduces to 2m / (sum k^2 - 2m); both sides integer.
    const std::int64_t denom = sum_k2 - 2 * s.m;
    if (denom > 0) {
        s.epidemic_threshold = 2.0 * static_cast<double>(s.m) / static_cast<double>(denom);
    } else {
        s.epidemic_threshold = std::numeric_limits<double>::quiet_NaN();
        s.threshold_defined = false;
    }
    return s;
}

std::vector<int> k_shell_of_adjacency(const std::vector<std::int64_t>& offsets,
                                      const std::vector<NodeId>& adj) {
    const NodeId n = static_cast<NodeId>(offsets.size()) - 1;
    std::vector<int> shell(n, 0);
    if (n == 0) return shell;
    auto degree_of = [&](NodeId u) { return static_cast<int>(offsets[u + 1] - offsets[u]); };
    int max_deg = 0;
    for (NodeId u = 0; u < n; ++u) max_deg = std::max(max_deg, degree_of(u));

    // Bucket peeling: process nodes in order of current degree, lifting
    // survivors' degrees down as neighbors are removed. Linear in edges.
    std::vector<int> deg(n);
    std::vector<NodeId> bin(max_deg + 2, 0);
    for (NodeId u = 0; u < n; ++u) {
        deg[u] = degree_of(u);
        ++bin[deg[u] + 1];
    }
    for (int d = 1; d <= max_deg + 1; ++d) bin[d] += bin[d - 1];
    std::vector<NodeId> order(n);
    std::vector<NodeId> pos(n);
    {
        std::vector<NodeId> cursor(bin.begin(), bin.end() - 1);
        for (NodeId u = 0; u < n; ++u) {
            pos[u] = cursor[deg[u]]++;
            order[pos[u]] = u;
        }
    }
    std::vector<NodeId> bin_start(bin.begin(), bin.end() - 1);
    for (NodeId i = 0; i < n; ++i) {
        NodeId u = order[i];
        shell[u] = deg[u];
        for (std::int64_t e = offsets[u]; e < offsets[u + 1]; ++e) {
            NodeId v = adj[e];
            if (deg[v] <= deg[u]) continue;
            // Swap v to the front of its degree bucket, then shrink it.
            NodeId w = order[bin_start[deg[v]]];
            if (v != w) {
                std::swap(order[pos[v]], order[pos[w]]);
                std::swap(pos[v], pos[w]);
            }
            ++bin_start[deg[v]];
            --deg[v];
        }
    }
    // deg[] decreases monotonically along the peel, so shell numbers are the
    // usual core numbers; isolated nodes stay at 0.
    return shell;
}

std::vector<int> k_shell_decomposition(const Graph& g) {
    std::vector<std::int64_t> offsets(g.node_count() + 1, 0);
    std::vector<NodeId> adj;
    adj.reserve(2 * static_cast<std::size_t>(g.edge_count()));
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v : g.neighbors(u)) adj.push_back(v);
        offsets[u + 1] = static_cast<std::int64_t>(adj.size());
    }
    return k_shell_of_adjacency(offsets, adj);
}

}  // namespace spreadrank
