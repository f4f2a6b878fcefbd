#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace spreadrank {

using NodeId = std::int32_t;

// Ordering used everywhere a tie is broken "by original label": labels that
// parse as integers sort numerically and before non-numeric labels; equal
// numeric values fall back to byte comparison so the order stays strict.
bool label_less(const std::string& a, const std::string& b);

struct LoadOptions {
    std::string comment_chars = "#%";  // lines starting with any of these are skipped
    bool comma_is_separator = true;
};

struct LoadReport {
    std::size_t lines_total = 0;
    std::size_t comment_lines = 0;
    std::size_t blank_lines = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges_dropped = 0;
};

// Immutable undirected simple graph in CSR form, nodes re-indexed to [0, N)
// with the original labels kept. Safe to share across threads once built.
class Graph {
public:
    Graph() = default;

    // Builds from raw label pairs: self-loops dropped (their endpoint still
    // becomes a node, with degree 0 unless real edges name it), parallel
    // edges collapsed, dense ids assigned in order of first appearance.
    // extra_nodes interns additional labels after the edge scan.
    static Graph from_edges(const std::vector<std::pair<std::string, std::string>>& edges,
                            LoadReport* report = nullptr,
                            const std::vector<std::string>& extra_nodes = {});

    NodeId node_count() const { return static_cast<NodeId>(labels_.size()); }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(adj_.size()) / 2; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }
    int degree(NodeId u) const { return static_cast<int>(offsets_[u + 1] - offsets_[u]); }
    bool has_edge(NodeId u, NodeId v) const;

    const std::string& label(NodeId u) const { return labels_[u]; }
    std::optional<NodeId> index_of(const std::string& label) const;

    // Edges as (u, v) pairs with u < v, ascending.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    // FNV-1a over the label-canonicalized edge list; stable under file renames
    // and node reordering, changes whenever the edge set changes.
    std::uint64_t content_hash() const { return content_hash_; }

private:
    std::vector<std::int64_t> offsets_;
    std::vector<NodeId> adj_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
    std::uint64_t content_hash_ = 0;
};

// Parses "u<sep>v" lines; separators are whitespace runs or a comma.
// Throws std::runtime_error on malformed lines (with line number) and on
// input that yields no edges.
Graph load_edge_list(std::istream& in, const LoadOptions& opts = {}, LoadReport* report = nullptr);
Graph load_edge_list_file(const std::string& path, const LoadOptions& opts = {},
                          LoadReport* report = nullptr);

// Induced subgraph on the largest component, re-indexed densely keeping the
// relative node order. Size ties go to the component whose smallest original
// label is least.
Graph largest_connected_component(const Graph& g);

struct GraphStats {
    std::int64_t n = 0;
    std::int64_t m = 0;
    double avg_degree = 0.0;
    double second_moment = 0.0;         // <k^2>
    double transitivity = 0.0;          // 3*triangles / connected triples
    bool transitivity_defined = true;   // false when the graph has no path of length 2
    double epidemic_threshold = 0.0;    // <k> / (<k^2> - <k>)
    bool threshold_defined = true;      // false when <k^2> <= <k>; threshold is NaN then
};

GraphStats compute_stats(const Graph& g, int threads = 0);

std::int64_t count_triangles(const Graph& g, int threads = 0);
// Reference implementation: per-node neighbor pairs + adjacency lookup.
std::int64_t count_triangles_serial(const Graph& g);

// Core number per node via bucket peeling; isolated nodes get shell 0.
std::vector<int> k_shell_decomposition(const Graph& g);

// Same peeling over a raw CSR adjacency (offsets.size() = n + 1). Lets callers
// take shells of edge-filtered subgraphs without rebuilding a Graph.
std::vector<int> k_shell_of_adjacency(const std::vector<std::int64_t>& offsets,
                                      const std::vector<NodeId>& adj);

}  // namespace spreadrank
