#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spreadrank/graph.hpp"

namespace spreadrank {

// Non-overlapping node partition with dense community ids 0..C-1.
struct Partition {
    enum class Provenance { File, Fallback };

    std::vector<std::int32_t> assignment;       // node -> community
    std::vector<std::vector<NodeId>> communities;
    Provenance provenance = Provenance::File;

    std::int32_t community_count() const { return static_cast<std::int32_t>(communities.size()); }
    std::int64_t size_of(std::int32_t c) const {
        return static_cast<std::int64_t>(communities[c].size());
    }
};

// Parses lines "node_id community_id" (same separators and comment rules as
// edge lists). Every graph node must appear exactly once; duplicate, unknown,
// and unassigned nodes raise errors that name the offenders. Community ids are
// re-indexed densely in node order, so the result does not depend on line
// order.
Partition load_partition(std::istream& in, const Graph& g);
Partition load_partition_file(const std::string& path, const Graph& g);

// Synchronous label propagation with identity initial labels and lowest-label
// tie-breaking. The seed only enters if the iteration hits a two-state
// oscillation, where one shuffled asynchronous sweep breaks the cycle. Same
// seed, same graph: same partition. Not a substitute for a proper community
// detector; results are flagged Fallback downstream.
Partition detect_fallback(const Graph& g, std::uint64_t seed);

// Per-node intra/inter link counts against a partition, plus a CSR listing of
// (community, count) pairs per node sorted by community id.
struct LinkSplit {
    std::vector<std::int32_t> k_intra;
    std::vector<std::int32_t> k_inter;
    std::vector<std::int32_t> nnc;  // distinct neighbor communities other than one's own
    std::vector<std::int64_t> offsets;
    std::vector<std::int32_t> comm;
    std::vector<std::int32_t> count;

    std::size_t entries_begin(NodeId u) const { return static_cast<std::size_t>(offsets[u]); }
    std::size_t entries_end(NodeId u) const { return static_cast<std::size_t>(offsets[u + 1]); }
};

LinkSplit link_split(const Graph& g, const Partition& p);

// Fraction of edges whose endpoints lie in different communities.
double mixing_parameter(const LinkSplit& split, const Graph& g);

// Newman modularity sum_c [ e_c/m - (d_c/2m)^2 ]. Both accumulators are
// integers, so the value is independent of node and community numbering.
double modularity(const Graph& g, const Partition& p);

}  // namespace spreadrank
