#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spreadrank/graph.hpp"
#include "spreadrank/partition.hpp"

namespace spreadrank {

// The seven community-aware node scores. Short ids double as CLI tokens and
// CSV file stems.
enum class Measure {
    CommunityHubBridge,        // chb
    ParticipationCoefficient,  // pc
    CommunityBasedMediator,    // cbm
    CommCentrality,            // comm
    ModularityVitality,        // mv
    CommunityBasedCentrality,  // cbc
    KShellCommunity,           // ksc
};

const char* measure_id(Measure m);
std::optional<Measure> measure_from_id(const std::string& id);
const std::vector<Measure>& all_measures();

struct CentralityVector {
    Measure measure;
    std::vector<double> scores;
    // ModularityVitality ranks on |raw| but the signed values stay available.
    std::vector<double> raw;
    // delta for KShellCommunity, R for CommCentrality, unset otherwise.
    std::optional<double> param;
};

// Scores are 0 for degree-0 nodes under every measure. All accumulation runs
// over integers (or per-node float expressions with a fixed operation order),
// so every vector is bit-identical under node relabeling and across thread
// counts.

// size(own community) * k_intra + (# distinct other neighbor communities) * k_inter
CentralityVector community_hub_bridge(const Graph& g, const Partition& p, const LinkSplit& s);

// 1 - sum_c (k_{i,c}/degree)^2
CentralityVector participation_coefficient(const Graph& g, const LinkSplit& s);

// Entropy of the intra/inter link split, weighted by the node's share of all
// link endpoints. Natural log; 0*log(0) reads as 0.
CentralityVector community_based_mediator(const Graph& g, const LinkSplit& s);

// (1 + mu_c)*chi + (1 - mu_c)*phi^2 where chi and phi normalize k_intra and
// k_inter by their community maxima (scaled by R) and mu_c is the community's
// endpoint-counted inter-link fraction. Zero community maxima zero the term.
CentralityVector comm_centrality(const Graph& g, const Partition& p, const LinkSplit& s,
                                 double r = 1.0);

// Signed modularity change from deleting the node (partition kept, emptied
// communities dropped, modularity of an edgeless remainder reads as 0);
// scores are the absolute values. Incremental per-community bookkeeping, so
// a node costs O(degree) instead of a full recomputation.
CentralityVector modularity_vitality(const Graph& g, const Partition& p, int threads = 0);
// Reference implementation recomputing modularity from scratch per node.
CentralityVector modularity_vitality_serial(const Graph& g, const Partition& p);

// sum_c k_{i,c} * |c|/N
CentralityVector community_based_centrality(const Graph& g, const Partition& p,
                                            const LinkSplit& s);

// delta * core number in the intra-edge subgraph + (1-delta) * core number in
// the inter-edge subgraph, both on the full node set.
CentralityVector kshell_with_community(const Graph& g, const Partition& p, double delta = 0.5);

struct MeasureParams {
    double delta = 0.5;  // KShellCommunity
    double comm_r = 1.0; // CommCentrality
    int threads = 0;     // ModularityVitality
};

CentralityVector compute_measure(const Graph& g, const Partition& p, const LinkSplit& s,
                                 Measure m, const MeasureParams& params = {});

// Node indices ordered by descending score, ties by ascending original label.
struct Ranking {
    std::vector<NodeId> order;
};

// Throws if any score is NaN.
Ranking rank_nodes(const CentralityVector& v, const Graph& g);

}  // namespace spreadrank
