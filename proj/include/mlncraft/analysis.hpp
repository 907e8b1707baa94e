#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlncraft/mln.hpp"

namespace mlncraft {

// Louvain modularity maximization. Deterministic for a fixed seed: the vertex
// visiting order is derived from the seed, tie-breaks are by ascending
// community id, and output community ids are dense 0..k-1 ordered by each
// community's smallest member vertex.
CommunitySet detect_communities(const Layer& layer, std::uint64_t seed,
                                double resolution = 1.0);

// Newman modularity of an assignment over `layer` at the given resolution.
double modularity(const Layer& layer, const std::vector<CommunityId>& assignment,
                  double resolution = 1.0);

// Wraps an externally produced vertex -> community assignment (stats are
// recomputed). Throws MissingVertexAssignment when the assignment does not
// cover every vertex exactly once (wrong length or negative entry).
CommunitySet load_communities(const Layer& layer,
                              const std::vector<CommunityId>& assignment);

enum class CentralityMetric { Degree, Closeness };

CentralityMetric parse_centrality_metric(const std::string& name); // "degree"|"closeness"
const char* centrality_metric_name(CentralityMetric metric);

// scores[v] for every vertex of the layer.
// Closeness is Wasserman-Faust reachable-scaled:
//   ((r-1)/(n-1)) * ((r-1)/sum of distances to reachable vertices),
// where r counts v itself; isolated vertices score 0.
std::vector<double> centrality(const Layer& layer, CentralityMetric metric);

enum class HubRule { AboveMean, TopK };

struct HubSet {
    LayerId layer = -1;
    CentralityMetric metric = CentralityMetric::Degree;
    HubRule rule = HubRule::AboveMean;
    int k = 0; // meaningful for TopK only
    std::vector<VertexId> hubs; // sorted ascending
};

// AboveMean: {v : score(v) >= mean(scores)}. TopK: k best scores, ties broken
// by ascending vertex id. Throws KExceedsVertexCount when k > |V|.
HubSet layer_hubs(const Layer& layer, CentralityMetric metric, HubRule rule,
                  int k = 0);

// Hubs of one community: members whose induced degree is >= the community's
// average induced degree. A singleton community's hub set is the member
// itself. Members of a clique community are therefore all hubs.
std::vector<VertexId> community_hubs(const Layer& layer, const Community& comm);

// community_hubs for every community of the set, aligned with cset.communities.
std::vector<std::vector<VertexId>> all_community_hubs(const Layer& layer,
                                                      const CommunitySet& cset);

} // namespace mlncraft
