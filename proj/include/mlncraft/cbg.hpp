#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mlncraft/mln.hpp"

namespace mlncraft {

enum class WeightMetric { EdgeCount, DensityCoupling, HubParticipation };

WeightMetric parse_weight_metric(const std::string& name); // "we"|"wd"|"wh"
const char* weight_metric_name(WeightMetric metric);

// How the middle coupling fraction of the density / hub metrics is
// normalized. CrossLayer divides the inter-edge count by
// |left community| * |right community| (the read that makes the metric hit
// 1.0 exactly on clique + complete coupling). LeftLayerLiteral divides by
// |left community| * |community with the right community's id, looked up in
// the LEFT layer| and exists for comparison only; it throws UnknownCommunity
// when that community does not exist.
enum class DenominatorMode { CrossLayer, LeftLayerLiteral };

struct MetaEdge {
    CommunityId left = -1;  // community id in the left layer
    CommunityId right = -1; // community id in the right layer
    std::int64_t inter_edge_count = 0;
    double weight = 0.0; // meaningful once a metric has been applied
};

// Community bipartite graph between the communities of two coupled layers.
// A meta edge exists iff at least one inter-layer edge connects the pair.
struct CommunityBipartiteGraph {
    LayerId left_layer = -1;
    LayerId right_layer = -1;
    std::vector<CommunityId> left_communities;  // sorted ascending
    std::vector<CommunityId> right_communities; // sorted ascending
    std::vector<MetaEdge> edges; // sorted by (left, right)
    std::optional<WeightMetric> metric_applied;

    const MetaEdge* find_edge(CommunityId left, CommunityId right) const;
};

// Builds the CBG from the coupling between the two layers the community sets
// partition. When left_filter is given, only those left communities are
// represented (used for restricted matchings mid-pipeline); the right side
// always carries the full community set. Throws NoCouplingBetweenLayers.
CommunityBipartiteGraph
build_cbg(const MultilayerNetwork& net, const CommunitySet& cset_left,
          const CommunitySet& cset_right,
          const std::optional<std::set<CommunityId>>& left_filter = std::nullopt);

// Weighting passes; each fills MetaEdge::weight and stamps metric_applied.
// Existing meta edges are never deleted, even at weight 0.

// w = inter-edge count.
void weight_edge_count(CommunityBipartiteGraph& cbg);

// w = density(left) * cnt / denom * density(right), where cnt is the meta
// edge's inter-edge count and denom follows `mode`.
// Densities are the community densities (1.0 for singletons); under
// CrossLayer w is in [0,1], and strictly positive whenever both communities
// have positive density (always true for detected communities, whose
// multi-member communities are internally connected).
void weight_density_coupling(const MultilayerNetwork& net,
                             const CommunitySet& cset_left,
                             const CommunitySet& cset_right,
                             CommunityBipartiteGraph& cbg,
                             DenominatorMode mode = DenominatorMode::CrossLayer);

// w = (participating left hubs / left hubs) * cnt / denom
//   * (participating right hubs / right hubs). A hub participates iff it is
// an endpoint of an inter-layer edge between the two communities. w in [0,1]
// under CrossLayer; zero weights on existing meta edges are kept.
void weight_hub_participation(const MultilayerNetwork& net,
                              const CommunitySet& cset_left,
                              const CommunitySet& cset_right,
                              CommunityBipartiteGraph& cbg,
                              DenominatorMode mode = DenominatorMode::CrossLayer);

// Dispatch over the three metrics above.
void apply_weight_metric(const MultilayerNetwork& net,
                         const CommunitySet& cset_left,
                         const CommunitySet& cset_right,
                         CommunityBipartiteGraph& cbg, WeightMetric metric,
                         DenominatorMode mode = DenominatorMode::CrossLayer);

} // namespace mlncraft
