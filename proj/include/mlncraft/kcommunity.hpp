#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mlncraft/cbg.hpp"
#include "mlncraft/matching.hpp"
#include "mlncraft/mln.hpp"

namespace mlncraft {

struct LayerOrdering {
    std::vector<LayerId> layers; // as listed; cyclic keeps the repeat at the end
    bool cyclic = false;

    // Interior layers: all positions except a trailing cyclic repeat.
    int interior_size() const {
        return static_cast<int>(layers.size()) - (cyclic ? 1 : 0);
    }
};

// Parses "M,A,D,M"-style comma lists of layer names. Cyclic iff first ==
// last; any other repetition is IllegalRepeat. Consecutive layers (including
// the closing pair of a cyclic ordering) must be coupled
// (UncoupledConsecutiveLayers); names must resolve (UnknownLayer); at least
// two distinct layers are required (ParseError).
LayerOrdering parse_ordering(const MultilayerNetwork& net,
                             const std::string& text);

enum class ElementStatus { Total, Partial };
enum class FailureKind { None, NoMatch, Inconsistent };

struct ElementLink {
    LayerId left_layer = -1;
    CommunityId left_community = -1;
    LayerId right_layer = -1;
    CommunityId right_community = -1;
    std::int64_t inter_edge_count = 0;
    double weight = 0.0;
};

struct KCommunityElement {
    // One (layer, community) entry per interior ordering position reached.
    std::vector<std::pair<LayerId, CommunityId>> tuple;
    std::vector<ElementLink> links;
    ElementStatus status = ElementStatus::Total;
    FailureKind failure = FailureKind::None;
    // For partial elements: the 0-based ordering index that could not be
    // satisfied (tuple length for acyclic failures, last index for cyclic).
    int truncation_point = -1;

    // Bottleneck strength: minimum link weight.
    double strength() const;
};

struct KCommunityResult {
    LayerOrdering ordering;
    WeightMetric metric = WeightMetric::EdgeCount;
    std::vector<KCommunityElement> elements;
    std::vector<int> per_step_match_counts; // one entry per matching step
};

// One matching step between two layers' community structures: CBG, weight
// metric, canonical matching. Commutative by construction: the CBG is built
// with the lower layer id on the left regardless of argument order, and the
// result is reported in the caller's orientation.
KCommunityResult two_community(const MultilayerNetwork& net,
                               const CommunitySet& cset_i,
                               const CommunitySet& cset_j,
                               WeightMetric metric,
                               DenominatorMode mode = DenominatorMode::CrossLayer);

// Recursive composition along an ordering. Step 1 matches the first two
// layers; step t extends live elements by matching their layer-t communities
// (left) against all communities of layer t+1 (right). Unmatched live
// elements become partial (NoMatch). A cyclic ordering's final step matches
// the last interior layer against the FIRST layer's full community set: an
// element is total iff it is matched back to its own starting community,
// partial Inconsistent when matched elsewhere, partial NoMatch when
// unmatched. community_sets is keyed by layer id and must cover every
// interior layer (MissingVertexAssignment otherwise).
KCommunityResult k_community(const MultilayerNetwork& net,
                             const LayerOrdering& ordering,
                             const std::map<LayerId, CommunitySet>& community_sets,
                             WeightMetric metric,
                             DenominatorMode mode = DenominatorMode::CrossLayer);

// Elements sorted by descending bottleneck strength; ties by first link
// weight, then lexicographically smallest tuple.
std::vector<KCommunityElement> rank_elements(const KCommunityResult& result);

} // namespace mlncraft
