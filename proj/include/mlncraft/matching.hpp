#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mlncraft/cbg.hpp"

namespace mlncraft {

struct Matching {
    // (left community id, right community id), sorted by left id.
    std::vector<std::pair<CommunityId, CommunityId>> pairs;
    std::vector<double> pair_weights; // aligned with pairs
    double total_weight = 0.0;
};

// Maximum-weight matching on a weighted CBG. The result is canonical:
// maximum total weight over all matchings; among those, maximum cardinality
// (zero-weight meta edges are taken exactly when they raise cardinality at no
// weight cost); among those, the lexicographically smallest pair list by
// (left id, right id). Candidate totals are summed in ascending-left-id
// order with exact double comparisons, so the canonical choice is stable and
// matches the brute-force oracle on the same weights. Throws UnweightedCBG
// when no metric has been applied.
Matching max_weight_matching(const CommunityBipartiteGraph& cbg);

// Exhaustive oracle with the identical canonical rule. Throws
// InstanceTooLarge when min(side sizes) > 8, UnweightedCBG as above.
Matching brute_force_matching(const CommunityBipartiteGraph& cbg);

} // namespace mlncraft
