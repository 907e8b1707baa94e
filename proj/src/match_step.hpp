#pragma once

// Internal: the single matching step shared by the k-community pipeline and
// the benchmark harness, so both time and run exactly the same code.

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mlncraft/cbg.hpp"
#include "mlncraft/mln.hpp"

namespace mlncraft::detail {

// One matching step, canonically oriented: the CBG always puts the lower
// layer id on the left, so tie-breaking cannot depend on the caller's
// argument order. Pairs are returned in (cset_i layer, cset_j layer)
// orientation regardless.
struct StepOutcome {
    // (community in cset_i's layer, community in cset_j's layer)
    std::vector<std::pair<CommunityId, CommunityId>> pairs;
    std::vector<double> weights;
    std::vector<std::int64_t> inter_edges;
};

StepOutcome match_step(const MultilayerNetwork& net, const CommunitySet& cset_i,
                       const CommunitySet& cset_j, WeightMetric metric,
                       DenominatorMode mode,
                       const std::optional<std::set<CommunityId>>& filter_i);

} // namespace mlncraft::detail
