#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mlncraft/cbg.hpp"
#include "mlncraft/kcommunity.hpp"
#include "mlncraft/mln.hpp"

namespace mlncraft {

// Wall-clock comparison of the decoupled pipeline against recomputation.
// All times are medians over `repetitions` runs of a monotonic clock, in
// seconds.
struct BenchReport {
    std::vector<std::string> ordering_layers;
    bool cyclic = false;
    std::string metric;        // "we" | "wd" | "wh"
    int repetitions = 0;

    // One-time per-layer community detection cost, keyed by layer name.
    std::map<std::string, double> layer_seconds;
    // Per matching step: CBG build + weighting + matching.
    std::vector<double> step_seconds;
    double composition_total_seconds = 0.0;

    // Baseline: "recompute" re-runs detection on every interior layer
    // (heterogeneous case); "aggregate_and" composes the layers with AND and
    // detects communities on the result (homogeneous case).
    std::string baseline_kind;
    double baseline_seconds = 0.0;

    double max_layer_seconds = 0.0;
    // composition_total_seconds / max_layer_seconds.
    double composition_to_max_layer_ratio = 0.0;
};

// Runs the pipeline under timing. `seed`/`resolution` feed community
// detection; community sets are computed once per layer (the decoupling
// premise) and reused across matching steps.
BenchReport bench(const MultilayerNetwork& net, const LayerOrdering& ordering,
                  WeightMetric metric, int repetitions, std::uint64_t seed,
                  double resolution = 1.0,
                  DenominatorMode mode = DenominatorMode::CrossLayer);

} // namespace mlncraft
