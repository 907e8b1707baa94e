#include "mlncraft/bench.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>

#include "mlncraft/analysis.hpp"
#include "mlncraft/errors.hpp"
#include "mlncraft/homln.hpp"
#include "mlncraft/rng.hpp"
#include "match_step.hpp"

namespace mlncraft {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    size_t n = xs.size();
    if (n == 0) return 0.0;
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// AND-chain over layer names, for the homogeneous aggregate baseline.
LayerExpr and_chain(const std::vector<std::string>& names) {
    LayerExpr expr;
    expr.op = LayerExpr::Op::Layer;
    expr.layer_name = names.front();
    for (size_t i = 1; i < names.size(); ++i) {
        LayerExpr leaf;
        leaf.op = LayerExpr::Op::Layer;
        leaf.layer_name = names[i];
        LayerExpr node;
        node.op = LayerExpr::Op::And;
        node.lhs = std::make_unique<LayerExpr>(std::move(expr));
        node.rhs = std::make_unique<LayerExpr>(std::move(leaf));
        expr = std::move(node);
    }
    return expr;
}

} // namespace

BenchReport bench(const MultilayerNetwork& net, const LayerOrdering& ordering,
                  WeightMetric metric, int repetitions, std::uint64_t seed,
                  double resolution, DenominatorMode mode) {
    const int interior = ordering.interior_size();
    const int reps = std::max(1, repetitions);

    BenchReport report;
    for (LayerId id : ordering.layers) report.ordering_layers.push_back(net.layer(id).name);
    report.cyclic = ordering.cyclic;
    report.metric = weight_metric_name(metric);
    report.repetitions = reps;
    report.baseline_kind =
        net.kind == NetworkKind::Homogeneous ? "aggregate_and" : "recompute";

    const int num_steps = interior - 1 + (ordering.cyclic ? 1 : 0);
    std::map<LayerId, std::vector<double>> layer_samples;
    std::vector<std::vector<double>> step_samples(static_cast<size_t>(num_steps));
    std::vector<double> composition_samples, baseline_samples;

    std::vector<std::string> interior_names;
    for (int i = 0; i < interior; ++i)
        interior_names.push_back(net.layer(ordering.layers[static_cast<size_t>(i)]).name);

    for (int rep = 0; rep < reps; ++rep) {
        // Per-layer detection, once per layer (the decoupling premise).
        std::map<LayerId, CommunitySet> csets;
        for (int i = 0; i < interior; ++i) {
            LayerId id = ordering.layers[static_cast<size_t>(i)];
            auto t0 = Clock::now();
            CommunitySet cset =
                detect_communities(net.layer(id), layer_seed(seed, id), resolution);
            layer_samples[id].push_back(seconds_since(t0));
            csets.emplace(id, std::move(cset));
        }

        // Composition: the same per-step primitive k_community runs, with a
        // timer around each step. Elements are tracked as (start, current)
        // community chains; only live chains feed the next step's filter.
        double composition = 0.0;
        std::vector<std::pair<CommunityId, CommunityId>> chains; // (start, current)
        {
            auto t0 = Clock::now();
            detail::StepOutcome step =
                detail::match_step(net, csets.at(ordering.layers[0]),
                                   csets.at(ordering.layers[1]), metric, mode,
                                   std::nullopt);
            double dt = seconds_since(t0);
            step_samples[0].push_back(dt);
            composition += dt;
            for (auto [ci, cj] : step.pairs) chains.emplace_back(ci, cj);
        }
        for (int pos = 2; pos < interior + (ordering.cyclic ? 1 : 0); ++pos) {
            const bool closing = pos == interior;
            LayerId from = ordering.layers[static_cast<size_t>(pos - 1)];
            LayerId to = closing ? ordering.layers[0]
                                 : ordering.layers[static_cast<size_t>(pos)];
            std::set<CommunityId> live;
            for (auto [start, current] : chains) live.insert(current);

            auto t0 = Clock::now();
            detail::StepOutcome step = detail::match_step(
                net, csets.at(from), csets.at(to), metric, mode, live);
            double dt = seconds_since(t0);
            step_samples[static_cast<size_t>(pos - 1)].push_back(dt);
            composition += dt;

            std::vector<std::pair<CommunityId, CommunityId>> next;
            for (auto [start, current] : chains) {
                auto hit = std::find_if(step.pairs.begin(), step.pairs.end(),
                                        [&](const auto& p) { return p.first == current; });
                if (hit == step.pairs.end()) continue;
                if (closing && hit->second != start) continue;
                next.emplace_back(start, closing ? start : hit->second);
            }
            chains = std::move(next);
        }
        composition_samples.push_back(composition);

        // Baseline.
        if (report.baseline_kind == "recompute") {
            auto t0 = Clock::now();
            for (int i = 0; i < interior; ++i) {
                LayerId id = ordering.layers[static_cast<size_t>(i)];
                detect_communities(net.layer(id), layer_seed(seed, id), resolution);
            }
            baseline_samples.push_back(seconds_since(t0));
        } else {
            auto t0 = Clock::now();
            LayerExpr expr = and_chain(interior_names);
            Layer derived =
                compose_layers(net, expr, "bench_and",
                               std::max(20000, net.layers[0].graph.num_vertices() + 1));
            detect_communities(derived, layer_seed(seed, derived.id), resolution);
            baseline_samples.push_back(seconds_since(t0));
        }
    }

    for (auto& [id, samples] : layer_samples)
        report.layer_seconds[net.layer(id).name] = median(std::move(samples));
    for (auto& samples : step_samples)
        report.step_seconds.push_back(median(std::move(samples)));
    report.composition_total_seconds = median(std::move(composition_samples));
    report.baseline_seconds = median(std::move(baseline_samples));
    for (const auto& [name, s] : report.layer_seconds)
        report.max_layer_seconds = std::max(report.max_layer_seconds, s);
    report.composition_to_max_layer_ratio =
        report.max_layer_seconds > 0.0
            ? report.composition_total_seconds / report.max_layer_seconds
            : 0.0;
    return report;
}

} // namespace mlncraft
