#include "mlncraft/kcommunity.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mlncraft/errors.hpp"
#include "match_step.hpp"

namespace mlncraft {

double KCommunityElement::strength() const {
    if (links.empty()) return 0.0;
    double s = links.front().weight;
    for (const ElementLink& l : links) s = std::min(s, l.weight);
    return s;
}

LayerOrdering parse_ordering(const MultilayerNetwork& net, const std::string& text) {
    std::vector<std::string> names;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        size_t b = part.find_first_not_of(" \t");
        size_t e = part.find_last_not_of(" \t");
        if (b == std::string::npos) {
            throw MlnError(ErrorCode::ParseError, "empty layer name in ordering '" + text + "'");
        }
        names.push_back(part.substr(b, e - b + 1));
    }
    if (names.size() < 2) {
        throw MlnError(ErrorCode::ParseError,
                       "ordering '" + text + "' needs at least two layers");
    }

    LayerOrdering ordering;
    for (const std::string& name : names)
        ordering.layers.push_back(net.layer_id_by_name(name));
    ordering.cyclic = ordering.layers.front() == ordering.layers.back();

    const int interior = ordering.interior_size();
    if (interior < 2) {
        throw MlnError(ErrorCode::ParseError,
                       "ordering '" + text + "' needs at least two distinct layers");
    }
    std::set<LayerId> seen;
    for (int i = 0; i < interior; ++i) {
        if (!seen.insert(ordering.layers[static_cast<size_t>(i)]).second) {
            throw MlnError(ErrorCode::IllegalRepeat,
                           "layer '" + net.layer(ordering.layers[static_cast<size_t>(i)]).name +
                               "' repeats inside ordering '" + text + "'");
        }
    }
    for (size_t i = 0; i + 1 < ordering.layers.size(); ++i) {
        LayerId a = ordering.layers[i], b = ordering.layers[i + 1];
        if (a == b || !net.has_coupling(a, b)) {
            throw MlnError(ErrorCode::UncoupledConsecutiveLayers,
                           "layers '" + net.layer(a).name + "' and '" + net.layer(b).name +
                               "' are consecutive in the ordering but not coupled");
        }
    }
    return ordering;
}

namespace detail {

StepOutcome match_step(const MultilayerNetwork& net, const CommunitySet& cset_i,
                       const CommunitySet& cset_j, WeightMetric metric,
                       DenominatorMode mode,
                       const std::optional<std::set<CommunityId>>& filter_i) {
    const bool swapped = cset_j.layer < cset_i.layer;
    const CommunitySet& left = swapped ? cset_j : cset_i;
    const CommunitySet& right = swapped ? cset_i : cset_j;

    CommunityBipartiteGraph cbg;
    if (swapped) {
        // The filter names communities of cset_i, which now sits on the
        // right; build unfiltered and restrict while reading the matching.
        cbg = build_cbg(net, left, right);
    } else {
        cbg = build_cbg(net, left, right, filter_i);
    }
    apply_weight_metric(net, left, right, cbg, metric, mode);

    if (swapped && filter_i) {
        // Drop meta edges whose right (= cset_i) community is filtered out,
        // so the matching never spends a left community on a dead element.
        CommunityBipartiteGraph restricted = cbg;
        restricted.edges.clear();
        for (const MetaEdge& e : cbg.edges) {
            if (filter_i->count(e.right)) restricted.edges.push_back(e);
        }
        cbg = std::move(restricted);
    }

    Matching m = max_weight_matching(cbg);
    StepOutcome out;
    for (size_t k = 0; k < m.pairs.size(); ++k) {
        auto [cl, cr] = m.pairs[k];
        const MetaEdge* e = cbg.find_edge(cl, cr);
        CommunityId ci = swapped ? cr : cl;
        CommunityId cj = swapped ? cl : cr;
        out.pairs.emplace_back(ci, cj);
        out.weights.push_back(m.pair_weights[k]);
        out.inter_edges.push_back(e ? e->inter_edge_count : 0);
    }
    return out;
}

} // namespace detail

namespace {

using detail::StepOutcome;
using detail::match_step;

const CommunitySet& cset_for(const std::map<LayerId, CommunitySet>& community_sets,
                             const MultilayerNetwork& net, LayerId layer) {
    auto it = community_sets.find(layer);
    if (it == community_sets.end()) {
        throw MlnError(ErrorCode::MissingVertexAssignment,
                       "no community set supplied for layer '" + net.layer(layer).name + "'");
    }
    return it->second;
}

} // namespace

KCommunityResult two_community(const MultilayerNetwork& net,
                               const CommunitySet& cset_i, const CommunitySet& cset_j,
                               WeightMetric metric, DenominatorMode mode) {
    KCommunityResult result;
    result.ordering.layers = {cset_i.layer, cset_j.layer};
    result.ordering.cyclic = false;
    result.metric = metric;

    StepOutcome step = match_step(net, cset_i, cset_j, metric, mode, std::nullopt);
    for (size_t k = 0; k < step.pairs.size(); ++k) {
        KCommunityElement el;
        el.tuple = {{cset_i.layer, step.pairs[k].first},
                    {cset_j.layer, step.pairs[k].second}};
        ElementLink link;
        link.left_layer = cset_i.layer;
        link.left_community = step.pairs[k].first;
        link.right_layer = cset_j.layer;
        link.right_community = step.pairs[k].second;
        link.weight = step.weights[k];
        link.inter_edge_count = step.inter_edges[k];
        el.links.push_back(link);
        el.status = ElementStatus::Total;
        result.elements.push_back(std::move(el));
    }
    result.per_step_match_counts.push_back(static_cast<int>(step.pairs.size()));
    return result;
}

KCommunityResult k_community(const MultilayerNetwork& net, const LayerOrdering& ordering,
                             const std::map<LayerId, CommunitySet>& community_sets,
                             WeightMetric metric, DenominatorMode mode) {
    const int interior = ordering.interior_size();
    for (int i = 0; i < interior; ++i)
        cset_for(community_sets, net, ordering.layers[static_cast<size_t>(i)]);

    KCommunityResult result = two_community(
        net, cset_for(community_sets, net, ordering.layers[0]),
        cset_for(community_sets, net, ordering.layers[1]), metric, mode);
    result.ordering = ordering;

    // Acyclic extension steps: live layer-t communities vs all of layer t+1.
    for (int pos = 2; pos < interior; ++pos) {
        LayerId from = ordering.layers[static_cast<size_t>(pos - 1)];
        LayerId to = ordering.layers[static_cast<size_t>(pos)];

        std::set<CommunityId> live;
        for (const KCommunityElement& el : result.elements) {
            if (el.status == ElementStatus::Total) live.insert(el.tuple.back().second);
        }
        StepOutcome step =
            match_step(net, cset_for(community_sets, net, from),
                       cset_for(community_sets, net, to), metric, mode, live);
        result.per_step_match_counts.push_back(static_cast<int>(step.pairs.size()));

        for (KCommunityElement& el : result.elements) {
            if (el.status != ElementStatus::Total) continue;
            CommunityId from_comm = el.tuple.back().second;
            auto hit = std::find_if(step.pairs.begin(), step.pairs.end(),
                                    [&](const auto& p) { return p.first == from_comm; });
            if (hit == step.pairs.end()) {
                el.status = ElementStatus::Partial;
                el.failure = FailureKind::NoMatch;
                el.truncation_point = pos;
                continue;
            }
            size_t k = static_cast<size_t>(hit - step.pairs.begin());
            el.tuple.emplace_back(to, hit->second);
            ElementLink link;
            link.left_layer = from;
            link.left_community = from_comm;
            link.right_layer = to;
            link.right_community = hit->second;
            link.weight = step.weights[k];
            link.inter_edge_count = step.inter_edges[k];
            el.links.push_back(link);
        }
    }

    // Cyclic closure: last interior layer vs the first layer's full set.
    if (ordering.cyclic) {
        LayerId from = ordering.layers[static_cast<size_t>(interior - 1)];
        LayerId to = ordering.layers[0];
        const int closing_pos = static_cast<int>(ordering.layers.size()) - 1;

        std::set<CommunityId> live;
        for (const KCommunityElement& el : result.elements) {
            if (el.status == ElementStatus::Total) live.insert(el.tuple.back().second);
        }
        StepOutcome step =
            match_step(net, cset_for(community_sets, net, from),
                       cset_for(community_sets, net, to), metric, mode, live);
        result.per_step_match_counts.push_back(static_cast<int>(step.pairs.size()));

        for (KCommunityElement& el : result.elements) {
            if (el.status != ElementStatus::Total) continue;
            CommunityId from_comm = el.tuple.back().second;
            CommunityId start = el.tuple.front().second;
            auto hit = std::find_if(step.pairs.begin(), step.pairs.end(),
                                    [&](const auto& p) { return p.first == from_comm; });
            if (hit == step.pairs.end()) {
                el.status = ElementStatus::Partial;
                el.failure = FailureKind::NoMatch;
                el.truncation_point = closing_pos;
                continue;
            }
            if (hit->second != start) {
                el.status = ElementStatus::Partial;
                el.failure = FailureKind::Inconsistent;
                el.truncation_point = closing_pos;
                continue;
            }
            size_t k = static_cast<size_t>(hit - step.pairs.begin());
            ElementLink link;
            link.left_layer = from;
            link.left_community = from_comm;
            link.right_layer = to;
            link.right_community = start;
            link.weight = step.weights[k];
            link.inter_edge_count = step.inter_edges[k];
            el.links.push_back(link);
        }
    }
    return result;
}

std::vector<KCommunityElement> rank_elements(const KCommunityResult& result) {
    std::vector<KCommunityElement> out = result.elements;
    std::stable_sort(out.begin(), out.end(),
                     [](const KCommunityElement& a, const KCommunityElement& b) {
                         double sa = a.strength(), sb = b.strength();
                         if (sa != sb) return sa > sb;
                         double fa = a.links.empty() ? 0.0 : a.links.front().weight;
                         double fb = b.links.empty() ? 0.0 : b.links.front().weight;
                         if (fa != fb) return fa > fb;
                         return a.tuple < b.tuple;
                     });
    return out;
}

} // namespace mlncraft
