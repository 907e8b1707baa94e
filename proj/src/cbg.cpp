#include "mlncraft/cbg.hpp"

#include <algorithm>
#include <map>

#include "mlncraft/analysis.hpp"
#include "mlncraft/errors.hpp"

namespace mlncraft {

WeightMetric parse_weight_metric(const std::string& name) {
    if (name == "we") return WeightMetric::EdgeCount;
    if (name == "wd") return WeightMetric::DensityCoupling;
    if (name == "wh") return WeightMetric::HubParticipation;
    throw MlnError(ErrorCode::ParseError, "unknown weight metric '" + name + "'");
}

const char* weight_metric_name(WeightMetric metric) {
    switch (metric) {
        case WeightMetric::EdgeCount: return "we";
        case WeightMetric::DensityCoupling: return "wd";
        case WeightMetric::HubParticipation: return "wh";
    }
    return "?";
}

const MetaEdge* CommunityBipartiteGraph::find_edge(CommunityId left,
                                                   CommunityId right) const {
    auto it = std::lower_bound(
        edges.begin(), edges.end(), std::make_pair(left, right),
        [](const MetaEdge& e, const std::pair<CommunityId, CommunityId>& key) {
            return std::make_pair(e.left, e.right) < key;
        });
    if (it != edges.end() && it->left == left && it->right == right) return &*it;
    return nullptr;
}

CommunityBipartiteGraph
build_cbg(const MultilayerNetwork& net, const CommunitySet& cset_left,
          const CommunitySet& cset_right,
          const std::optional<std::set<CommunityId>>& left_filter) {
    const InterLayerEdgeSet& x = net.coupling(cset_left.layer, cset_right.layer);
    const bool flipped = (x.layer_a != cset_left.layer);

    CommunityBipartiteGraph cbg;
    cbg.left_layer = cset_left.layer;
    cbg.right_layer = cset_right.layer;
    for (const Community& c : cset_left.communities) {
        if (!left_filter || left_filter->count(c.id)) cbg.left_communities.push_back(c.id);
    }
    for (const Community& c : cset_right.communities) cbg.right_communities.push_back(c.id);

    std::map<std::pair<CommunityId, CommunityId>, std::int64_t> counts;
    for (const auto& [a, b] : x.edges) {
        VertexId lv = flipped ? b : a;
        VertexId rv = flipped ? a : b;
        CommunityId lc = cset_left.assignment[static_cast<size_t>(lv)];
        CommunityId rc = cset_right.assignment[static_cast<size_t>(rv)];
        if (left_filter && !left_filter->count(lc)) continue;
        ++counts[{lc, rc}];
    }
    for (const auto& [key, n] : counts) {
        MetaEdge e;
        e.left = key.first;
        e.right = key.second;
        e.inter_edge_count = n;
        cbg.edges.push_back(e);
    }
    return cbg;
}

void weight_edge_count(CommunityBipartiteGraph& cbg) {
    for (MetaEdge& e : cbg.edges) e.weight = static_cast<double>(e.inter_edge_count);
    cbg.metric_applied = WeightMetric::EdgeCount;
}

namespace {

double coupling_denominator(const CommunitySet& cset_left,
                            const CommunitySet& cset_right, const MetaEdge& e,
                            DenominatorMode mode) {
    const auto left_size =
        static_cast<double>(cset_left.community(e.left).members.size());
    if (mode == DenominatorMode::CrossLayer) {
        return left_size *
               static_cast<double>(cset_right.community(e.right).members.size());
    }
    // Literal read: both community sizes indexed from the left layer. Only
    // defined when the left layer has a community with the right's id.
    return left_size *
           static_cast<double>(cset_left.community(e.right).members.size());
}

} // namespace

void weight_density_coupling(const MultilayerNetwork& net,
                             const CommunitySet& cset_left,
                             const CommunitySet& cset_right,
                             CommunityBipartiteGraph& cbg, DenominatorMode mode) {
    (void)net;
    for (MetaEdge& e : cbg.edges) {
        const Community& cl = cset_left.community(e.left);
        const Community& cr = cset_right.community(e.right);
        double denom = coupling_denominator(cset_left, cset_right, e, mode);
        e.weight = cl.density *
                   (static_cast<double>(e.inter_edge_count) / denom) * cr.density;
    }
    cbg.metric_applied = WeightMetric::DensityCoupling;
}

void weight_hub_participation(const MultilayerNetwork& net,
                              const CommunitySet& cset_left,
                              const CommunitySet& cset_right,
                              CommunityBipartiteGraph& cbg, DenominatorMode mode) {
    const Layer& left_layer = net.layer(cset_left.layer);
    const Layer& right_layer = net.layer(cset_right.layer);

    std::map<CommunityId, std::vector<VertexId>> left_hubs, right_hubs;
    for (const Community& c : cset_left.communities)
        left_hubs[c.id] = community_hubs(left_layer, c);
    for (const Community& c : cset_right.communities)
        right_hubs[c.id] = community_hubs(right_layer, c);

    // Bucket the endpoints of every inter edge by meta edge, then count the
    // distinct hub endpoints per side.
    const InterLayerEdgeSet& x = net.coupling(cset_left.layer, cset_right.layer);
    const bool flipped = (x.layer_a != cset_left.layer);
    std::map<std::pair<CommunityId, CommunityId>,
             std::pair<std::vector<VertexId>, std::vector<VertexId>>>
        endpoints;
    for (const auto& [a, b] : x.edges) {
        VertexId lv = flipped ? b : a;
        VertexId rv = flipped ? a : b;
        CommunityId lc = cset_left.assignment[static_cast<size_t>(lv)];
        CommunityId rc = cset_right.assignment[static_cast<size_t>(rv)];
        auto& bucket = endpoints[{lc, rc}];
        bucket.first.push_back(lv);
        bucket.second.push_back(rv);
    }

    auto count_participating = [](std::vector<VertexId>& seen,
                                  const std::vector<VertexId>& hubs) {
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        std::int64_t n = 0;
        for (VertexId v : seen) {
            if (std::binary_search(hubs.begin(), hubs.end(), v)) ++n;
        }
        return n;
    };

    for (MetaEdge& e : cbg.edges) {
        auto& bucket = endpoints[{e.left, e.right}];
        const auto& hl = left_hubs[e.left];
        const auto& hr = right_hubs[e.right];
        std::int64_t pl = count_participating(bucket.first, hl);
        std::int64_t pr = count_participating(bucket.second, hr);
        double denom = coupling_denominator(cset_left, cset_right, e, mode);
        double frac_l = hl.empty() ? 0.0
                                   : static_cast<double>(pl) /
                                         static_cast<double>(hl.size());
        double frac_r = hr.empty() ? 0.0
                                   : static_cast<double>(pr) /
                                         static_cast<double>(hr.size());
        e.weight =
            frac_l * (static_cast<double>(e.inter_edge_count) / denom) * frac_r;
    }
    cbg.metric_applied = WeightMetric::HubParticipation;
}

void apply_weight_metric(const MultilayerNetwork& net,
                         const CommunitySet& cset_left,
                         const CommunitySet& cset_right,
                         CommunityBipartiteGraph& cbg, WeightMetric metric,
                         DenominatorMode mode) {
    switch (metric) {
        case WeightMetric::EdgeCount:
            weight_edge_count(cbg);
            break;
        case WeightMetric::DensityCoupling:
            weight_density_coupling(net, cset_left, cset_right, cbg, mode);
            break;
        case WeightMetric::HubParticipation:
            weight_hub_participation(net, cset_left, cset_right, cbg, mode);
            break;
    }
}

} // namespace mlncraft
