#include "mlncraft/mln.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "mlncraft/errors.hpp"

namespace mlncraft {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DuplicateLayerName: return "DuplicateLayerName";
        case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::UnknownLayer: return "UnknownLayer";
        case ErrorCode::UnknownCommunity: return "UnknownCommunity";
        case ErrorCode::NoCouplingBetweenLayers: return "NoCouplingBetweenLayers";
        case ErrorCode::MissingVertexAssignment: return "MissingVertexAssignment";
        case ErrorCode::KExceedsVertexCount: return "KExceedsVertexCount";
        case ErrorCode::HeterogeneousNetwork: return "HeterogeneousNetwork";
        case ErrorCode::ComplementTooLarge: return "ComplementTooLarge";
        case ErrorCode::VertexUniverseMismatch: return "VertexUniverseMismatch";
        case ErrorCode::UnweightedCBG: return "UnweightedCBG";
        case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
        case ErrorCode::UncoupledConsecutiveLayers: return "UncoupledConsecutiveLayers";
        case ErrorCode::IllegalRepeat: return "IllegalRepeat";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

const Layer& MultilayerNetwork::layer(LayerId id) const {
    if (id < 0 || id >= static_cast<LayerId>(layers.size())) {
        throw MlnError(ErrorCode::UnknownLayer,
                       "layer id " + std::to_string(id) + " out of range");
    }
    return layers[static_cast<size_t>(id)];
}

LayerId MultilayerNetwork::layer_id_by_name(const std::string& name) const {
    for (const Layer& l : layers) {
        if (l.name == name) return l.id;
    }
    throw MlnError(ErrorCode::UnknownLayer, "no layer named '" + name + "'");
}

bool MultilayerNetwork::has_coupling(LayerId a, LayerId b) const {
    if (a > b) std::swap(a, b);
    for (const auto& x : couplings) {
        if (x.layer_a == a && x.layer_b == b) return true;
    }
    return false;
}

const InterLayerEdgeSet& MultilayerNetwork::coupling(LayerId a, LayerId b) const {
    LayerId lo = std::min(a, b), hi = std::max(a, b);
    for (const auto& x : couplings) {
        if (x.layer_a == lo && x.layer_b == hi) return x;
    }
    throw MlnError(ErrorCode::NoCouplingBetweenLayers,
                   "layers " + layer(a).name + " and " + layer(b).name +
                       " are not coupled");
}

MultilayerNetwork build_network(std::vector<Layer> layers,
                                std::vector<InterLayerEdgeSet> couplings) {
    MultilayerNetwork net;
    std::set<std::string> names;
    for (size_t i = 0; i < layers.size(); ++i) {
        layers[i].id = static_cast<LayerId>(i);
        if (!names.insert(layers[i].name).second) {
            throw MlnError(ErrorCode::DuplicateLayerName,
                           "layer '" + layers[i].name + "' declared twice");
        }
    }
    net.layers = std::move(layers);

    for (InterLayerEdgeSet& x : couplings) {
        if (x.layer_a < 0 || x.layer_a >= static_cast<LayerId>(net.layers.size()) ||
            x.layer_b < 0 || x.layer_b >= static_cast<LayerId>(net.layers.size()) ||
            x.layer_a == x.layer_b) {
            throw MlnError(ErrorCode::UnknownLayer,
                           "coupling references an invalid layer pair");
        }
        if (x.layer_a > x.layer_b) { // canonical orientation
            std::swap(x.layer_a, x.layer_b);
            for (auto& e : x.edges) std::swap(e.first, e.second);
        }
        int na = net.layers[static_cast<size_t>(x.layer_a)].graph.num_vertices();
        int nb = net.layers[static_cast<size_t>(x.layer_b)].graph.num_vertices();
        for (const auto& [u, v] : x.edges) {
            if (u < 0 || u >= na || v < 0 || v >= nb) {
                throw MlnError(ErrorCode::DanglingEndpoint,
                               "inter edge (" + std::to_string(u) + ", " +
                                   std::to_string(v) + ") between layers " +
                                   net.layers[static_cast<size_t>(x.layer_a)].name + " and " +
                                   net.layers[static_cast<size_t>(x.layer_b)].name +
                                   " leaves the vertex range");
            }
        }
        std::sort(x.edges.begin(), x.edges.end());
        x.edges.erase(std::unique(x.edges.begin(), x.edges.end()), x.edges.end());
    }
    // One edge set per layer pair: merge duplicates.
    std::map<std::pair<LayerId, LayerId>, InterLayerEdgeSet> merged;
    for (InterLayerEdgeSet& x : couplings) {
        auto key = std::make_pair(x.layer_a, x.layer_b);
        auto it = merged.find(key);
        if (it == merged.end()) {
            merged.emplace(key, std::move(x));
        } else {
            auto& dst = it->second.edges;
            dst.insert(dst.end(), x.edges.begin(), x.edges.end());
            std::sort(dst.begin(), dst.end());
            dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
        }
    }
    net.couplings.clear();
    for (auto& [key, x] : merged) net.couplings.push_back(std::move(x));

    bool same_type = true, same_count = true;
    for (const Layer& l : net.layers) {
        if (l.entity_type != net.layers.front().entity_type) same_type = false;
        if (l.graph.num_vertices() != net.layers.front().graph.num_vertices())
            same_count = false;
    }
    net.kind = (same_type && same_count) ? NetworkKind::Homogeneous
                                         : NetworkKind::Heterogeneous;
    return net;
}

const Community& CommunitySet::community(CommunityId id) const {
    auto it = std::lower_bound(communities.begin(), communities.end(), id,
                               [](const Community& c, CommunityId key) { return c.id < key; });
    if (it == communities.end() || it->id != id) {
        throw MlnError(ErrorCode::UnknownCommunity,
                       "no community with id " + std::to_string(id));
    }
    return *it;
}

bool CommunitySet::has_community(CommunityId id) const {
    auto it = std::lower_bound(communities.begin(), communities.end(), id,
                               [](const Community& c, CommunityId key) { return c.id < key; });
    return it != communities.end() && it->id == id;
}

CommunitySet make_community_set(const Layer& layer,
                                std::vector<CommunityId> assignment) {
    CommunitySet cset;
    cset.layer = layer.id;
    cset.assignment = std::move(assignment);

    std::map<CommunityId, Community> by_id;
    for (VertexId v = 0; v < layer.graph.num_vertices(); ++v) {
        CommunityId c = cset.assignment[static_cast<size_t>(v)];
        auto& comm = by_id[c];
        comm.id = c;
        comm.members.push_back(v);
    }
    for (auto& [id, comm] : by_id) {
        for (VertexId u : comm.members) {
            for (VertexId w : layer.graph.neighbors(u)) {
                if (u < w && cset.assignment[static_cast<size_t>(w)] == id)
                    ++comm.internal_edges;
            }
        }
        auto n = static_cast<double>(comm.members.size());
        comm.density = (comm.members.size() <= 1)
                           ? 1.0
                           : 2.0 * static_cast<double>(comm.internal_edges) /
                                 (n * (n - 1.0));
        cset.communities.push_back(std::move(comm));
    }
    return cset;
}

InducedSubgraphView induced_subgraph(const Layer& layer,
                                     const std::vector<VertexId>& members) {
    InducedSubgraphView view;
    view.members = members;
    std::sort(view.members.begin(), view.members.end());
    view.members.erase(std::unique(view.members.begin(), view.members.end()),
                       view.members.end());
    for (VertexId v : view.members) layer.graph.check_vertex(v);
    view.vertex_count = static_cast<int>(view.members.size());
    view.degrees.assign(view.members.size(), 0);
    for (size_t i = 0; i < view.members.size(); ++i) {
        for (VertexId w : layer.graph.neighbors(view.members[i])) {
            if (std::binary_search(view.members.begin(), view.members.end(), w)) {
                ++view.degrees[i];
                if (view.members[i] < w) ++view.edge_count;
            }
        }
    }
    return view;
}

std::vector<std::pair<VertexId, VertexId>>
inter_edges_between(const MultilayerNetwork& net,
                    LayerId layer_a, const Community& comm_a,
                    LayerId layer_b, const Community& comm_b) {
    const InterLayerEdgeSet& x = net.coupling(layer_a, layer_b);
    const bool flipped = (x.layer_a != layer_a);
    const auto& left_members = flipped ? comm_b.members : comm_a.members;
    const auto& right_members = flipped ? comm_a.members : comm_b.members;

    std::vector<std::pair<VertexId, VertexId>> out;
    for (const auto& [u, v] : x.edges) {
        if (std::binary_search(left_members.begin(), left_members.end(), u) &&
            std::binary_search(right_members.begin(), right_members.end(), v)) {
            if (flipped) {
                out.emplace_back(v, u);
            } else {
                out.emplace_back(u, v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace mlncraft
