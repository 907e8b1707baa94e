#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mlncraft/graph.hpp"

namespace mlncraft {

using LayerId = int;
using CommunityId = int;

struct Layer {
    LayerId id = -1;
    std::string name;
    std::string entity_type; // layers of a homogeneous network all share one
    Graph graph;
    // Optional human-readable vertex labels; never consulted by algorithms.
    std::vector<std::string> labels;
};

// Undirected bipartite edge set between two layers, stored with
// layer_a < layer_b. Edges are (vertex in layer_a, vertex in layer_b),
// deduplicated and sorted.
struct InterLayerEdgeSet {
    LayerId layer_a = -1;
    LayerId layer_b = -1;
    std::vector<std::pair<VertexId, VertexId>> edges;
};

enum class NetworkKind { Homogeneous, Heterogeneous };

struct MultilayerNetwork {
    std::vector<Layer> layers;
    std::vector<InterLayerEdgeSet> couplings;
    NetworkKind kind = NetworkKind::Homogeneous;

    const Layer& layer(LayerId id) const;
    LayerId layer_id_by_name(const std::string& name) const; // throws UnknownLayer
    bool has_coupling(LayerId a, LayerId b) const;
    // Throws NoCouplingBetweenLayers.
    const InterLayerEdgeSet& coupling(LayerId a, LayerId b) const;
};

// Validates and assembles a network: unique layer names, endpoints in range,
// no self loops (graphs reject those at insertion already), canonical
// coupling orientation, kind derivation.
MultilayerNetwork build_network(std::vector<Layer> layers,
                                std::vector<InterLayerEdgeSet> couplings);

struct Community {
    CommunityId id = -1;
    std::vector<VertexId> members; // sorted ascending
    std::int64_t internal_edges = 0;
    double density = 0.0; // 2E/(V(V-1)); defined as 1.0 for singletons
};

struct CommunitySet {
    LayerId layer = -1;
    std::vector<Community> communities;     // sorted by id ascending
    std::vector<CommunityId> assignment;    // vertex id -> community id

    const Community& community(CommunityId id) const; // throws UnknownCommunity
    bool has_community(CommunityId id) const;
};

// Recomputes per-community stats (internal edges, density) for an assignment
// over `layer`. Community ids are taken from the assignment verbatim.
CommunitySet make_community_set(const Layer& layer,
                                std::vector<CommunityId> assignment);

struct InducedSubgraphView {
    int vertex_count = 0;
    std::int64_t edge_count = 0;
    std::vector<VertexId> members;  // sorted ascending
    std::vector<int> degrees;       // aligned with members; induced degrees
};

// Throws UnknownVertex for out-of-range members.
InducedSubgraphView induced_subgraph(const Layer& layer,
                                     const std::vector<VertexId>& members);

// Inter-layer edges whose endpoints fall in the two communities, oriented as
// (vertex in comm_a's layer, vertex in comm_b's layer).
// Throws NoCouplingBetweenLayers if the two layers are not coupled.
std::vector<std::pair<VertexId, VertexId>>
inter_edges_between(const MultilayerNetwork& net,
                    LayerId layer_a, const Community& comm_a,
                    LayerId layer_b, const Community& comm_b);

} // namespace mlncraft
