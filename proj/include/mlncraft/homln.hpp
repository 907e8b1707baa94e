#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mlncraft/mln.hpp"

namespace mlncraft {

// Boolean expression over layer names:
//   expr := term | expr ("AND"|"OR") term
//   term := "NOT"? layerName | "(" expr ")"
// AND/OR associate left at equal precedence; NOT binds to one term.
struct LayerExpr {
    enum class Op { Layer, And, Or, Not };
    Op op = Op::Layer;
    std::string layer_name;               // Op::Layer
    std::unique_ptr<LayerExpr> lhs, rhs;  // And/Or use both, Not uses lhs

    std::string to_string() const;
};

// Throws ParseError on malformed input. Layer names are validated against the
// network later, at evaluation time.
LayerExpr parse_layer_expr(const std::string& text);

// Evaluates the edge-set algebra over the common vertex universe of a
// homogeneous network. NOT complements within the universe and refuses
// universes above `complement_cap` vertices (ComplementTooLarge). Throws
// HeterogeneousNetwork, UnknownLayer.
Layer compose_layers(const MultilayerNetwork& net, const LayerExpr& expr,
                     const std::string& derived_name = "derived",
                     int complement_cap = 20000);

// AND-composition of two community structures: build graph H on the common
// universe with an edge (u,v) iff (u,v) is an intra-community edge under BOTH
// inputs (edge present in that layer AND endpoints share a community there);
// the result's communities are H's connected components, singletons included,
// with internal-edge counts and densities measured over H itself.
// layer_a/layer_b supply the edge sets the two community sets partition.
// Throws VertexUniverseMismatch.
CommunitySet compose_communities_and(const Layer& layer_a, const CommunitySet& cset_a,
                                     const Layer& layer_b, const CommunitySet& cset_b);

enum class HubSetOp { And, Or, Minus };

// Plain set algebra over hub vertex sets of one vertex universe.
std::vector<VertexId> compose_hub_sets(const std::vector<VertexId>& a,
                                       const std::vector<VertexId>& b,
                                       HubSetOp op);

// Layers of a homogeneous network ranked by average degree 2E/V, descending;
// ties by ascending layer id. Throws HeterogeneousNetwork.
std::vector<std::pair<LayerId, double>>
rank_layers_by_avg_degree(const MultilayerNetwork& net);

} // namespace mlncraft
