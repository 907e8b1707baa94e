#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mlncraft {

using VertexId = int;

// Undirected simple graph over dense vertex ids 0..n-1.
// Neighbor lists are kept sorted; parallel edges are collapsed.
class Graph {
public:
    Graph() = default;
    explicit Graph(int num_vertices) : adj_(static_cast<size_t>(num_vertices)) {}

    int num_vertices() const { return static_cast<int>(adj_.size()); }
    std::int64_t num_edges() const { return num_edges_; }

    // Throws SelfLoop / DanglingEndpoint. Adding an existing edge is a no-op.
    void add_edge(VertexId u, VertexId v);

    bool has_edge(VertexId u, VertexId v) const;
    int degree(VertexId v) const;
    const std::vector<VertexId>& neighbors(VertexId v) const;

    // All edges as (u, v) with u < v, sorted ascending.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    double average_degree() const;

    void check_vertex(VertexId v) const; // throws UnknownVertex

private:
    std::vector<std::vector<VertexId>> adj_;
    std::int64_t num_edges_ = 0;
};

} // namespace mlncraft
