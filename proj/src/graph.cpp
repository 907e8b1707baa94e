#include "mlncraft/graph.hpp"

#include <algorithm>

#include "mlncraft/errors.hpp"

namespace mlncraft {

void Graph::check_vertex(VertexId v) const {
    if (v < 0 || v >= num_vertices()) {
        throw MlnError(ErrorCode::UnknownVertex,
                       "vertex " + std::to_string(v) + " out of range [0, " +
                           std::to_string(num_vertices()) + ")");
    }
}

void Graph::add_edge(VertexId u, VertexId v) {
    if (u == v) {
        throw MlnError(ErrorCode::SelfLoop,
                       "self loop at vertex " + std::to_string(u));
    }
    if (u < 0 || u >= num_vertices() || v < 0 || v >= num_vertices()) {
        throw MlnError(ErrorCode::DanglingEndpoint,
                       "edge (" + std::to_string(u) + ", " + std::to_string(v) +
                           ") leaves the vertex range [0, " +
                           std::to_string(num_vertices()) + ")");
    }
    auto& nu = adj_[static_cast<size_t>(u)];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v) return; // duplicate edge collapses
    nu.insert(it, v);
    auto& nv = adj_[static_cast<size_t>(v)];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++num_edges_;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& nu = adj_[static_cast<size_t>(u)];
    return std::binary_search(nu.begin(), nu.end(), v);
}

int Graph::degree(VertexId v) const {
    check_vertex(v);
    return static_cast<int>(adj_[static_cast<size_t>(v)].size());
}

const std::vector<VertexId>& Graph::neighbors(VertexId v) const {
    check_vertex(v);
    return adj_[static_cast<size_t>(v)];
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(static_cast<size_t>(num_edges_));
    for (VertexId u = 0; u < num_vertices(); ++u) {
        for (VertexId v : adj_[static_cast<size_t>(u)]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

double Graph::average_degree() const {
    if (num_vertices() == 0) return 0.0;
    return 2.0 * static_cast<double>(num_edges_) / num_vertices();
}

} // namespace mlncraft
