#include "mlncraft/analysis.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <random>

#include "mlncraft/errors.hpp"

namespace mlncraft {

namespace {

// Working graph for the aggregation phases: weighted adjacency, self-loops
// stored once with their raw weight (they count twice toward strength).
struct WeightedGraph {
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<double> self_loop;
    std::vector<double> strength; // k_u = sum of incident weights + 2*self
    double total_strength = 0.0;  // 2m

    int size() const { return static_cast<int>(adj.size()); }

    void finalize() {
        strength.assign(adj.size(), 0.0);
        for (int u = 0; u < size(); ++u) {
            double k = 2.0 * self_loop[static_cast<size_t>(u)];
            for (const auto& [v, w] : adj[static_cast<size_t>(u)]) k += w;
            strength[static_cast<size_t>(u)] = k;
        }
        total_strength = std::accumulate(strength.begin(), strength.end(), 0.0);
    }
};

// One Louvain level: local moves until quiescence. Returns true when at
// least one node changed community; fills `comm` with the (unnormalized)
// community of each node.
bool local_move_phase(const WeightedGraph& g, double resolution,
                      const std::vector<int>& visit_order,
                      std::vector<int>& comm) {
    const int n = g.size();
    comm.resize(static_cast<size_t>(n));
    std::iota(comm.begin(), comm.end(), 0);
    std::vector<double> tot(g.strength);
    const double m2 = g.total_strength;
    if (m2 <= 0.0) return false;

    std::vector<double> weight_to(static_cast<size_t>(n), 0.0);
    bool any_move = false;
    bool moved = true;
    int guard = 0;
    while (moved && guard++ < 1000) {
        moved = false;
        for (int u : visit_order) {
            const int old_comm = comm[static_cast<size_t>(u)];
            const double ku = g.strength[static_cast<size_t>(u)];

            std::vector<int> neighbor_comms;
            neighbor_comms.push_back(old_comm);
            for (const auto& [v, w] : g.adj[static_cast<size_t>(u)]) {
                if (v == u) continue;
                int c = comm[static_cast<size_t>(v)];
                if (weight_to[static_cast<size_t>(c)] == 0.0 && c != old_comm)
                    neighbor_comms.push_back(c);
                weight_to[static_cast<size_t>(c)] += w;
            }
            std::sort(neighbor_comms.begin(), neighbor_comms.end());
            neighbor_comms.erase(
                std::unique(neighbor_comms.begin(), neighbor_comms.end()),
                neighbor_comms.end());

            tot[static_cast<size_t>(old_comm)] -= ku;
            int best_comm = old_comm;
            double best_gain =
                weight_to[static_cast<size_t>(old_comm)] -
                resolution * ku * tot[static_cast<size_t>(old_comm)] / m2;
            for (int c : neighbor_comms) {
                if (c == old_comm) continue;
                double gain = weight_to[static_cast<size_t>(c)] -
                              resolution * ku * tot[static_cast<size_t>(c)] / m2;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_comm = c;
                }
            }
            tot[static_cast<size_t>(best_comm)] += ku;
            if (best_comm != old_comm) {
                comm[static_cast<size_t>(u)] = best_comm;
                moved = true;
                any_move = true;
            }
            for (int c : neighbor_comms) weight_to[static_cast<size_t>(c)] = 0.0;
        }
    }
    return any_move;
}

// Renumber community labels to 0..k-1 by first appearance over ascending
// node id, so every phase (and the final output) is order-canonical.
int renumber(std::vector<int>& comm) {
    std::map<int, int> remap;
    for (int& c : comm) {
        auto [it, inserted] = remap.emplace(c, static_cast<int>(remap.size()));
        c = it->second;
    }
    return static_cast<int>(remap.size());
}

WeightedGraph aggregate(const WeightedGraph& g, const std::vector<int>& comm,
                        int num_comms) {
    WeightedGraph out;
    out.adj.assign(static_cast<size_t>(num_comms), {});
    out.self_loop.assign(static_cast<size_t>(num_comms), 0.0);
    std::vector<std::map<int, double>> acc(static_cast<size_t>(num_comms));
    for (int u = 0; u < g.size(); ++u) {
        int cu = comm[static_cast<size_t>(u)];
        out.self_loop[static_cast<size_t>(cu)] += g.self_loop[static_cast<size_t>(u)];
        for (const auto& [v, w] : g.adj[static_cast<size_t>(u)]) {
            if (u > v) continue; // undirected: visit each pair once
            int cv = comm[static_cast<size_t>(v)];
            if (cu == cv) {
                out.self_loop[static_cast<size_t>(cu)] += w;
            } else {
                acc[static_cast<size_t>(std::min(cu, cv))][std::max(cu, cv)] += w;
            }
        }
    }
    for (int a = 0; a < num_comms; ++a) {
        for (const auto& [b, w] : acc[static_cast<size_t>(a)]) {
            out.adj[static_cast<size_t>(a)].emplace_back(b, w);
            out.adj[static_cast<size_t>(b)].emplace_back(a, w);
        }
    }
    out.finalize();
    return out;
}

} // namespace

CommunitySet detect_communities(const Layer& layer, std::uint64_t seed,
                                double resolution) {
    const int n = layer.graph.num_vertices();
    std::vector<CommunityId> assignment(static_cast<size_t>(n));
    std::iota(assignment.begin(), assignment.end(), 0);
    if (n == 0) return make_community_set(layer, {});

    WeightedGraph g;
    g.adj.assign(static_cast<size_t>(n), {});
    g.self_loop.assign(static_cast<size_t>(n), 0.0);
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v : layer.graph.neighbors(u)) {
            g.adj[static_cast<size_t>(u)].emplace_back(v, 1.0);
        }
    }
    g.finalize();

    std::mt19937_64 rng(seed);
    while (true) {
        std::vector<int> order(static_cast<size_t>(g.size()));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);

        std::vector<int> comm;
        if (!local_move_phase(g, resolution, order, comm)) break;
        int num_comms = renumber(comm);
        for (CommunityId& a : assignment) {
            a = comm[static_cast<size_t>(a)];
        }
        if (num_comms == g.size()) break;
        g = aggregate(g, comm, num_comms);
    }

    renumber(assignment);
    return make_community_set(layer, std::move(assignment));
}

double modularity(const Layer& layer, const std::vector<CommunityId>& assignment,
                  double resolution) {
    const int n = layer.graph.num_vertices();
    const double m = static_cast<double>(layer.graph.num_edges());
    if (m <= 0.0) return 0.0;
    std::map<CommunityId, double> internal, tot;
    for (VertexId u = 0; u < n; ++u) {
        CommunityId cu = assignment[static_cast<size_t>(u)];
        tot[cu] += layer.graph.degree(u);
        for (VertexId v : layer.graph.neighbors(u)) {
            if (u < v && assignment[static_cast<size_t>(v)] == cu) internal[cu] += 1.0;
        }
    }
    double q = 0.0;
    for (const auto& [c, deg_sum] : tot) {
        double in_c = internal.count(c) ? internal[c] : 0.0;
        q += in_c / m - resolution * (deg_sum / (2.0 * m)) * (deg_sum / (2.0 * m));
    }
    return q;
}

CommunitySet load_communities(const Layer& layer,
                              const std::vector<CommunityId>& assignment) {
    if (static_cast<int>(assignment.size()) != layer.graph.num_vertices()) {
        throw MlnError(ErrorCode::MissingVertexAssignment,
                       "assignment covers " + std::to_string(assignment.size()) +
                           " vertices, layer '" + layer.name + "' has " +
                           std::to_string(layer.graph.num_vertices()));
    }
    for (size_t v = 0; v < assignment.size(); ++v) {
        if (assignment[v] < 0) {
            throw MlnError(ErrorCode::MissingVertexAssignment,
                           "vertex " + std::to_string(v) +
                               " has no community (negative id)");
        }
    }
    return make_community_set(layer, assignment);
}

CentralityMetric parse_centrality_metric(const std::string& name) {
    if (name == "degree") return CentralityMetric::Degree;
    if (name == "closeness") return CentralityMetric::Closeness;
    throw MlnError(ErrorCode::ParseError, "unknown centrality metric '" + name + "'");
}

const char* centrality_metric_name(CentralityMetric metric) {
    return metric == CentralityMetric::Degree ? "degree" : "closeness";
}

std::vector<double> centrality(const Layer& layer, CentralityMetric metric) {
    const int n = layer.graph.num_vertices();
    std::vector<double> scores(static_cast<size_t>(n), 0.0);
    if (metric == CentralityMetric::Degree) {
        for (VertexId v = 0; v < n; ++v) scores[static_cast<size_t>(v)] = layer.graph.degree(v);
        return scores;
    }
    // Wasserman-Faust closeness via BFS from every vertex.
    std::vector<int> dist(static_cast<size_t>(n));
    for (VertexId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<size_t>(s)] = 0;
        std::queue<VertexId> q;
        q.push(s);
        std::int64_t dist_sum = 0;
        int reachable = 1;
        while (!q.empty()) {
            VertexId u = q.front();
            q.pop();
            for (VertexId v : layer.graph.neighbors(u)) {
                if (dist[static_cast<size_t>(v)] < 0) {
                    dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
                    dist_sum += dist[static_cast<size_t>(v)];
                    ++reachable;
                    q.push(v);
                }
            }
        }
        if (reachable > 1) {
            double r = static_cast<double>(reachable);
            scores[static_cast<size_t>(s)] =
                ((r - 1.0) / (n - 1.0)) * ((r - 1.0) / static_cast<double>(dist_sum));
        }
    }
    return scores;
}

HubSet layer_hubs(const Layer& layer, CentralityMetric metric, HubRule rule, int k) {
    const int n = layer.graph.num_vertices();
    HubSet out;
    out.layer = layer.id;
    out.metric = metric;
    out.rule = rule;
    out.k = (rule == HubRule::TopK) ? k : 0;

    std::vector<double> scores = centrality(layer, metric);
    if (rule == HubRule::AboveMean) {
        if (n == 0) return out;
        double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
        for (VertexId v = 0; v < n; ++v) {
            if (scores[static_cast<size_t>(v)] >= mean) out.hubs.push_back(v);
        }
        return out;
    }
    if (k < 0 || k > n) {
        throw MlnError(ErrorCode::KExceedsVertexCount,
                       "k = " + std::to_string(k) + " outside [0, " +
                           std::to_string(n) + "]");
    }
    std::vector<VertexId> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        if (scores[static_cast<size_t>(a)] != scores[static_cast<size_t>(b)])
            return scores[static_cast<size_t>(a)] > scores[static_cast<size_t>(b)];
        return a < b;
    });
    out.hubs.assign(order.begin(), order.begin() + k);
    std::sort(out.hubs.begin(), out.hubs.end());
    return out;
}

std::vector<VertexId> community_hubs(const Layer& layer, const Community& comm) {
    if (comm.members.size() == 1) return comm.members;
    InducedSubgraphView view = induced_subgraph(layer, comm.members);
    double avg = view.vertex_count == 0
                     ? 0.0
                     : 2.0 * static_cast<double>(view.edge_count) / view.vertex_count;
    std::vector<VertexId> hubs;
    for (size_t i = 0; i < view.members.size(); ++i) {
        if (static_cast<double>(view.degrees[i]) >= avg) hubs.push_back(view.members[i]);
    }
    return hubs;
}

std::vector<std::vector<VertexId>> all_community_hubs(const Layer& layer,
                                                      const CommunitySet& cset) {
    std::vector<std::vector<VertexId>> out;
    out.reserve(cset.communities.size());
    for (const Community& c : cset.communities) out.push_back(community_hubs(layer, c));
    return out;
}

} // namespace mlncraft
