#pragma once

// Shared test scaffolding: compact constructors for networks and CBGs plus an
// exhaustive matching enumerator kept independent of the library's own
// oracle, so solver bugs cannot hide behind shared code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mlncraft/analysis.hpp"
#include "mlncraft/cbg.hpp"
#include "mlncraft/matching.hpp"
#include "mlncraft/mln.hpp"

namespace testutil {

using namespace mlncraft;

inline Layer make_layer(LayerId id, const std::string& name, int n,
                        const std::vector<std::pair<VertexId, VertexId>>& edges,
                        const std::string& entity = "thing") {
    Layer layer;
    layer.id = id;
    layer.name = name;
    layer.entity_type = entity;
    layer.graph = Graph(n);
    for (auto [u, v] : edges) layer.graph.add_edge(u, v);
    return layer;
}

inline InterLayerEdgeSet make_coupling(LayerId a, LayerId b,
                                       std::vector<std::pair<VertexId, VertexId>> edges) {
    InterLayerEdgeSet set;
    set.layer_a = a;
    set.layer_b = b;
    set.edges = std::move(edges);
    return set;
}

// A CBG assembled directly from (left, right, weight) triples; metric_applied
// is stamped so the matchers accept it. Inter-edge counts are set to 1.
inline CommunityBipartiteGraph
weighted_cbg(const std::vector<CommunityId>& lefts, const std::vector<CommunityId>& rights,
             const std::vector<std::tuple<CommunityId, CommunityId, double>>& edges) {
    CommunityBipartiteGraph cbg;
    cbg.left_layer = 0;
    cbg.right_layer = 1;
    cbg.left_communities = lefts;
    cbg.right_communities = rights;
    for (auto [l, r, w] : edges) {
        MetaEdge e;
        e.left = l;
        e.right = r;
        e.inter_edge_count = 1;
        e.weight = w;
        cbg.edges.push_back(e);
    }
    std::sort(cbg.edges.begin(), cbg.edges.end(), [](const MetaEdge& a, const MetaEdge& b) {
        return std::pair(a.left, a.right) < std::pair(b.left, b.right);
    });
    cbg.metric_applied = WeightMetric::EdgeCount;
    return cbg;
}

// ---- independent exhaustive matcher -----------------------------------------

struct EnumeratedMatching {
    std::vector<std::pair<CommunityId, CommunityId>> pairs; // sorted by left id
    double total = 0.0;
};

// Candidate totals are accumulated over pairs in ascending-left order, the
// same summation order the library pins, so double comparisons agree.
inline double total_in_left_order(std::vector<std::pair<CommunityId, CommunityId>> pairs,
                                  const std::map<std::pair<CommunityId, CommunityId>, double>& w) {
    std::sort(pairs.begin(), pairs.end());
    double s = 0.0;
    for (const auto& p : pairs) s += w.at(p);
    return s;
}

// Every matching of the CBG, reduced to the canonical best: max total, then
// max cardinality, then lexicographically smallest sorted pair list.
inline EnumeratedMatching enumerate_best_matching(const CommunityBipartiteGraph& cbg) {
    std::map<std::pair<CommunityId, CommunityId>, double> w;
    std::map<CommunityId, std::vector<CommunityId>> options;
    for (const MetaEdge& e : cbg.edges) {
        w[{e.left, e.right}] = e.weight;
        options[e.left].push_back(e.right);
    }
    std::vector<CommunityId> lefts;
    for (const auto& [l, rs] : options) lefts.push_back(l);

    EnumeratedMatching best;
    bool have_best = false;
    std::vector<std::pair<CommunityId, CommunityId>> current;
    std::set<CommunityId> used_rights;

    auto consider = [&] {
        std::vector<std::pair<CommunityId, CommunityId>> sorted = current;
        std::sort(sorted.begin(), sorted.end());
        double total = 0.0;
        for (const auto& p : sorted) total += w.at(p);
        if (!have_best || total > best.total ||
            (total == best.total && sorted.size() > best.pairs.size()) ||
            (total == best.total && sorted.size() == best.pairs.size() &&
             sorted < best.pairs)) {
            best.pairs = std::move(sorted);
            best.total = total;
            have_best = true;
        }
    };

    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == lefts.size()) {
            consider();
            return;
        }
        rec(i + 1); // leave lefts[i] unmatched
        for (CommunityId r : options[lefts[i]]) {
            if (used_rights.count(r)) continue;
            used_rights.insert(r);
            current.emplace_back(lefts[i], r);
            rec(i + 1);
            current.pop_back();
            used_rights.erase(r);
        }
    };
    rec(0);
    if (!have_best) best.total = 0.0;
    return best;
}

// All optimal pair lists (max total, then max cardinality). Used to filter
// for unique-optimum instances.
inline std::vector<std::vector<std::pair<CommunityId, CommunityId>>>
enumerate_all_optima(const CommunityBipartiteGraph& cbg) {
    std::map<std::pair<CommunityId, CommunityId>, double> w;
    std::map<CommunityId, std::vector<CommunityId>> options;
    for (const MetaEdge& e : cbg.edges) {
        w[{e.left, e.right}] = e.weight;
        options[e.left].push_back(e.right);
    }
    std::vector<CommunityId> lefts;
    for (const auto& [l, rs] : options) lefts.push_back(l);

    std::vector<std::vector<std::pair<CommunityId, CommunityId>>> optima;
    double best_total = 0.0;
    size_t best_card = 0;
    bool have = false;

    std::vector<std::pair<CommunityId, CommunityId>> current;
    std::set<CommunityId> used_rights;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == lefts.size()) {
            std::vector<std::pair<CommunityId, CommunityId>> sorted = current;
            std::sort(sorted.begin(), sorted.end());
            double total = 0.0;
            for (const auto& p : sorted) total += w.at(p);
            if (!have || total > best_total ||
                (total == best_total && sorted.size() > best_card)) {
                best_total = total;
                best_card = sorted.size();
                optima.clear();
                optima.push_back(std::move(sorted));
                have = true;
            } else if (total == best_total && sorted.size() == best_card) {
                optima.push_back(std::move(sorted));
            }
            return;
        }
        rec(i + 1);
        for (CommunityId r : options[lefts[i]]) {
            if (used_rights.count(r)) continue;
            used_rights.insert(r);
            current.emplace_back(lefts[i], r);
            rec(i + 1);
            current.pop_back();
            used_rights.erase(r);
        }
    };
    rec(0);
    std::sort(optima.begin(), optima.end());
    optima.erase(std::unique(optima.begin(), optima.end()), optima.end());
    return optima;
}

// ---- random instances --------------------------------------------------------

// Random CBG with dyadic weights k/256, k in [1, 2048]: every candidate total
// is exact in IEEE doubles, so solver and enumerator comparisons are exact.
inline CommunityBipartiteGraph random_cbg(std::mt19937_64& rng, int max_left, int max_right,
                                          double edge_density = 0.5) {
    std::uniform_int_distribution<int> left_dist(1, max_left), right_dist(1, max_right);
    std::uniform_int_distribution<int> k_dist(1, 2048);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int nl = left_dist(rng), nr = right_dist(rng);
    std::vector<CommunityId> lefts(static_cast<size_t>(nl)), rights(static_cast<size_t>(nr));
    for (int i = 0; i < nl; ++i) lefts[static_cast<size_t>(i)] = i;
    for (int i = 0; i < nr; ++i) rights[static_cast<size_t>(i)] = i;
    std::vector<std::tuple<CommunityId, CommunityId, double>> edges;
    for (int l = 0; l < nl; ++l)
        for (int r = 0; r < nr; ++r)
            if (u(rng) < edge_density)
                edges.emplace_back(l, r, static_cast<double>(k_dist(rng)) / 256.0);
    return weighted_cbg(lefts, rights, edges);
}

// Random 2-layer network with given sizes; every vertex gets a community from
// a random assignment with `comms` communities per layer.
struct RandomTwoLayer {
    MultilayerNetwork net;
    CommunitySet cset_a, cset_b;
};

inline RandomTwoLayer random_two_layer(std::mt19937_64& rng, int max_vertices,
                                       bool same_entity = false) {
    std::uniform_int_distribution<int> n_dist(2, max_vertices);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int na = n_dist(rng), nb = same_entity ? na : n_dist(rng);

    auto random_edges = [&](int n, double p) {
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (u(rng) < p) edges.emplace_back(i, j);
        return edges;
    };
    std::vector<Layer> layers;
    layers.push_back(make_layer(0, "A", na, random_edges(na, 0.3),
                                same_entity ? "thing" : "alpha"));
    layers.push_back(make_layer(1, "B", nb, random_edges(nb, 0.3),
                                same_entity ? "thing" : "beta"));

    std::vector<std::pair<VertexId, VertexId>> inter;
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            if (u(rng) < 0.15) inter.emplace_back(i, j);
    // Guarantee at least one inter edge so the layers are coupled.
    if (inter.empty()) inter.emplace_back(0, 0);

    RandomTwoLayer out;
    out.net = build_network(std::move(layers), {make_coupling(0, 1, std::move(inter))});

    auto random_assignment = [&](int n) {
        std::uniform_int_distribution<int> c_dist(1, std::max(1, n / 2));
        int comms = c_dist(rng);
        std::vector<CommunityId> assignment(static_cast<size_t>(n));
        std::uniform_int_distribution<int> pick(0, comms - 1);
        for (int v = 0; v < n; ++v) assignment[static_cast<size_t>(v)] = pick(rng);
        return assignment;
    };
    out.cset_a = load_communities(out.net.layer(0), random_assignment(na));
    out.cset_b = load_communities(out.net.layer(1), random_assignment(nb));
    return out;
}

} // namespace testutil
