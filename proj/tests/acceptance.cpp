// Acceptance gate: one PASS/FAIL line per criterion, exit 0 iff all pass.
//
// Each criterion is self-contained and uses oracles implemented here or in
// helpers.hpp (never the code path under test). Budgets and thresholds are
// pinned as named constants next to the criterion list below. Criterion 12
// drives the installed CLI binary (passed as --cli <path>) end to end.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "helpers.hpp"
#include "json.hpp"
#include "mlncraft/analysis.hpp"
#include "mlncraft/bench.hpp"
#include "mlncraft/cbg.hpp"
#include "mlncraft/homln.hpp"
#include "mlncraft/io.hpp"
#include "mlncraft/kcommunity.hpp"
#include "mlncraft/matching.hpp"
#include "mlncraft/mln.hpp"
#include "mlncraft/synthetic.hpp"

using namespace mlncraft;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// ---- pinned budgets and thresholds ------------------------------------------
constexpr int kMatchingOracleInstances = 1000;   // criterion 1
constexpr int kMatchingOracleMaxSide = 6;        // criterion 1
constexpr double kMatchingOracleBudgetSec = 10.0;// criterion 1
constexpr int kCbgInstances = 200;               // criterion 2
constexpr int kCbgMaxVertices = 50;              // criterion 2
constexpr int kBoundInstances = 1000;            // criterion 3
constexpr int kCommutativityInstances = 200;     // criterion 4
constexpr int kScalingInstances = 200;           // criterion 5
constexpr double kScalingFactors[] = {0.5, 3.0, 10.0}; // criterion 5
constexpr int kConsistencyInstances = 100;       // criterion 6
constexpr int kBoundaryCases = 50;               // criterion 7, per direction
constexpr int kHomlnInstances = 100;             // criterion 9
constexpr double kNmiThreshold = 0.95;           // criterion 10
constexpr double kLouvainBudgetSec = 1.0;        // criterion 10
constexpr double kCompositionRatioCap = 0.5;     // criterion 11
constexpr int kEfficiencyReps = 5;               // criterion 11
constexpr double kEfficiencyBudgetSec = 120.0;   // criterion 11

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(3);
    out << x;
    return out.str();
}

// ---- criterion 1: solver == exhaustive oracle -------------------------------

Outcome matching_oracle_equivalence() {
    std::mt19937_64 rng(0xACCE5701ull);
    const double densities[] = {0.25, 0.5, 0.85};
    auto start = Clock::now();
    int mismatches = 0;
    for (int i = 0; i < kMatchingOracleInstances; ++i) {
        CommunityBipartiteGraph cbg = testutil::random_cbg(
            rng, kMatchingOracleMaxSide, kMatchingOracleMaxSide, densities[i % 3]);
        Matching fast = max_weight_matching(cbg);
        Matching slow = brute_force_matching(cbg);
        if (fast.pairs != slow.pairs || fast.total_weight != slow.total_weight)
            ++mismatches;
    }
    double elapsed = seconds_since(start);
    Outcome out;
    out.pass = mismatches == 0 && elapsed < kMatchingOracleBudgetSec;
    out.detail = std::to_string(kMatchingOracleInstances - mismatches) + "/" +
                 std::to_string(kMatchingOracleInstances) +
                 " identical pair sets in " + fmt(elapsed) + "s (budget " +
                 fmt(kMatchingOracleBudgetSec) + "s)";
    return out;
}

// ---- criterion 2: build_cbg == brute-force pair scan -------------------------

Outcome cbg_pair_scan_fidelity() {
    std::mt19937_64 rng(0xACCE5702ull);
    int mismatches = 0;
    for (int i = 0; i < kCbgInstances; ++i) {
        testutil::RandomTwoLayer inst = testutil::random_two_layer(rng, kCbgMaxVertices);
        // Oracle: scan every inter edge once, bucket by community pair.
        std::map<std::pair<CommunityId, CommunityId>, std::int64_t> counts;
        for (auto [u, v] : inst.net.coupling(0, 1).edges) {
            counts[{inst.cset_a.assignment[static_cast<size_t>(u)],
                    inst.cset_b.assignment[static_cast<size_t>(v)]}]++;
        }
        CommunityBipartiteGraph cbg = build_cbg(inst.net, inst.cset_a, inst.cset_b);
        bool ok = cbg.edges.size() == counts.size() &&
                  cbg.left_communities.size() == inst.cset_a.communities.size() &&
                  cbg.right_communities.size() == inst.cset_b.communities.size();
        for (const MetaEdge& e : cbg.edges) {
            auto it = counts.find({e.left, e.right});
            if (it == counts.end() || it->second != e.inter_edge_count) ok = false;
        }
        if (!ok) ++mismatches;
    }
    Outcome out;
    out.pass = mismatches == 0;
    out.detail = std::to_string(kCbgInstances - mismatches) + "/" +
                 std::to_string(kCbgInstances) + " meta-edge sets and counts exact";
    return out;
}

// ---- criterion 3: |matching| <= min(|C_i|, |C_j|) ---------------------------

Outcome matching_bound() {
    std::mt19937_64 rng(0xACCE5703ull);
    const double densities[] = {0.15, 0.4, 0.75};
    int violations = 0;
    for (int i = 0; i < kBoundInstances; ++i) {
        CommunityBipartiteGraph cbg = testutil::random_cbg(rng, 8, 8, densities[i % 3]);
        Matching m = max_weight_matching(cbg);
        size_t cap = std::min(cbg.left_communities.size(), cbg.right_communities.size());
        if (m.pairs.size() > cap) ++violations;
    }
    Outcome out;
    out.pass = violations == 0;
    out.detail = std::to_string(violations) + " bound violations over " +
                 std::to_string(kBoundInstances) + " instances";
    return out;
}

// ---- criterion 4: two_community commutativity --------------------------------

Outcome commutativity() {
    std::mt19937_64 rng(0xACCE5704ull);
    const WeightMetric metrics[] = {WeightMetric::EdgeCount,
                                    WeightMetric::DensityCoupling,
                                    WeightMetric::HubParticipation};
    int mismatches = 0;
    for (int i = 0; i < kCommutativityInstances; ++i) {
        testutil::RandomTwoLayer inst = testutil::random_two_layer(rng, 12);
        WeightMetric metric = metrics[i % 3];
        KCommunityResult fwd = two_community(inst.net, inst.cset_a, inst.cset_b, metric);
        KCommunityResult bwd = two_community(inst.net, inst.cset_b, inst.cset_a, metric);
        auto normalize = [](const KCommunityResult& r) {
            std::set<std::pair<CommunityId, CommunityId>> pairs;
            std::multiset<double> weights;
            for (const KCommunityElement& el : r.elements) {
                std::map<LayerId, CommunityId> by_layer(el.tuple.begin(), el.tuple.end());
                pairs.insert({by_layer.at(0), by_layer.at(1)});
                weights.insert(el.links.at(0).weight);
            }
            return std::pair(pairs, weights);
        };
        if (normalize(fwd) != normalize(bwd)) ++mismatches;
    }
    Outcome out;
    out.pass = mismatches == 0;
    out.detail = std::to_string(kCommutativityInstances - mismatches) + "/" +
                 std::to_string(kCommutativityInstances) +
                 " orientation-normalized results identical (we/wd/wh cycled)";
    return out;
}

// ---- criterion 5: scaling invariance on unique-optimum instances -------------

Outcome scaling_invariance() {
    std::mt19937_64 rng(0xACCE5705ull);
    int collected = 0, changed = 0, attempts = 0;
    while (collected < kScalingInstances && attempts < 100000) {
        ++attempts;
        CommunityBipartiteGraph cbg = testutil::random_cbg(rng, 5, 5, 0.6);
        if (cbg.edges.empty()) continue;
        if (testutil::enumerate_all_optima(cbg).size() != 1) continue;
        ++collected;
        Matching base = max_weight_matching(cbg);
        for (double c : kScalingFactors) {
            CommunityBipartiteGraph scaled = cbg; // dyadic weights: scaling is exact
            for (MetaEdge& e : scaled.edges) e.weight *= c;
            if (max_weight_matching(scaled).pairs != base.pairs) ++changed;
        }
    }
    Outcome out;
    out.pass = collected == kScalingInstances && changed == 0;
    out.detail = std::to_string(collected) + " unique-optimum instances x {0.5, 3, 10}: " +
                 std::to_string(changed) + " pair-set changes";
    return out;
}

// ---- criteria 6/7 shared construction ----------------------------------------

struct CliqueLayersInstance {
    MultilayerNetwork net;
    CommunitySet cset_a, cset_b;
};

std::vector<std::pair<VertexId, VertexId>> clique_edges(int offset, int size) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j)
            edges.emplace_back(offset + i, offset + j);
    return edges;
}

// Two layers of disjoint cliques (communities == cliques); inter edges between
// any community pair use pairwise-distinct endpoints on both sides. With
// star_coupling, each right community interacts with at most one left
// community, so the CBG is a union of left-centered stars: on that shape a
// pair that is row-maximal under both we and wd is row-maximal under
// wh = we * wd^2, so the implication holds exactly, ties included. (On
// unrestricted couplings the we&wd => wh implication is provably false for
// sum-maximizing matchings: cubing the counts can favor one heavy pair over
// two lighter disjoint ones.)
CliqueLayersInstance random_clique_instance(std::mt19937_64& rng,
                                            bool star_coupling = false) {
    std::uniform_int_distribution<int> comm_count(2, 4), comm_size(1, 4);
    auto build_side = [&](std::vector<int>& sizes, std::vector<int>& offsets,
                          std::vector<CommunityId>& assignment,
                          std::vector<std::pair<VertexId, VertexId>>& edges) {
        int blocks = comm_count(rng);
        int offset = 0;
        for (int b = 0; b < blocks; ++b) {
            int s = comm_size(rng);
            sizes.push_back(s);
            offsets.push_back(offset);
            auto block_edges = clique_edges(offset, s);
            edges.insert(edges.end(), block_edges.begin(), block_edges.end());
            for (int k = 0; k < s; ++k) assignment.push_back(b);
            offset += s;
        }
    };
    std::vector<int> sizes_a, offsets_a, sizes_b, offsets_b;
    std::vector<CommunityId> assign_a, assign_b;
    std::vector<std::pair<VertexId, VertexId>> edges_a, edges_b;
    build_side(sizes_a, offsets_a, assign_a, edges_a);
    build_side(sizes_b, offsets_b, assign_b, edges_b);

    // With star_coupling, pick one left partner per right community (or none).
    std::vector<int> partner(sizes_b.size(), -1);
    if (star_coupling) {
        std::uniform_int_distribution<int> left_pick(-1, static_cast<int>(sizes_a.size()) - 1);
        for (size_t j = 0; j < sizes_b.size(); ++j) partner[j] = left_pick(rng);
        partner[0] = 0; // keep the layers coupled
    }

    std::vector<std::pair<VertexId, VertexId>> inter;
    for (size_t i = 0; i < sizes_a.size(); ++i) {
        for (size_t j = 0; j < sizes_b.size(); ++j) {
            if (star_coupling && partner[j] != static_cast<int>(i)) continue;
            int cap = std::min(sizes_a[i], sizes_b[j]);
            std::uniform_int_distribution<int> cnt_dist(0, cap);
            int cnt = (i == 0 && j == 0) ? std::max(1, cnt_dist(rng)) : cnt_dist(rng);
            if (star_coupling) cnt = std::max(1, cnt);
            if (cnt == 0) continue;
            std::vector<int> lefts(static_cast<size_t>(sizes_a[i]));
            std::vector<int> rights(static_cast<size_t>(sizes_b[j]));
            std::iota(lefts.begin(), lefts.end(), offsets_a[i]);
            std::iota(rights.begin(), rights.end(), offsets_b[j]);
            std::shuffle(lefts.begin(), lefts.end(), rng);
            std::shuffle(rights.begin(), rights.end(), rng);
            for (int k = 0; k < cnt; ++k) inter.emplace_back(lefts[k], rights[k]);
        }
    }

    CliqueLayersInstance inst;
    inst.net = build_network(
        {testutil::make_layer(0, "A", static_cast<int>(assign_a.size()), edges_a, "a"),
         testutil::make_layer(1, "B", static_cast<int>(assign_b.size()), edges_b, "b")},
        {testutil::make_coupling(0, 1, inter)});
    inst.cset_a = load_communities(inst.net.layer(0), assign_a);
    inst.cset_b = load_communities(inst.net.layer(1), assign_b);
    return inst;
}

std::set<std::pair<CommunityId, CommunityId>>
matched_pairs(const MultilayerNetwork& net, const CommunitySet& a,
              const CommunitySet& b, WeightMetric metric) {
    CommunityBipartiteGraph cbg = build_cbg(net, a, b);
    apply_weight_metric(net, a, b, cbg, metric);
    Matching m = max_weight_matching(cbg);
    return {m.pairs.begin(), m.pairs.end()};
}

// ---- criterion 6: we & wd matched => wh matched under the preconditions ------

Outcome hub_metric_consistency() {
    std::mt19937_64 rng(0xACCE5706ull);
    int violations = 0, checked_pairs = 0;
    for (int i = 0; i < kConsistencyInstances; ++i) {
        CliqueLayersInstance inst = random_clique_instance(rng, /*star_coupling=*/true);
        auto we = matched_pairs(inst.net, inst.cset_a, inst.cset_b, WeightMetric::EdgeCount);
        auto wd = matched_pairs(inst.net, inst.cset_a, inst.cset_b, WeightMetric::DensityCoupling);
        auto wh = matched_pairs(inst.net, inst.cset_a, inst.cset_b, WeightMetric::HubParticipation);
        for (const auto& p : we) {
            if (!wd.count(p)) continue;
            ++checked_pairs;
            if (!wh.count(p)) ++violations;
        }
    }
    Outcome out;
    out.pass = violations == 0;
    out.detail = std::to_string(checked_pairs) + " we&wd-matched pairs over " +
                 std::to_string(kConsistencyInstances) +
                 " star-coupled precondition instances, " +
                 std::to_string(violations) + " missing under wh";
    return out;
}

// ---- criterion 7: weight ranges and the wd = 1 boundary -----------------------

Outcome weight_ranges_and_boundary() {
    std::mt19937_64 rng(0xACCE5707ull);
    int range_violations = 0;
    for (int i = 0; i < 100; ++i) {
        testutil::RandomTwoLayer inst = testutil::random_two_layer(rng, 20);
        for (WeightMetric metric :
             {WeightMetric::DensityCoupling, WeightMetric::HubParticipation}) {
            CommunityBipartiteGraph cbg = build_cbg(inst.net, inst.cset_a, inst.cset_b);
            apply_weight_metric(inst.net, inst.cset_a, inst.cset_b, cbg, metric);
            for (const MetaEdge& e : cbg.edges)
                if (e.weight > 1.0 || e.weight < 0.0) ++range_violations;
        }
    }

    auto wd_of = [](int a, int b,
                    const std::vector<std::pair<VertexId, VertexId>>& edges_a,
                    const std::vector<std::pair<VertexId, VertexId>>& edges_b,
                    const std::vector<std::pair<VertexId, VertexId>>& inter) {
        auto net = build_network(
            {testutil::make_layer(0, "A", a, edges_a, "a"),
             testutil::make_layer(1, "B", b, edges_b, "b")},
            {testutil::make_coupling(0, 1, inter)});
        CommunitySet ca = load_communities(net.layer(0),
                                           std::vector<CommunityId>(static_cast<size_t>(a), 0));
        CommunitySet cb = load_communities(net.layer(1),
                                           std::vector<CommunityId>(static_cast<size_t>(b), 0));
        CommunityBipartiteGraph cbg = build_cbg(net, ca, cb);
        apply_weight_metric(net, ca, cb, cbg, WeightMetric::DensityCoupling);
        return cbg.find_edge(0, 0)->weight;
    };

    int boundary_failures = 0, intra_failures = 0, inter_failures = 0;
    for (int i = 0; i < kBoundaryCases; ++i) {
        int a = 2 + (i % 4), b = 2 + ((i / 4) % 4);
        auto edges_a = clique_edges(0, a);
        auto edges_b = clique_edges(0, b);
        std::vector<std::pair<VertexId, VertexId>> inter;
        for (int u = 0; u < a; ++u)
            for (int v = 0; v < b; ++v) inter.emplace_back(u, v);

        if (wd_of(a, b, edges_a, edges_b, inter) != 1.0) ++boundary_failures;

        // Remove one intra edge (alternating sides).
        auto edges_a2 = edges_a;
        auto edges_b2 = edges_b;
        if (i % 2 == 0)
            edges_a2.erase(edges_a2.begin() + (i % static_cast<int>(edges_a2.size())));
        else
            edges_b2.erase(edges_b2.begin() + (i % static_cast<int>(edges_b2.size())));
        if (!(wd_of(a, b, edges_a2, edges_b2, inter) < 1.0)) ++intra_failures;

        // Remove one inter edge.
        auto inter2 = inter;
        inter2.erase(inter2.begin() + (i % static_cast<int>(inter2.size())));
        if (!(wd_of(a, b, edges_a, edges_b, inter2) < 1.0)) ++inter_failures;
    }

    Outcome out;
    out.pass = range_violations == 0 && boundary_failures == 0 &&
               intra_failures == 0 && inter_failures == 0;
    out.detail = std::to_string(range_violations) + " range violations; wd==1 on " +
                 std::to_string(kBoundaryCases - boundary_failures) + "/" +
                 std::to_string(kBoundaryCases) + " clique+complete cases; <1 after " +
                 std::to_string(kBoundaryCases - intra_failures) + "/" +
                 std::to_string(kBoundaryCases) + " intra and " +
                 std::to_string(kBoundaryCases - inter_failures) + "/" +
                 std::to_string(kBoundaryCases) + " inter perturbations";
    return out;
}

// ---- criterion 8: k-community fixtures ---------------------------------------

Outcome kcommunity_fixtures() {
    auto mk = [](LayerId id, const std::string& name) {
        return testutil::make_layer(id, name, 6, {{0, 1}, {2, 3}, {4, 5}},
                                    "k" + std::to_string(id));
    };
    auto csets_for = [](const MultilayerNetwork& net) {
        std::map<LayerId, CommunitySet> csets;
        for (LayerId id : {0, 1, 2})
            csets.emplace(id, load_communities(net.layer(id), {0, 0, 1, 1, 2, 2}));
        return csets;
    };
    auto tally = [](const KCommunityResult& r) {
        int total = 0, no_match = 0, inconsistent = 0;
        for (const KCommunityElement& el : r.elements) {
            if (el.status == ElementStatus::Total) ++total;
            else if (el.failure == FailureKind::NoMatch) ++no_match;
            else if (el.failure == FailureKind::Inconsistent) ++inconsistent;
        }
        return std::tuple(total, no_match, inconsistent, static_cast<int>(r.elements.size()));
    };

    auto f1 = build_network(
        {mk(0, "LA"), mk(1, "LB"), mk(2, "LC")},
        {testutil::make_coupling(0, 1, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {0, 2}, {2, 4}}),
         testutil::make_coupling(1, 2, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 4}})});
    auto csets1 = csets_for(f1);
    KCommunityResult r1 = k_community(f1, parse_ordering(f1, "LA,LB,LC"), csets1,
                                      WeightMetric::EdgeCount);
    bool f1_ok = tally(r1) == std::tuple(2, 1, 0, 3);

    auto f2 = build_network(
        {mk(0, "A"), mk(1, "B"), mk(2, "C")},
        {testutil::make_coupling(0, 1, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}}),
         testutil::make_coupling(1, 2, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}}),
         testutil::make_coupling(0, 2, {{0, 0}, {1, 1}, {4, 2}, {5, 3}})});
    auto csets2 = csets_for(f2);
    KCommunityResult r2 = k_community(f2, parse_ordering(f2, "A,B,C,A"), csets2,
                                      WeightMetric::EdgeCount);
    bool f2_ok = tally(r2) == std::tuple(1, 1, 1, 3);

    Outcome out;
    out.pass = f1_ok && f2_ok;
    out.detail = std::string("F1 ") + (f1_ok ? "2 total + 1 no_match" : "WRONG statuses") +
                 "; F2 " + (f2_ok ? "1 total + 1 inconsistent + 1 no_match" : "WRONG statuses");
    return out;
}

// ---- criterion 9: HoMLN AND-composition soundness -----------------------------

Outcome homln_composition_soundness() {
    std::mt19937_64 rng(0xACCE5709ull);
    int violations = 0;
    for (int i = 0; i < kHomlnInstances; ++i) {
        testutil::RandomTwoLayer inst =
            testutil::random_two_layer(rng, 30, /*same_entity=*/true);
        const Layer& la = inst.net.layer(0);
        const Layer& lb = inst.net.layer(1);
        const int n = la.graph.num_vertices();
        CommunitySet composed = compose_communities_and(la, inst.cset_a, lb, inst.cset_b);

        // Oracle union-find over two edge sets: AND edges, and AND edges that
        // are intra-community in both inputs (the composition's H).
        std::vector<int> root_and(static_cast<size_t>(n)), root_h(static_cast<size_t>(n));
        std::iota(root_and.begin(), root_and.end(), 0);
        std::iota(root_h.begin(), root_h.end(), 0);
        std::function<int(std::vector<int>&, int)> find = [&](std::vector<int>& p, int x) {
            while (p[static_cast<size_t>(x)] != x) {
                p[static_cast<size_t>(x)] = p[static_cast<size_t>(p[static_cast<size_t>(x)])];
                x = p[static_cast<size_t>(x)];
            }
            return x;
        };
        auto unite = [&](std::vector<int>& p, int x, int y) {
            p[static_cast<size_t>(find(p, x))] = find(p, y);
        };
        std::int64_t h_edges = 0;
        std::map<CommunityId, std::int64_t> h_edges_per_composed;
        for (auto [u, v] : la.graph.edges()) {
            if (!lb.graph.has_edge(u, v)) continue;
            unite(root_and, u, v);
            if (inst.cset_a.assignment[static_cast<size_t>(u)] !=
                inst.cset_a.assignment[static_cast<size_t>(v)])
                continue;
            if (inst.cset_b.assignment[static_cast<size_t>(u)] !=
                inst.cset_b.assignment[static_cast<size_t>(v)])
                continue;
            unite(root_h, u, v);
            ++h_edges;
        }

        bool ok = static_cast<int>(composed.assignment.size()) == n;
        // (a) composed communities == components of H (both directions).
        std::map<int, CommunityId> h_to_comm;
        std::map<CommunityId, int> comm_to_h;
        for (int v = 0; ok && v < n; ++v) {
            int r = find(root_h, v);
            CommunityId c = composed.assignment[static_cast<size_t>(v)];
            auto [it1, fresh1] = h_to_comm.emplace(r, c);
            auto [it2, fresh2] = comm_to_h.emplace(c, r);
            if ((!fresh1 && it1->second != c) || (!fresh2 && it2->second != r)) ok = false;
        }
        // (b) edge-wise: every community's internal edge count equals its
        // H-edge count (H edges are same-community in both layers by
        // construction, so containment follows).
        for (auto [u, v] : la.graph.edges()) {
            if (!lb.graph.has_edge(u, v)) continue;
            if (inst.cset_a.assignment[static_cast<size_t>(u)] !=
                    inst.cset_a.assignment[static_cast<size_t>(v)] ||
                inst.cset_b.assignment[static_cast<size_t>(u)] !=
                    inst.cset_b.assignment[static_cast<size_t>(v)])
                continue;
            h_edges_per_composed[composed.assignment[static_cast<size_t>(u)]]++;
        }
        std::int64_t reported_edges = 0;
        for (const Community& c : composed.communities) {
            reported_edges += c.internal_edges;
            auto it = h_edges_per_composed.find(c.id);
            std::int64_t expect = it == h_edges_per_composed.end() ? 0 : it->second;
            if (c.internal_edges != expect) ok = false;
            // (c) member-wise: one AND component per community.
            for (VertexId m : c.members)
                if (find(root_and, m) != find(root_and, c.members.front())) ok = false;
        }
        if (reported_edges != h_edges) ok = false;
        if (!ok) ++violations;
    }
    Outcome out;
    out.pass = violations == 0;
    out.detail = std::to_string(violations) + " violations over " +
                 std::to_string(kHomlnInstances) +
                 " random homogeneous instances (partition, edge and component checks)";
    return out;
}

// ---- criterion 10: planted-partition recovery ---------------------------------

Outcome louvain_planted_recovery() {
    SyntheticSpec spec;
    spec.layers = 1;
    spec.vertices = 100;
    spec.blocks = 4;
    spec.p_in = 0.9;
    spec.p_out = 0.01;
    SyntheticNetwork sn = generate_synthetic(spec, 20240501);
    auto start = Clock::now();
    CommunitySet cset = detect_communities(sn.net.layer(0), 20240501);
    double nmi = normalized_mutual_information(cset.assignment, sn.planted[0]);
    double elapsed = seconds_since(start);
    Outcome out;
    out.pass = nmi >= kNmiThreshold && elapsed < kLouvainBudgetSec;
    out.detail = "NMI " + fmt(nmi) + " (threshold " + fmt(kNmiThreshold) + ") in " +
                 fmt(elapsed) + "s (budget " + fmt(kLouvainBudgetSec) + "s)";
    return out;
}

// ---- criterion 11: decoupled composition beats the one-time cost --------------

Outcome composition_efficiency() {
    auto start = Clock::now();
    SyntheticSpec spec = parse_synthetic_spec("3x10000,deg20,blocks32,pmatch0.01");
    SyntheticNetwork sn = generate_synthetic(spec, 11);
    LayerOrdering ordering = parse_ordering(sn.net, "L0,L1,L2,L0");
    BenchReport report =
        bench(sn.net, ordering, WeightMetric::EdgeCount, kEfficiencyReps, 11);
    double elapsed = seconds_since(start);
    Outcome out;
    bool ratio_ok = report.composition_total_seconds <=
                    kCompositionRatioCap * report.max_layer_seconds;
    out.pass = ratio_ok && elapsed < kEfficiencyBudgetSec;
    out.detail = "composition " + fmt(report.composition_total_seconds * 1e3) +
                 "ms vs max layer " + fmt(report.max_layer_seconds * 1e3) +
                 "ms (ratio " + fmt(report.composition_to_max_layer_ratio) + ", cap " +
                 fmt(kCompositionRatioCap) + "), medians of " +
                 std::to_string(kEfficiencyReps) + "; suite " + fmt(elapsed) +
                 "s (budget " + fmt(kEfficiencyBudgetSec) + "s)";
    return out;
}

// ---- criterion 12: CLI determinism --------------------------------------------

struct CliHarness {
    std::string cli;
    fs::path dir;
    std::vector<std::string> failures;

    bool run(const std::string& tail) {
        std::string cmd = "\"" + cli + "\" " + tail + " >> \"" +
                          (dir / "cli_log.txt").string() + "\" 2>&1";
        int rc = std::system(cmd.c_str());
        if (rc != 0) failures.push_back("exit!=0: " + tail);
        return rc == 0;
    }

    std::string path(const std::string& name) const { return (dir / name).string(); }

    bool same_bytes(const std::string& a, const std::string& b) {
        bool equal = read_text_file(path(a)) == read_text_file(path(b));
        if (!equal) failures.push_back("bytes differ: " + a + " vs " + b);
        return equal;
    }
};

Outcome cli_determinism(const std::string& cli) {
    CliHarness h;
    h.cli = cli;
    h.dir = fs::path("acceptance_scratch");
    std::error_code ec;
    fs::create_directories(h.dir, ec);
    if (ec) return {false, "cannot create scratch directory: " + ec.message()};

    int comparisons = 0;
    auto twice = [&](const std::string& tail_pattern, const std::string& out1,
                     const std::string& out2) {
        auto fill = [&](const std::string& out) {
            std::string tail = tail_pattern;
            std::string::size_type at = tail.find("{out}");
            tail.replace(at, 5, "\"" + h.path(out) + "\"");
            return tail;
        };
        if (h.run(fill(out1)) && h.run(fill(out2)) && h.same_bytes(out1, out2))
            ++comparisons;
    };

    const std::string net = "\"" + h.path("net.mln") + "\"";

    // generate: .mln text and planted JSON, byte-compared across runs.
    std::string gen = "generate --spec 3x60,blocks3,pmatch0.4,pcross0.05 --seed 5";
    if (h.run(gen + " --out " + net + " --planted \"" + h.path("planted1.json") + "\"") &&
        h.run(gen + " --out \"" + h.path("net2.mln") + "\" --planted \"" +
              h.path("planted2.json") + "\"")) {
        if (h.same_bytes("net.mln", "net2.mln")) ++comparisons;
        if (h.same_bytes("planted1.json", "planted2.json")) ++comparisons;
    }

    twice("info " + net + " --out {out}", "info1.json", "info2.json");
    twice("communities " + net + " --layer L0 --seed 9 --out {out}",
          "comm1.json", "comm2.json");
    twice("hubs " + net + " --layer L1 --metric closeness --rule top_k --k 5 --out {out}",
          "hubs1.json", "hubs2.json");
    twice("two-community " + net + " --ordering L0,L1 --metric wd --seed 3 --out {out}",
          "two1.json", "two2.json");

    // kcommunity: serial twice, parallel twice; all four byte-identical.
    std::string kc = "kcommunity " + net + " --ordering L0,L1,L2,L0 --metric wh --seed 3";
    if (h.run(kc + " --out \"" + h.path("kc1.json") + "\"") &&
        h.run(kc + " --out \"" + h.path("kc2.json") + "\"") &&
        h.run(kc + " --parallel --out \"" + h.path("kcp1.json") + "\"") &&
        h.run(kc + " --parallel --out \"" + h.path("kcp2.json") + "\"")) {
        if (h.same_bytes("kc1.json", "kc2.json")) ++comparisons;
        if (h.same_bytes("kcp1.json", "kcp2.json")) ++comparisons;
        if (h.same_bytes("kc1.json", "kcp1.json")) ++comparisons;
    }

    twice("rank " + net + " --result \"" + h.path("kc1.json") + "\" --out {out}",
          "rank1.json", "rank2.json");

    // Boolean composition needs a homogeneous network; write a small one.
    write_text_file(h.path("homln.mln"),
                    "[layers]\n"
                    "F entity=person\n"
                    "W entity=person\n"
                    "[intra]\n"
                    "F a b\nF b c\nF a c\nF d e\n"
                    "W a b\nW c d\nW c e\nW d e\n");
    twice("compose \"" + h.path("homln.mln") +
              "\" --expr \"F AND W\" --communities --seed 4 --out {out}",
          "comp1.json", "comp2.json");

    // bench: timing fields are exempt (wall-clock noise); every other field
    // must match byte-for-byte after the timing keys are removed.
    std::string bench_cmd =
        "bench --spec 2x200,blocks4,pmatch0.2 --ordering L0,L1 --reps 1 --seed 3";
    if (h.run(bench_cmd + " --out \"" + h.path("bench1.json") + "\"") &&
        h.run(bench_cmd + " --out \"" + h.path("bench2.json") + "\"")) {
        auto strip = [&](const std::string& name) {
            nlohmann::json j = nlohmann::json::parse(read_text_file(h.path(name)));
            for (const char* key :
                 {"layer_seconds", "step_seconds", "composition_total_seconds",
                  "baseline_seconds", "max_layer_seconds",
                  "composition_to_max_layer_ratio"})
                j.erase(key);
            return j.dump(2);
        };
        if (strip("bench1.json") == strip("bench2.json"))
            ++comparisons;
        else
            h.failures.push_back("bench non-timing fields differ");
    }

    Outcome out;
    out.pass = h.failures.empty() && comparisons == 12;
    out.detail = std::to_string(comparisons) + "/12 byte comparisons identical";
    for (const std::string& f : h.failures) out.detail += "; " + f;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
    if (cli.empty()) {
        std::cerr << "usage: acceptance --cli <path-to-mlncraft>\n";
        return 2;
    }

    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria = {
        {"matching oracle equivalence", matching_oracle_equivalence},
        {"CBG pair-scan fidelity", cbg_pair_scan_fidelity},
        {"matching cardinality bound", matching_bound},
        {"two-community commutativity", commutativity},
        {"weight-scaling invariance", scaling_invariance},
        {"we&wd => wh matching consistency", hub_metric_consistency},
        {"weight ranges and wd boundary", weight_ranges_and_boundary},
        {"k-community fixtures", kcommunity_fixtures},
        {"HoMLN AND-composition soundness", homln_composition_soundness},
        {"planted-partition recovery", louvain_planted_recovery},
        {"decoupled composition efficiency", composition_efficiency},
        {"CLI determinism", [&] { return cli_determinism(cli); }},
    };

    bool all_pass = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        try {
            out = criteria[i].check();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        all_pass = all_pass && out.pass;
        std::cout << "[" << (i + 1 < 10 ? " " : "") << i + 1 << "] "
                  << (out.pass ? "PASS" : "FAIL") << "  " << criteria[i].name << ": "
                  << out.detail << "\n";
        std::cout.flush();
    }
    std::cout << (all_pass ? "ACCEPTANCE: all 12 criteria passed"
                           : "ACCEPTANCE: FAILURES PRESENT")
              << "\n";
    return all_pass ? 0 : 1;
}
