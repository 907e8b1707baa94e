#include "mlncraft/matching.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

#include "mlncraft/errors.hpp"

namespace mlncraft {

// The canonical matching is the one that maximizes total weight, then
// cardinality, then takes the lexicographically smallest pair list by
// (left, right). Candidate totals are always summed over pairs in ascending
// left order, so ties compare identically everywhere (solver, probes,
// oracle): a sum of the same weights in the same order is the same double.

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Instance {
    int nl = 0, nr = 0;
    // Per left index: (right index, weight), ascending right. Indices map to
    // community ids through the cbg's sorted id lists.
    std::vector<std::vector<std::pair<int, double>>> edges;
};

Instance instance_from(const CommunityBipartiteGraph& cbg) {
    Instance inst;
    inst.nl = static_cast<int>(cbg.left_communities.size());
    inst.nr = static_cast<int>(cbg.right_communities.size());
    inst.edges.assign(static_cast<size_t>(inst.nl), {});
    auto left_index = [&](CommunityId id) {
        return static_cast<int>(std::lower_bound(cbg.left_communities.begin(),
                                                 cbg.left_communities.end(), id) -
                                cbg.left_communities.begin());
    };
    auto right_index = [&](CommunityId id) {
        return static_cast<int>(std::lower_bound(cbg.right_communities.begin(),
                                                 cbg.right_communities.end(), id) -
                                cbg.right_communities.begin());
    };
    for (const MetaEdge& e : cbg.edges) {
        inst.edges[static_cast<size_t>(left_index(e.left))].emplace_back(
            right_index(e.right), e.weight);
    }
    for (auto& row : inst.edges) std::sort(row.begin(), row.end());
    return inst;
}

double canonical_total(const Instance& inst, const std::vector<int>& match_l) {
    double s = 0.0;
    for (int l = 0; l < inst.nl; ++l) {
        int r = match_l[static_cast<size_t>(l)];
        if (r < 0) continue;
        for (const auto& [r2, w] : inst.edges[static_cast<size_t>(l)]) {
            if (r2 == r) {
                s += w;
                break;
            }
        }
    }
    return s;
}

struct SspResult {
    std::vector<int> match_l;
    int cardinality = 0;
};

// Successive max-gain augmenting paths with dual potentials (a sparse
// Hungarian). After k augmentations the matching is maximum-weight among all
// cardinality-k matchings. target_card < 0: augment while the canonical
// total does not decrease (yields max weight, then max cardinality on the
// weight plateau). target_card >= 0: augment to exactly that cardinality,
// accepting weight-decreasing paths, or stop early when none exists.
SspResult ssp_solve(const Instance& inst, const std::vector<char>& alive_l,
                    const std::vector<char>& alive_r, int target_card) {
    const int nl = inst.nl, nr = inst.nr;
    SspResult res;
    res.match_l.assign(static_cast<size_t>(nl), -1);
    std::vector<int> match_r(static_cast<size_t>(nr), -1);
    std::vector<double> u(static_cast<size_t>(nl), 0.0);
    std::vector<double> v(static_cast<size_t>(nr), 0.0);
    for (int l = 0; l < nl; ++l) {
        if (!alive_l[static_cast<size_t>(l)]) continue;
        double best = 0.0;
        for (const auto& [r, w] : inst.edges[static_cast<size_t>(l)]) {
            if (alive_r[static_cast<size_t>(r)]) best = std::max(best, w);
        }
        u[static_cast<size_t>(l)] = best;
    }

    double total = 0.0;
    std::vector<double> dist(static_cast<size_t>(nr));
    std::vector<char> settled(static_cast<size_t>(nr));
    std::vector<int> parent_l(static_cast<size_t>(nr));
    std::vector<int> parent_prev_r(static_cast<size_t>(nr));
    std::vector<double> tree_label(static_cast<size_t>(nl));
    std::vector<char> in_tree(static_cast<size_t>(nl));

    std::vector<int> sources;
    while (target_card < 0 || res.cardinality < target_card) {
        // Sources: alive free lefts with at least one alive edge.
        sources.clear();
        double umax = -kInf;
        for (int l = 0; l < nl; ++l) {
            if (!alive_l[static_cast<size_t>(l)] ||
                res.match_l[static_cast<size_t>(l)] >= 0)
                continue;
            bool has_edge = false;
            for (const auto& [r, w] : inst.edges[static_cast<size_t>(l)]) {
                (void)w;
                if (alive_r[static_cast<size_t>(r)]) { has_edge = true; break; }
            }
            if (has_edge) {
                sources.push_back(l);
                umax = std::max(umax, u[static_cast<size_t>(l)]);
            }
        }
        if (sources.empty()) break;

        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(settled.begin(), settled.end(), char(0));
        std::fill(parent_l.begin(), parent_l.end(), -1);
        std::fill(parent_prev_r.begin(), parent_prev_r.end(), -1);
        std::fill(in_tree.begin(), in_tree.end(), char(0));

        for (int l : sources) {
            double off = umax - u[static_cast<size_t>(l)];
            for (const auto& [r, w] : inst.edges[static_cast<size_t>(l)]) {
                if (!alive_r[static_cast<size_t>(r)]) continue;
                double slack = std::max(
                    0.0, u[static_cast<size_t>(l)] + v[static_cast<size_t>(r)] - w);
                if (off + slack < dist[static_cast<size_t>(r)]) {
                    dist[static_cast<size_t>(r)] = off + slack;
                    parent_l[static_cast<size_t>(r)] = l;
                    parent_prev_r[static_cast<size_t>(r)] = -1;
                }
            }
        }

        int target = -1;
        double target_dist = kInf;
        while (true) {
            int best_r = -1;
            for (int r = 0; r < nr; ++r) {
                if (settled[static_cast<size_t>(r)] || dist[static_cast<size_t>(r)] == kInf)
                    continue;
                if (best_r < 0 || dist[static_cast<size_t>(r)] < dist[static_cast<size_t>(best_r)])
                    best_r = r;
            }
            if (best_r < 0) break; // frontier exhausted, no augmenting path
            settled[static_cast<size_t>(best_r)] = 1;
            if (match_r[static_cast<size_t>(best_r)] < 0) {
                target = best_r;
                target_dist = dist[static_cast<size_t>(best_r)];
                break;
            }
            int l2 = match_r[static_cast<size_t>(best_r)];
            in_tree[static_cast<size_t>(l2)] = 1;
            tree_label[static_cast<size_t>(l2)] = dist[static_cast<size_t>(best_r)];
            for (const auto& [r2, w] : inst.edges[static_cast<size_t>(l2)]) {
                if (!alive_r[static_cast<size_t>(r2)] || settled[static_cast<size_t>(r2)])
                    continue;
                double slack = std::max(
                    0.0, u[static_cast<size_t>(l2)] + v[static_cast<size_t>(r2)] - w);
                double nd = dist[static_cast<size_t>(best_r)] + slack;
                if (nd < dist[static_cast<size_t>(r2)]) {
                    dist[static_cast<size_t>(r2)] = nd;
                    parent_l[static_cast<size_t>(r2)] = l2;
                    parent_prev_r[static_cast<size_t>(r2)] = best_r;
                }
            }
        }
        if (target < 0) break;

        // Flip the path (tentatively when in canonical mode).
        std::vector<std::pair<int, int>> flips;
        std::vector<std::pair<int, int>> undo; // (left, previous right)
        for (int r = target; r >= 0;) {
            int l = parent_l[static_cast<size_t>(r)];
            flips.emplace_back(l, r);
            r = parent_prev_r[static_cast<size_t>(r)];
        }
        for (const auto& [l, r] : flips) {
            undo.emplace_back(l, res.match_l[static_cast<size_t>(l)]);
            res.match_l[static_cast<size_t>(l)] = r;
            match_r[static_cast<size_t>(r)] = l;
        }

        if (target_card < 0) {
            double new_total = canonical_total(inst, res.match_l);
            if (new_total < total) {
                // This augmentation trades weight for cardinality: revert.
                for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
                    int l = it->first, old_r = it->second;
                    int cur = res.match_l[static_cast<size_t>(l)];
                    if (cur >= 0 && match_r[static_cast<size_t>(cur)] == l)
                        match_r[static_cast<size_t>(cur)] = -1;
                    res.match_l[static_cast<size_t>(l)] = old_r;
                    if (old_r >= 0) match_r[static_cast<size_t>(old_r)] = l;
                }
                break;
            }
            total = new_total;
        }
        ++res.cardinality;

        // Dual update keeps feasibility and leaves every matched edge tight
        // (sources count as settled with label umax - u[l], so the path's
        // entry left gets u = umax - target_dist like the other sources).
        for (int r = 0; r < nr; ++r) {
            if (settled[static_cast<size_t>(r)] && r != target)
                v[static_cast<size_t>(r)] += target_dist - dist[static_cast<size_t>(r)];
        }
        for (int l = 0; l < nl; ++l) {
            if (in_tree[static_cast<size_t>(l)])
                u[static_cast<size_t>(l)] -= target_dist - tree_label[static_cast<size_t>(l)];
        }
        for (int l : sources) u[static_cast<size_t>(l)] = umax - target_dist;
    }
    return res;
}

double edge_weight(const Instance& inst, int l, int r) {
    for (const auto& [r2, w] : inst.edges[static_cast<size_t>(l)]) {
        if (r2 == r) return w;
    }
    return 0.0;
}

Matching finish(const CommunityBipartiteGraph& cbg, const Instance& inst,
                const std::vector<std::pair<int, int>>& index_pairs) {
    Matching m;
    for (const auto& [l, r] : index_pairs) {
        m.pairs.emplace_back(cbg.left_communities[static_cast<size_t>(l)],
                             cbg.right_communities[static_cast<size_t>(r)]);
        double w = edge_weight(inst, l, r);
        m.pair_weights.push_back(w);
        m.total_weight += w;
    }
    return m;
}

void require_weighted(const CommunityBipartiteGraph& cbg) {
    if (!cbg.metric_applied) {
        throw MlnError(ErrorCode::UnweightedCBG,
                       "apply a weight metric before matching");
    }
}

} // namespace

Matching max_weight_matching(const CommunityBipartiteGraph& cbg) {
    require_weighted(cbg);
    Instance inst = instance_from(cbg);
    std::vector<char> alive_l(static_cast<size_t>(inst.nl), 1);
    std::vector<char> alive_r(static_cast<size_t>(inst.nr), 1);

    SspResult base = ssp_solve(inst, alive_l, alive_r, -1);
    const double w_star = canonical_total(inst, base.match_l);
    const int c_star = base.cardinality;

    // Lexicographic refinement: walk lefts in ascending order and commit the
    // smallest right that still extends to a (w_star, c_star) matching. A
    // witness matching consistent with all commitments avoids probing the
    // choice it already testifies for.
    std::vector<int> witness = base.match_l;
    std::vector<std::pair<int, int>> fixed;
    std::vector<char> right_used(static_cast<size_t>(inst.nr), 0);

    for (int l = 0; l < inst.nl && static_cast<int>(fixed.size()) < c_star; ++l) {
        int chosen = -1;
        const int c_need = c_star - static_cast<int>(fixed.size()) - 1;
        for (const auto& [r, w] : inst.edges[static_cast<size_t>(l)]) {
            (void)w;
            if (right_used[static_cast<size_t>(r)]) continue;
            if (witness[static_cast<size_t>(l)] == r) {
                chosen = r;
                break;
            }
            // Probe: best completion over lefts > l and unused rights != r.
            std::vector<char> sub_l(static_cast<size_t>(inst.nl), 0);
            for (int l2 = l + 1; l2 < inst.nl; ++l2) sub_l[static_cast<size_t>(l2)] = 1;
            std::vector<char> sub_r = alive_r;
            for (int r2 = 0; r2 < inst.nr; ++r2) {
                if (right_used[static_cast<size_t>(r2)]) sub_r[static_cast<size_t>(r2)] = 0;
            }
            sub_r[static_cast<size_t>(r)] = 0;
            SspResult probe = ssp_solve(inst, sub_l, sub_r, c_need);
            if (probe.cardinality != c_need) continue;

            std::vector<int> candidate(static_cast<size_t>(inst.nl), -1);
            for (const auto& [fl, fr] : fixed) candidate[static_cast<size_t>(fl)] = fr;
            candidate[static_cast<size_t>(l)] = r;
            for (int l2 = l + 1; l2 < inst.nl; ++l2) {
                if (probe.match_l[static_cast<size_t>(l2)] >= 0)
                    candidate[static_cast<size_t>(l2)] = probe.match_l[static_cast<size_t>(l2)];
            }
            if (canonical_total(inst, candidate) == w_star) {
                chosen = r;
                witness = candidate;
                break;
            }
        }
        if (chosen >= 0) {
            fixed.emplace_back(l, chosen);
            right_used[static_cast<size_t>(chosen)] = 1;
        }
        // else: every (w_star, c_star) matching consistent with the prefix
        // leaves l unmatched (the witness in particular does).
    }
    assert(static_cast<int>(fixed.size()) == c_star);
    return finish(cbg, inst, fixed);
}

namespace {

struct OracleBest {
    bool any = false;
    double total = 0.0;
    std::vector<std::pair<int, int>> pairs;
};

void oracle_dfs(const Instance& inst, int l, std::vector<char>& right_used,
                std::vector<std::pair<int, int>>& current, double running_total,
                OracleBest& best) {
    if (l == inst.nl) {
        bool better = false;
        if (!best.any) {
            better = true;
        } else if (running_total != best.total) {
            better = running_total > best.total;
        } else if (current.size() != best.pairs.size()) {
            better = current.size() > best.pairs.size();
        } else {
            better = current < best.pairs;
        }
        if (better) {
            best.any = true;
            best.total = running_total;
            best.pairs = current;
        }
        return;
    }
    oracle_dfs(inst, l + 1, right_used, current, running_total, best);
    for (const auto& [r, w] : inst.edges[static_cast<size_t>(l)]) {
        if (right_used[static_cast<size_t>(r)]) continue;
        right_used[static_cast<size_t>(r)] = 1;
        current.emplace_back(l, r);
        oracle_dfs(inst, l + 1, right_used, current, running_total + w, best);
        current.pop_back();
        right_used[static_cast<size_t>(r)] = 0;
    }
}

} // namespace

Matching brute_force_matching(const CommunityBipartiteGraph& cbg) {
    require_weighted(cbg);
    Instance inst = instance_from(cbg);
    if (std::min(inst.nl, inst.nr) > 8) {
        throw MlnError(ErrorCode::InstanceTooLarge,
                       "brute force caps min(side sizes) at 8, got " +
                           std::to_string(std::min(inst.nl, inst.nr)));
    }
    OracleBest best;
    std::vector<char> right_used(static_cast<size_t>(inst.nr), 0);
    std::vector<std::pair<int, int>> current;
    oracle_dfs(inst, 0, right_used, current, 0.0, best);
    return finish(cbg, inst, best.pairs);
}

} // namespace mlncraft
