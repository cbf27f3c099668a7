#pragma once

#include <optional>

#include "problems.hpp"

namespace semilocal {

// ---------------------------------------------------------------------------
// Direct combinatorial checkers, independent of the node-edge-checkable
// encodings. These are the reference judges for pipeline outputs.
// ---------------------------------------------------------------------------

/// Proper edge coloring with color(e) <= edge-degree(e) + 1. Colors are given
/// per edge; entries for edges of rank != 2 are ignored.
inline bool direct_check_edgecoloring(const SemiGraph& s, std::span<const int> color) {
    if (static_cast<int>(color.size()) != s.m()) return false;
    for (EdgeId e = 0; e < s.m(); ++e) {
        if (s.rank(e) != 2) continue;
        if (color[e] < 1 || color[e] > s.edge_degree(e) + 1) return false;
    }
    for (NodeId v = 0; v < s.n(); ++v) {
        auto inc = s.incident(v);
        for (std::size_t i = 0; i < inc.size(); ++i)
            for (std::size_t j = i + 1; j < inc.size(); ++j) {
                if (s.rank(inc[i]) != 2 || s.rank(inc[j]) != 2) continue;
                if (color[inc[i]] == color[inc[j]]) return false;
            }
    }
    return true;
}

/// Maximal matching: matched edges pairwise disjoint and every rank-2 edge
/// has at least one matched endpoint.
inline bool direct_check_matching(const SemiGraph& s, std::span<const std::uint8_t> matched) {
    if (static_cast<int>(matched.size()) != s.m()) return false;
    std::vector<int> mdeg(s.n(), 0);
    for (EdgeId e = 0; e < s.m(); ++e) {
        if (!matched[e]) continue;
        if (s.rank(e) != 2) return false;
        ++mdeg[s.endpoint(e, 0)];
        ++mdeg[s.endpoint(e, 1)];
    }
    for (NodeId v = 0; v < s.n(); ++v)
        if (mdeg[v] > 1) return false;
    for (EdgeId e = 0; e < s.m(); ++e) {
        if (s.rank(e) != 2 || matched[e]) continue;
        if (mdeg[s.endpoint(e, 0)] == 0 && mdeg[s.endpoint(e, 1)] == 0) return false;
    }
    return true;
}

/// Proper node coloring with c(v) <= deg(v) + 1 (underlying degree).
inline bool direct_check_nodecoloring(const SemiGraph& s, std::span<const int> color) {
    if (static_cast<int>(color.size()) != s.n()) return false;
    for (NodeId v = 0; v < s.n(); ++v)
        if (color[v] < 1 || color[v] > s.rank2_deg(v) + 1) return false;
    for (EdgeId e = 0; e < s.m(); ++e)
        if (s.rank(e) == 2 && color[s.endpoint(e, 0)] == color[s.endpoint(e, 1)]) return false;
    return true;
}

/// Certifies an arboricity witness: the given forests partition the rank-2
/// edges (each edge in exactly one part) and every part is acyclic.
inline bool forest_witness_check(const SemiGraph& s,
                                 const std::vector<std::vector<EdgeId>>& forests) {
    std::vector<int> owner(s.m(), -1);
    for (std::size_t f = 0; f < forests.size(); ++f)
        for (EdgeId e : forests[f]) {
            if (e < 0 || e >= s.m() || s.rank(e) != 2) return false;
            if (owner[e] != -1) return false;
            owner[e] = static_cast<int>(f);
        }
    for (EdgeId e = 0; e < s.m(); ++e)
        if (s.rank(e) == 2 && owner[e] == -1) return false;

    std::vector<int> parent(s.n());
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& forest : forests) {
        std::iota(parent.begin(), parent.end(), 0);
        for (EdgeId e : forest) {
            int a = find(s.endpoint(e, 0));
            int b = find(s.endpoint(e, 1));
            if (a == b) return false; // cycle
            parent[a] = b;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Brute-force list solver: exhaustive backtracking over whole-edge label
// configurations, used to certify the sequential labeling processes.
//
// Candidates come from Problem::candidate_labels, which each concrete
// problem documents to be exhaustive for its constraints, so SAT/UNSAT
// verdicts are decisions, not heuristics.
// ---------------------------------------------------------------------------

inline std::optional<Labeling> brute_list_solve(const ListInstance& inst, int cap = 12) {
    const SemiGraph& s = inst.S;
    if (s.half_edge_count() > cap)
        throw std::invalid_argument("brute_list_solve: instance larger than the oracle cap");

    // Full degree of a node = residual + fixed, as seen by the base problem.
    auto full_deg = [&](NodeId v) {
        int fixed = inst.node_variant ? static_cast<int>(inst.node_lists[v].fixed.size()) : 0;
        return s.deg(v) + fixed;
    };

    Labeling out(s);
    std::vector<std::vector<Label>> chosen(s.n()); // labels placed at each node so far
    std::vector<int> remaining(s.n());
    for (NodeId v = 0; v < s.n(); ++v) remaining[v] = s.deg(v);

    auto node_complete_ok = [&](NodeId v) {
        LabelMultiset ms = chosen[v];
        std::sort(ms.begin(), ms.end());
        if (inst.node_variant) return inst.node_lists[v].allows(ms, inst.base);
        return inst.base.node_ok(ms);
    };
    auto node_partial_feasible = [&](NodeId v) {
        LabelMultiset ms = chosen[v];
        if (inst.node_variant)
            ms.insert(ms.end(), inst.node_lists[v].fixed.begin(), inst.node_lists[v].fixed.end());
        std::sort(ms.begin(), ms.end());
        return inst.base.node_partial_ok(ms, full_deg(v));
    };
    auto edge_config_ok = [&](EdgeId e, std::span<const Label> ms) {
        if (inst.node_variant) return inst.base.edge_ok(ms);
        return inst.edge_lists[e].allows(ms, inst.base);
    };

    auto place = [&](NodeId v, EdgeId e, const Label& l) {
        chosen[v].push_back(l);
        --remaining[v];
        out.set(v, e, l);
    };
    auto unplace = [&](NodeId v) {
        chosen[v].pop_back();
        ++remaining[v];
    };

    std::function<bool(EdgeId)> rec = [&](EdgeId e) -> bool {
        if (e == s.m()) return true;
        int r = s.rank(e);
        if (r == 0) {
            LabelMultiset empty;
            return edge_config_ok(e, empty) && rec(e + 1);
        }
        NodeId u = s.endpoint(e, 0);
        CandidateContext cu{r, full_deg(u), r == 2 ? full_deg(s.endpoint(e, 1)) : 0};
        auto cand_u = inst.base.candidate_labels(cu);
        if (r == 1) {
            for (const Label& lu : cand_u) {
                LabelMultiset ms{lu};
                if (!edge_config_ok(e, ms)) continue;
                place(u, e, lu);
                bool ok = node_partial_feasible(u) && (remaining[u] > 0 || node_complete_ok(u));
                if (ok && rec(e + 1)) return true;
                unplace(u);
            }
            return false;
        }
        NodeId v = s.endpoint(e, 1);
        CandidateContext cv{r, full_deg(v), full_deg(u)};
        auto cand_v = inst.base.candidate_labels(cv);
        for (const Label& lu : cand_u)
            for (const Label& lv : cand_v) {
                LabelMultiset ms{std::min(lu, lv), std::max(lu, lv)};
                if (!edge_config_ok(e, ms)) continue;
                place(u, e, lu);
                place(v, e, lv);
                bool ok = node_partial_feasible(u) && node_partial_feasible(v) &&
                          (remaining[u] > 0 || node_complete_ok(u)) &&
                          (remaining[v] > 0 || node_complete_ok(v));
                if (ok && rec(e + 1)) return true;
                unplace(v);
                unplace(u);
            }
        return false;
    };

    // Isolated nodes have no half-edges but still carry a constraint.
    for (NodeId v = 0; v < s.n(); ++v)
        if (s.deg(v) == 0 && !node_complete_ok(v)) return std::nullopt;

    if (!rec(0)) return std::nullopt;
    return out;
}

} // namespace semilocal
