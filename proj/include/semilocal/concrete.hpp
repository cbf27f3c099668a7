#pragma once

#include <set>
#include <unordered_set>

#include "oracles.hpp"
#include "problems.hpp"

namespace semilocal {

// ---------------------------------------------------------------------------
// (edge-degree + 1)-edge coloring.
//
// Sigma = {(a,b) : a,b > 0} u {D}. At a node with p non-D labels every
// degree part must be <= p and the color parts must be pairwise distinct.
// A rank-2 edge carries {(a1,b),(a2,b)} with a1 + a2 >= b + 1; rank-1 edges
// carry {D}; rank-0 edges carry the empty multiset.
//
// candidate_labels is exhaustive: in any valid solution a degree part at v
// is at most v's degree and a color part on edge {u,v} is at most
// deg(u) + deg(v) - 1 (it is bounded by a1 + a2 - 1 <= p_u + p_v - 1).
// ---------------------------------------------------------------------------

inline Problem edgecolor_problem() {
    Problem p;
    p.name = "edgecolor";
    p.node_ok = [](std::span<const Label> ms) {
        int pairs = 0;
        for (const auto& l : ms) {
            if (l.kind == LabelKind::Pair)
                ++pairs;
            else if (l.kind != LabelKind::D)
                return false;
        }
        std::unordered_set<int> colors;
        for (const auto& l : ms) {
            if (l.kind != LabelKind::Pair) continue;
            if (l.a < 1 || l.b < 1 || l.a > pairs) return false;
            if (!colors.insert(l.b).second) return false;
        }
        return true;
    };
    p.edge_ok = [](std::span<const Label> ms) {
        switch (ms.size()) {
        case 0: return true;
        case 1: return ms[0].kind == LabelKind::D;
        case 2:
            return ms[0].kind == LabelKind::Pair && ms[1].kind == LabelKind::Pair &&
                   ms[0].a >= 1 && ms[1].a >= 1 && ms[0].b >= 1 && ms[0].b == ms[1].b &&
                   ms[0].a + ms[1].a >= ms[0].b + 1;
        default: return false;
        }
    };
    p.candidate_labels = [](const CandidateContext& c) {
        std::vector<Label> out{Label::d()};
        for (int a = 1; a <= c.deg_node; ++a)
            for (int b = 1; b <= c.deg_node + c.deg_other; ++b) out.push_back(Label::pair(a, b));
        return out;
    };
    p.node_partial_ok = [](std::span<const Label> ms, int final_deg) {
        std::unordered_set<int> colors;
        for (const auto& l : ms) {
            if (l.kind != LabelKind::Pair) continue;
            if (l.a > final_deg) return false;
            if (!colors.insert(l.b).second) return false;
        }
        return true;
    };
    return p;
}

// ---------------------------------------------------------------------------
// Maximal matching. Sigma = {M,P,O,D}; a node has either exactly one M with
// the rest in {P,O,D}, or only labels from {O,D}. Rank-2 edges carry one of
// {P,O}, {M,M}, {P,P}.
// ---------------------------------------------------------------------------

inline Problem matching_problem() {
    Problem p;
    p.name = "matching";
    p.node_ok = [](std::span<const Label> ms) {
        int m = 0;
        bool has_p = false;
        for (const auto& l : ms) {
            switch (l.kind) {
            case LabelKind::M: ++m; break;
            case LabelKind::P: has_p = true; break;
            case LabelKind::O:
            case LabelKind::D: break;
            default: return false;
            }
        }
        if (m > 1) return false;
        return m == 1 || !has_p;
    };
    p.edge_ok = [](std::span<const Label> ms) {
        switch (ms.size()) {
        case 0: return true;
        case 1: return ms[0].kind == LabelKind::D;
        case 2: {
            auto k0 = ms[0].kind, k1 = ms[1].kind; // sorted: M < P < O
            return (k0 == LabelKind::M && k1 == LabelKind::M) ||
                   (k0 == LabelKind::P && k1 == LabelKind::P) ||
                   (k0 == LabelKind::P && k1 == LabelKind::O);
        }
        default: return false;
        }
    };
    p.candidate_labels = [](const CandidateContext&) {
        return std::vector<Label>{Label::m(), Label::p(), Label::o(), Label::d()};
    };
    p.node_partial_ok = [](std::span<const Label> ms, int) {
        int m = 0;
        for (const auto& l : ms)
            if (l.kind == LabelKind::M) ++m;
        return m <= 1;
    };
    return p;
}

// ---------------------------------------------------------------------------
// (deg+1)-coloring, phrased so that all half-edges of a node carry the
// node's color: a node of degree i carries i copies of some color c <= i+1,
// and rank-2 edges see two distinct colors. This encoding makes the
// edge-list variant universally solvable, which is what the tree pipeline
// needs.
// ---------------------------------------------------------------------------

inline Problem degplus1_problem() {
    Problem p;
    p.name = "degplus1";
    p.node_ok = [](std::span<const Label> ms) {
        if (ms.empty()) return true;
        int i = static_cast<int>(ms.size());
        for (const auto& l : ms)
            if (l.kind != LabelKind::Color || !(l == ms[0])) return false;
        return ms[0].a >= 1 && ms[0].a <= i + 1;
    };
    p.edge_ok = [](std::span<const Label> ms) {
        switch (ms.size()) {
        case 0: return true;
        case 1: return ms[0].kind == LabelKind::Color && ms[0].a >= 1;
        case 2:
            return ms[0].kind == LabelKind::Color && ms[1].kind == LabelKind::Color &&
                   ms[0].a >= 1 && ms[1].a >= 1 && ms[0].a != ms[1].a;
        default: return false;
        }
    };
    p.candidate_labels = [](const CandidateContext& c) {
        std::vector<Label> out;
        for (int col = 1; col <= c.deg_node + 1; ++col) out.push_back(Label::color(col));
        return out;
    };
    p.node_partial_ok = [](std::span<const Label> ms, int final_deg) {
        for (const auto& l : ms)
            if (l.kind != LabelKind::Color || !(l == ms[0]) || l.a > final_deg + 1) return false;
        return true;
    };
    return p;
}

// ---------------------------------------------------------------------------
// 1-round equivalence transforms between Pi solutions and the plain
// combinatorial objects.
// ---------------------------------------------------------------------------

inline void require_valid(const Problem& p, const SemiGraph& s, const Labeling& l,
                          const char* who) {
    auto vs = check_solution(p, s, l);
    if (vs.empty()) return;
    const auto& v = vs.front();
    std::string where = v.kind == Violation::Kind::Node ? "node " : "edge ";
    std::string ms;
    for (const auto& x : v.multiset) ms += to_string(x) + " ";
    throw std::invalid_argument(std::string(who) + ": invalid labeling at " + where +
                                std::to_string(v.id) + " with multiset { " + ms + "}");
}

/// Edge color = the shared color part on the edge's half-edges.
inline std::vector<int> pi_to_edgecoloring(const SemiGraph& s, const Labeling& l) {
    require_valid(edgecolor_problem(), s, l, "pi_to_edgecoloring");
    std::vector<int> color(s.m(), -1);
    for (EdgeId e = 0; e < s.m(); ++e)
        if (s.rank(e) == 2) color[e] = l.at(s.endpoint(e, 0), e).b;
    return color;
}

/// An edge is matched iff both its half-edges carry M.
inline std::vector<std::uint8_t> pi_to_matching(const SemiGraph& s, const Labeling& l) {
    require_valid(matching_problem(), s, l, "pi_to_matching");
    std::vector<std::uint8_t> matched(s.m(), 0);
    for (EdgeId e = 0; e < s.m(); ++e)
        if (s.rank(e) == 2 && l.at(s.endpoint(e, 0), e).kind == LabelKind::M &&
            l.at(s.endpoint(e, 1), e).kind == LabelKind::M)
            matched[e] = 1;
    return matched;
}

inline std::vector<int> pi_to_nodecoloring(const SemiGraph& s, const Labeling& l) {
    require_valid(degplus1_problem(), s, l, "pi_to_nodecoloring");
    std::vector<int> color(s.n(), 1); // isolated nodes default to color 1
    for (NodeId v = 0; v < s.n(); ++v)
        if (s.deg(v) > 0) color[v] = l.at(v, s.incident(v)[0]).a;
    return color;
}

/// Degree parts are fixed to deg(u) and deg(v); since any valid coloring has
/// b <= edge-degree + 1 = deg(u) + deg(v) - 1, the sum constraint holds.
inline Labeling edgecoloring_to_pi(const SemiGraph& s, std::span<const int> color) {
    if (!direct_check_edgecoloring(s, color))
        throw std::invalid_argument("edgecoloring_to_pi: not a valid (edge-degree+1) coloring");
    Labeling l(s);
    for (EdgeId e = 0; e < s.m(); ++e) {
        if (s.rank(e) == 2) {
            NodeId u = s.endpoint(e, 0), v = s.endpoint(e, 1);
            l.set(u, e, Label::pair(s.rank2_deg(u), color[e]));
            l.set(v, e, Label::pair(s.rank2_deg(v), color[e]));
        } else if (s.rank(e) == 1) {
            l.set(s.endpoint(e, 0), e, Label::d());
        }
    }
    require_valid(edgecolor_problem(), s, l, "edgecoloring_to_pi");
    return l;
}

inline Labeling matching_to_pi(const SemiGraph& s, std::span<const std::uint8_t> matched) {
    if (!direct_check_matching(s, matched))
        throw std::invalid_argument("matching_to_pi: not a valid maximal matching");
    std::vector<std::uint8_t> node_matched(s.n(), 0);
    for (EdgeId e = 0; e < s.m(); ++e)
        if (matched[e]) {
            node_matched[s.endpoint(e, 0)] = 1;
            node_matched[s.endpoint(e, 1)] = 1;
        }
    Labeling l(s);
    for (EdgeId e = 0; e < s.m(); ++e) {
        if (s.rank(e) == 2) {
            for (int i = 0; i < 2; ++i) {
                NodeId v = s.endpoint(e, i);
                l.set(v, e, matched[e] ? Label::m() : (node_matched[v] ? Label::p() : Label::o()));
            }
        } else if (s.rank(e) == 1) {
            l.set(s.endpoint(e, 0), e, Label::d());
        }
    }
    require_valid(matching_problem(), s, l, "matching_to_pi");
    return l;
}

inline Labeling nodecoloring_to_pi(const SemiGraph& s, std::span<const int> color) {
    if (!direct_check_nodecoloring(s, color))
        throw std::invalid_argument("nodecoloring_to_pi: not a valid (deg+1) coloring");
    Labeling l(s);
    for (NodeId v = 0; v < s.n(); ++v)
        for (EdgeId e : s.incident(v)) l.set(v, e, Label::color(color[v]));
    require_valid(degplus1_problem(), s, l, "nodecoloring_to_pi");
    return l;
}

// ---------------------------------------------------------------------------
// Sequential list solvers realizing the labeling processes behind the
// existence lemmas. Processing order is ascending edge id (resp. node id);
// the processes work for any order, a fixed one gives determinism.
// ---------------------------------------------------------------------------

inline void require_conformant(const ListInstance& inst, const Labeling& l, const char* who) {
    auto vs = check_list_solution(inst, l);
    if (!vs.empty())
        throw std::invalid_argument(std::string(who) + ": instance not lemma-conformant (" +
                                    std::to_string(vs.size()) + " violations in process output)");
}

/// Edge-coloring process: edge e_t with endpoints carrying b_i fixed non-D
/// labels and d_i labels assigned earlier by the process receives the
/// smallest color c in {1, ..., b1+b2+d1+d2+1} unused at either endpoint and
/// the half-edge labels (b1+d1+1, c) and (b2+d2+1, c). Rank-1 edges get D.
inline Labeling edgecolor_list_solve(const ListInstance& inst) {
    if (!inst.node_variant)
        throw std::invalid_argument("edgecolor_list_solve: expects a node-list instance");
    const SemiGraph& s = inst.S;
    std::vector<int> fixed_non_d(s.n(), 0), assigned(s.n(), 0);
    std::vector<std::unordered_set<int>> used(s.n());
    for (NodeId v = 0; v < s.n(); ++v)
        for (const auto& l : inst.node_lists[v].fixed)
            if (l.kind == LabelKind::Pair) {
                ++fixed_non_d[v];
                used[v].insert(l.b);
            } else if (l.kind != LabelKind::D) {
                throw std::invalid_argument("edgecolor_list_solve: non-edge-coloring fixed label");
            }

    Labeling out(s);
    for (EdgeId e = 0; e < s.m(); ++e) {
        if (s.rank(e) != 2) continue;
        NodeId u = s.endpoint(e, 0), v = s.endpoint(e, 1);
        int limit = fixed_non_d[u] + fixed_non_d[v] + assigned[u] + assigned[v] + 1;
        int c = 0;
        for (int cand = 1; cand <= limit; ++cand)
            if (!used[u].count(cand) && !used[v].count(cand)) {
                c = cand;
                break;
            }
        if (c == 0)
            throw std::logic_error("edgecolor_list_solve: no admissible color (cannot occur)");
        out.set(u, e, Label::pair(fixed_non_d[u] + assigned[u] + 1, c));
        out.set(v, e, Label::pair(fixed_non_d[v] + assigned[v] + 1, c));
        used[u].insert(c);
        used[v].insert(c);
        ++assigned[u];
        ++assigned[v];
    }
    for (EdgeId e = 0; e < s.m(); ++e)
        if (s.rank(e) == 1) out.set(s.endpoint(e, 0), e, Label::d());

    // Mirrors the lemma's node-validity argument: every process-assigned
    // degree part at v is at most the final non-D count at v.
    for (NodeId v = 0; v < s.n(); ++v) {
        int final_non_d = fixed_non_d[v] + assigned[v];
        for (EdgeId e : s.incident(v)) {
            auto l = out.get(v, e);
            if (l && l->kind == LabelKind::Pair && l->a > final_non_d)
                throw std::logic_error("edgecolor_list_solve: degree part exceeds non-D count");
        }
    }
    require_conformant(inst, out, "edgecolor_list_solve");
    return out;
}

/// Matching process, cases verbatim: an edge matches (M,M) iff no M occurs
/// in either endpoint's context; with M on exactly one side the M-free side
/// gets O and the other P; with M on both sides both get P.
inline Labeling matching_list_solve(const ListInstance& inst) {
    if (!inst.node_variant)
        throw std::invalid_argument("matching_list_solve: expects a node-list instance");
    const SemiGraph& s = inst.S;
    std::vector<std::uint8_t> has_m(s.n(), 0);
    for (NodeId v = 0; v < s.n(); ++v)
        for (const auto& l : inst.node_lists[v].fixed)
            if (l.kind == LabelKind::M) has_m[v] = 1;

    Labeling out(s);
    for (EdgeId e = 0; e < s.m(); ++e) {
        if (s.rank(e) != 2) continue;
        NodeId u = s.endpoint(e, 0), v = s.endpoint(e, 1);
        if (!has_m[u] && !has_m[v]) {
            out.set(u, e, Label::m());
            out.set(v, e, Label::m());
            has_m[u] = has_m[v] = 1;
        } else if (!has_m[u]) {
            out.set(u, e, Label::o());
            out.set(v, e, Label::p());
        } else if (!has_m[v]) {
            out.set(u, e, Label::p());
            out.set(v, e, Label::o());
        } else {
            out.set(u, e, Label::p());
            out.set(v, e, Label::p());
        }
    }
    for (EdgeId e = 0; e < s.m(); ++e)
        if (s.rank(e) == 1) out.set(s.endpoint(e, 0), e, Label::d());
    require_conformant(inst, out, "matching_list_solve");
    return out;
}

/// Greedy solver for the edge-list variant of (deg+1)-coloring: each node in
/// ascending order takes the smallest color in 1..deg+1 excluded neither by
/// an incident edge list nor by an already-colored neighbor. At most deg
/// exclusions against a deg+1 palette, so a color always exists.
inline Labeling degplus1_list_solve(const ListInstance& inst) {
    if (inst.node_variant)
        throw std::invalid_argument("degplus1_list_solve: expects an edge-list instance");
    const SemiGraph& s = inst.S;
    std::vector<int> color(s.n(), 0);
    Labeling out(s);
    for (NodeId v = 0; v < s.n(); ++v) {
        std::unordered_set<int> forbidden;
        for (EdgeId e : s.incident(v)) {
            for (const auto& l : inst.edge_lists[e].fixed)
                if (l.kind == LabelKind::Color) forbidden.insert(l.a);
            NodeId w = s.other_endpoint(e, v);
            if (w != -1 && color[w] != 0) forbidden.insert(color[w]);
        }
        int c = 0;
        for (int cand = 1; cand <= s.deg(v) + 1; ++cand)
            if (!forbidden.count(cand)) {
                c = cand;
                break;
            }
        if (c == 0)
            throw std::logic_error("degplus1_list_solve: no color available (cannot occur)");
        color[v] = c;
        for (EdgeId e : s.incident(v)) out.set(v, e, Label::color(c));
    }
    require_conformant(inst, out, "degplus1_list_solve");
    return out;
}

// ---------------------------------------------------------------------------
// Labeling file format: {"labels": [{"node": v, "edge": e, "label": ...}]}
// ---------------------------------------------------------------------------

inline nlohmann::json labeling_to_json(const SemiGraph& s, const Labeling& l) {
    nlohmann::json labels = nlohmann::json::array();
    for (EdgeId e = 0; e < s.m(); ++e)
        for (int i = 0; i < s.rank(e); ++i) {
            NodeId v = s.endpoint(e, i);
            auto lab = l.get(v, e);
            if (lab) labels.push_back({{"node", v}, {"edge", e}, {"label", label_to_json(*lab)}});
        }
    return {{"labels", labels}};
}

inline Labeling labeling_from_json(const SemiGraph& s, const nlohmann::json& j) {
    Labeling l(s);
    for (const auto& entry : j.at("labels"))
        l.set(entry.at("node").get<NodeId>(), entry.at("edge").get<EdgeId>(),
              label_from_json(entry.at("label")));
    return l;
}

} // namespace semilocal
