#pragma once

#include <compare>
#include <functional>
#include <span>
#include <string>

#include "semigraph.hpp"

namespace semilocal {

// ---------------------------------------------------------------------------
// Labels. One tagged union covers every concrete problem in this repo:
//   D / M / P / O           - marker labels,
//   Pair(a,b)               - edge-coloring labels with degree part a and
//                             color part b,
//   Color(c)                - node-coloring labels.
// Ordering is lexicographic on (kind, a, b) so sorted vectors are canonical
// multisets.
// ---------------------------------------------------------------------------

enum class LabelKind : std::uint8_t { D = 0, M = 1, P = 2, O = 3, Pair = 4, Color = 5 };

struct Label {
    LabelKind kind = LabelKind::D;
    std::int32_t a = 0;
    std::int32_t b = 0;

    static Label d() { return {LabelKind::D, 0, 0}; }
    static Label m() { return {LabelKind::M, 0, 0}; }
    static Label p() { return {LabelKind::P, 0, 0}; }
    static Label o() { return {LabelKind::O, 0, 0}; }
    static Label pair(int deg_part, int color_part) {
        return {LabelKind::Pair, deg_part, color_part};
    }
    static Label color(int c) { return {LabelKind::Color, c, 0}; }

    bool is_d() const { return kind == LabelKind::D; }

    auto operator<=>(const Label&) const = default;
};

inline std::string to_string(const Label& l) {
    switch (l.kind) {
    case LabelKind::D: return "D";
    case LabelKind::M: return "M";
    case LabelKind::P: return "P";
    case LabelKind::O: return "O";
    case LabelKind::Pair:
        return "(" + std::to_string(l.a) + "," + std::to_string(l.b) + ")";
    case LabelKind::Color: return "c" + std::to_string(l.a);
    }
    return "?";
}

inline nlohmann::json label_to_json(const Label& l) {
    switch (l.kind) {
    case LabelKind::D: return "D";
    case LabelKind::M: return "M";
    case LabelKind::P: return "P";
    case LabelKind::O: return "O";
    case LabelKind::Pair: return nlohmann::json{{"a", l.a}, {"b", l.b}};
    case LabelKind::Color: return nlohmann::json{{"c", l.a}};
    }
    return nullptr;
}

inline Label label_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "D") return Label::d();
        if (s == "M") return Label::m();
        if (s == "P") return Label::p();
        if (s == "O") return Label::o();
        throw std::invalid_argument("unknown label string: " + s);
    }
    if (j.contains("a")) return Label::pair(j.at("a").get<int>(), j.at("b").get<int>());
    if (j.contains("c")) return Label::color(j.at("c").get<int>());
    throw std::invalid_argument("unknown label encoding");
}

using Labeling = BasicLabeling<Label>;
using LabelMultiset = std::vector<Label>; // kept sorted

inline LabelMultiset merged_multiset(std::span<const Label> xs, std::span<const Label> ys) {
    LabelMultiset out(xs.begin(), xs.end());
    out.insert(out.end(), ys.begin(), ys.end());
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Node-edge-checkable problems as constraint oracles.
//
// The label alphabet is infinite for edge coloring, so the constraint
// collections N_pi / E_pi are carried as membership oracles over sorted label
// multisets rather than explicit sets. The multiset cardinality is the
// node's degree (resp. the edge's rank).
// ---------------------------------------------------------------------------

/// Context handed to candidate_labels when brute-force search enumerates
/// labels for one half-edge: rank of the edge and the full degrees
/// (residual + fixed) of its endpoints. deg_other is 0 for rank-1 edges.
struct CandidateContext {
    int rank = 2;
    int deg_node = 0;
    int deg_other = 0;
};

struct Problem {
    std::string name;
    /// Membership of a sorted multiset in N_pi^{multiset size}.
    std::function<bool(std::span<const Label>)> node_ok;
    /// Membership of a sorted multiset in E_pi^{multiset size}.
    std::function<bool(std::span<const Label>)> edge_ok;
    /// Finite superset of the labels appearing in any minimal valid solution
    /// for a half-edge with the given context; bounds brute-force search.
    std::function<std::vector<Label>(const CandidateContext&)> candidate_labels;
    /// Optional pruning hook for backtracking: may a sorted partial multiset
    /// still extend to a member of N_pi^{final_degree}? Must never reject a
    /// feasible partial; the default accepts everything.
    std::function<bool(std::span<const Label>, int final_degree)> node_partial_ok =
        [](std::span<const Label>, int) { return true; };
};

// ---------------------------------------------------------------------------
// List variants. A list is carried symbolically as (fixed multiset, residual
// count): a candidate multiset psi of size `residual` is a member iff
// node_ok/edge_ok accepts psi merged with the fixed part.
// ---------------------------------------------------------------------------

struct NodeList {
    LabelMultiset fixed; // sorted
    int residual = 0;

    bool allows(std::span<const Label> candidate, const Problem& p) const {
        if (static_cast<int>(candidate.size()) != residual) return false;
        return p.node_ok(merged_multiset(fixed, candidate));
    }
};

struct EdgeList {
    LabelMultiset fixed; // sorted, |fixed| + residual <= 2
    int residual = 0;

    bool allows(std::span<const Label> candidate, const Problem& p) const {
        if (static_cast<int>(candidate.size()) != residual) return false;
        return p.edge_ok(merged_multiset(fixed, candidate));
    }
};

/// An instance of the node-list variant Pi* (node_variant=true) or the
/// edge-list variant Pi× (node_variant=false) over semi-graph S.
/// node_of/edge_of map S's indices back into the structure the instance was
/// derived from (identity when built standalone).
struct ListInstance {
    SemiGraph S;
    std::vector<NodeId> node_of;
    std::vector<EdgeId> edge_of;
    bool node_variant = true;
    std::vector<NodeList> node_lists; // indexed by node of S (node variant)
    std::vector<EdgeList> edge_lists; // indexed by edge of S (edge variant)
    Problem base;
};

inline ListInstance make_node_instance(SemiGraph s, Problem base, std::vector<NodeList> lists) {
    ListInstance inst;
    inst.node_variant = true;
    inst.node_lists = std::move(lists);
    if (static_cast<int>(inst.node_lists.size()) != s.n())
        throw std::invalid_argument("make_node_instance: list count mismatch");
    for (NodeId v = 0; v < s.n(); ++v)
        if (inst.node_lists[v].residual != s.deg(v))
            throw std::invalid_argument("make_node_instance: residual != degree");
    inst.node_of.resize(s.n());
    std::iota(inst.node_of.begin(), inst.node_of.end(), 0);
    inst.edge_of.resize(s.m());
    std::iota(inst.edge_of.begin(), inst.edge_of.end(), 0);
    inst.S = std::move(s);
    inst.base = std::move(base);
    return inst;
}

inline ListInstance make_edge_instance(SemiGraph s, Problem base, std::vector<EdgeList> lists) {
    ListInstance inst;
    inst.node_variant = false;
    inst.edge_lists = std::move(lists);
    if (static_cast<int>(inst.edge_lists.size()) != s.m())
        throw std::invalid_argument("make_edge_instance: list count mismatch");
    for (EdgeId e = 0; e < s.m(); ++e)
        if (inst.edge_lists[e].residual != s.rank(e))
            throw std::invalid_argument("make_edge_instance: residual != rank");
    inst.node_of.resize(s.n());
    std::iota(inst.node_of.begin(), inst.node_of.end(), 0);
    inst.edge_of.resize(s.m());
    std::iota(inst.edge_of.begin(), inst.edge_of.end(), 0);
    inst.S = std::move(s);
    inst.base = std::move(base);
    return inst;
}

// ---------------------------------------------------------------------------
// Checking.
// ---------------------------------------------------------------------------

struct Violation {
    enum class Kind { Node, Edge };
    Kind kind;
    int id; // node or edge index
    LabelMultiset multiset;
};

inline nlohmann::json violations_to_json(const std::vector<Violation>& vs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : vs) {
        nlohmann::json labels = nlohmann::json::array();
        for (const auto& l : v.multiset) labels.push_back(label_to_json(l));
        out.push_back({{"kind", v.kind == Violation::Kind::Node ? "node" : "edge"},
                       {"id", v.id},
                       {"multiset", labels}});
    }
    return out;
}

inline void require_total(const Labeling& l, const char* who) {
    auto miss = l.unlabeled();
    if (miss.empty()) return;
    std::string msg = std::string(who) + ": labeling not total; unlabeled half-edges:";
    int shown = 0;
    for (const auto& h : miss) {
        msg += " (" + std::to_string(h.v) + "," + std::to_string(h.e) + ")";
        if (++shown == 8) {
            msg += " ...";
            break;
        }
    }
    throw std::invalid_argument(msg);
}

/// Universal checker: every node multiset must be in N_pi^{deg}, every edge
/// multiset in E_pi^{rank}. Empty result means valid.
inline std::vector<Violation> check_solution(const Problem& p, const SemiGraph& s,
                                             const Labeling& l) {
    require_total(l, "check_solution");
    std::vector<Violation> out;
    for (NodeId v = 0; v < s.n(); ++v) {
        auto ms = l.labels_at(v);
        if (!p.node_ok(ms)) out.push_back({Violation::Kind::Node, v, std::move(ms)});
    }
    for (EdgeId e = 0; e < s.m(); ++e) {
        auto ms = l.labels_on_edge(e);
        if (!p.edge_ok(ms)) out.push_back({Violation::Kind::Edge, e, std::move(ms)});
    }
    return out;
}

/// Checker for list instances: the listed side uses the residual constraint,
/// the other side uses the base problem's oracle.
inline std::vector<Violation> check_list_solution(const ListInstance& inst, const Labeling& l) {
    require_total(l, "check_list_solution");
    std::vector<Violation> out;
    for (NodeId v = 0; v < inst.S.n(); ++v) {
        auto ms = l.labels_at(v);
        bool ok = inst.node_variant ? inst.node_lists[v].allows(ms, inst.base)
                                    : inst.base.node_ok(ms);
        if (!ok) out.push_back({Violation::Kind::Node, v, std::move(ms)});
    }
    for (EdgeId e = 0; e < inst.S.m(); ++e) {
        auto ms = l.labels_on_edge(e);
        bool ok = inst.node_variant ? inst.base.edge_ok(ms)
                                    : inst.edge_lists[e].allows(ms, inst.base);
        if (!ok) out.push_back({Violation::Kind::Edge, e, std::move(ms)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Deriving list instances from a partially solved semi-graph.
// ---------------------------------------------------------------------------

/// Pi* instance for sub-structure `sub` of `full`: each node's fixed part is
/// the multiset of labels already assigned to its half-edges in `full`, the
/// residual is its degree in `sub`. Every half-edge of `sub` must still be
/// unlabeled.
inline ListInstance derive_node_lists(const Problem& p, const SemiGraph& full,
                                      const Labeling& partial, const SubSemiGraph& sub) {
    if (&partial.graph() != &full)
        throw std::invalid_argument("derive_node_lists: partial labeling not over the full graph");
    ListInstance inst;
    inst.node_variant = true;
    inst.S = sub.graph;
    inst.node_of = sub.node_of;
    inst.edge_of = sub.edge_of;
    inst.base = p;
    for (EdgeId es = 0; es < sub.graph.m(); ++es)
        for (int i = 0; i < sub.graph.rank(es); ++i) {
            NodeId vs = sub.graph.endpoint(es, i);
            if (partial.has(sub.node_of[vs], sub.edge_of[es]))
                throw std::invalid_argument("derive_node_lists: half-edge of sub already labeled");
        }
    inst.node_lists.resize(sub.graph.n());
    for (NodeId vs = 0; vs < sub.graph.n(); ++vs) {
        inst.node_lists[vs].fixed = partial.labels_at(sub.node_of[vs]);
        inst.node_lists[vs].residual = sub.graph.deg(vs);
    }
    return inst;
}

/// Pi× instance, dual of derive_node_lists over edges.
inline ListInstance derive_edge_lists(const Problem& p, const SemiGraph& full,
                                      const Labeling& partial, const SubSemiGraph& sub) {
    if (&partial.graph() != &full)
        throw std::invalid_argument("derive_edge_lists: partial labeling not over the full graph");
    ListInstance inst;
    inst.node_variant = false;
    inst.S = sub.graph;
    inst.node_of = sub.node_of;
    inst.edge_of = sub.edge_of;
    inst.base = p;
    for (EdgeId es = 0; es < sub.graph.m(); ++es)
        for (int i = 0; i < sub.graph.rank(es); ++i) {
            NodeId vs = sub.graph.endpoint(es, i);
            if (partial.has(sub.node_of[vs], sub.edge_of[es]))
                throw std::invalid_argument("derive_edge_lists: half-edge of sub already labeled");
        }
    inst.edge_lists.resize(sub.graph.m());
    for (EdgeId es = 0; es < sub.graph.m(); ++es) {
        inst.edge_lists[es].fixed = partial.labels_on_edge(sub.edge_of[es]);
        inst.edge_lists[es].residual = sub.graph.rank(es);
    }
    return inst;
}

} // namespace semilocal
