#pragma once

#include "baselines.hpp"
#include "complexity.hpp"
#include "concrete.hpp"
#include "decomp.hpp"
#include "engine.hpp"
#include "problems.hpp"

namespace semilocal {

// Budget constants, fixed here once; round_budget() composes them into an
// explicit upper bound that every pipeline run asserts against.
inline constexpr int kBudgetStarPhaseRounds = 5; // per star family (C5)
inline constexpr int kStarPhaseRounds = 4;       // charged: gather 2 + scatter 2
inline constexpr int kBudgetDeriveRounds = 1;    // one exchange for chi(e)
inline constexpr int kBudgetSlack = 8;

struct PipelineParams {
    long n = 0;
    long k = 0;
    int a = 1;
    int b = 2;
    int rho = 1;
    double g = 0.0;
    std::string f_descr;
};

struct PipelineResult {
    Labeling labels;
    RoundLedger ledger;
    PipelineParams params;
    long budget = 0;
    bool valid = false;

    nlohmann::json to_json() const {
        auto led = ledger.to_json();
        return {{"valid", valid},
                {"rounds", led.at("rounds")},
                {"total", ledger.total()},
                {"budget", budget},
                {"k", params.k},
                {"params",
                 {{"n", params.n},
                  {"a", params.a},
                  {"b", params.b},
                  {"rho", params.rho},
                  {"g", params.g},
                  {"f", params.f_descr}}}};
    }
};

inline int gather_radius_bound(long n, long k) {
    double lg = std::log(static_cast<double>(std::max(n, 1L))) /
                std::log(static_cast<double>(std::max(k, 2L)));
    return static_cast<int>(std::ceil(4.0 * (lg + 1.0) + 2.0));
}

/// Explicit round budget of the tree pipeline:
///   decompose + A's declared bound + derive + gather/scatter + slack.
inline long round_budget_tree(const PipelineParams& p, const TrulyLocalAlgo& algo,
                              std::uint64_t id_space) {
    long iters = ceil_log_int(static_cast<std::uint64_t>(std::max(p.k, 2L)),
                              static_cast<std::uint64_t>(std::max(p.n, 1L))) +
                 1;
    long a_bound = static_cast<long>(
        std::ceil(algo.round_bound(static_cast<double>(p.k), id_space)));
    return kRoundsPerDecompIteration * iters + a_bound + kBudgetDeriveRounds +
           2L * gather_radius_bound(p.n, p.k) + kBudgetSlack;
}

/// Explicit round budget of the arboricity pipeline:
///   decompose + forest coloring + A's declared bound + 6a star phases + slack.
inline long round_budget_arb(const PipelineParams& p, const TrulyLocalAlgo& algo,
                             std::uint64_t id_space) {
    double ratio = static_cast<double>(p.k) / p.a;
    long iters = static_cast<long>(std::ceil(
                     kDecompKappa * std::log(static_cast<double>(std::max(p.n, 2L))) /
                     std::log(ratio))) +
                 1;
    long a_bound = static_cast<long>(
        std::ceil(algo.round_bound(static_cast<double>(p.k), id_space)));
    long split_bound = 1 + log_star(static_cast<double>(id_space)) + kForestColorExtraRounds;
    return kRoundsPerDecompIteration * iters + split_bound + a_bound +
           6L * p.a * kBudgetStarPhaseRounds + kBudgetSlack;
}

using ListSolver = std::function<Labeling(const ListInstance&)>;

namespace detail_pipeline {

inline void merge_sub_labels(Labeling& into, const SubSemiGraph& sub, const Labeling& from) {
    const SemiGraph& g = sub.graph;
    for (EdgeId es = 0; es < g.m(); ++es)
        for (int i = 0; i < g.rank(es); ++i) {
            NodeId vs = g.endpoint(es, i);
            auto l = from.get(vs, es);
            if (l) into.set(sub.node_of[vs], sub.edge_of[es], *l);
        }
}

inline void require_pipeline_valid(const Problem& p, const SemiGraph& s, const Labeling& l,
                                   const char* who) {
    auto vs = check_solution(p, s, l);
    if (!vs.empty())
        throw std::logic_error(std::string(who) + ": final solution invalid (" +
                               std::to_string(vs.size()) + " violations)");
}

} // namespace detail_pipeline

/// The tree transformation: rake-and-compress with k = max(2, floor(g(n))),
/// run A on the compressed part T_C, then complete the raked part T_R by
/// solving the edge-list variant per connected component (centrally at the
/// component's highest node, paid for by a gather and a scatter of the
/// lemma's diameter bound).
///
/// Requires that the edge-list variant of `problem` admits a valid solution
/// on any valid instance, witnessed by `solver` never failing.
inline PipelineResult tree_pipeline(const Problem& problem, const TrulyLocalAlgo& algo,
                                    const ListSolver& solver, const SemiGraph& t) {
    if (!is_tree(t)) throw std::invalid_argument("tree_pipeline: input is not a tree");

    PipelineParams params;
    params.n = t.n();
    params.a = 1;
    params.b = 2;
    params.rho = 1;
    params.f_descr = algo.f.descr;
    params.g = t.n() >= 2 ? solve_g(algo.f, static_cast<double>(t.n())) : 2.0;
    params.k = std::max(2L, static_cast<long>(std::floor(params.g)));

    PipelineResult res;
    res.params = params;
    int k = static_cast<int>(params.k);

    auto rc = rake_and_compress(t, k);
    res.ledger.charge("decompose", rc.rounds);
    auto rc_rep = rc_validate(t, k, rc.layers);
    if (!rc_rep.ok) throw std::logic_error("tree_pipeline: rake-and-compress lemma violated");

    std::vector<NodeId> compressed, raked;
    for (NodeId v = 0; v < t.n(); ++v)
        (rc.layers.kind[v] == LayerKind::Compress ? compressed : raked).push_back(v);

    Labeling partial(t);
    auto t_c = induce_nodes(t, compressed, true);
    if (t_c.graph.m() > 0 || t_c.graph.n() > 0) {
        if (t_c.graph.underlying_max_degree() > k)
            throw std::logic_error("tree_pipeline: T_C degree bound violated");
        auto stats = algo.solve(t_c.graph);
        res.ledger.charge("solve-A", stats.rounds);
        detail_pipeline::merge_sub_labels(partial, t_c, stats.labels);
    }

    if (!raked.empty()) {
        auto t_r = induce_nodes(t, raked, true);
        res.ledger.charge("derive-lists", kBudgetDeriveRounds);
        auto inst = derive_edge_lists(problem, t, partial, t_r);
        int radius = gather_radius_bound(params.n, params.k);
        // All components gather at their highest node in parallel; the lemma
        // bounds every component diameter by the gather radius.
        res.ledger.charge("gather-solve-scatter", 2L * radius);
        auto completed = solver(inst);
        detail_pipeline::merge_sub_labels(partial, t_r, completed);
    }

    detail_pipeline::require_pipeline_valid(problem, t, partial, "tree_pipeline");
    res.labels = std::move(partial);
    res.budget = round_budget_tree(params, algo, t.id_bound());
    if (res.ledger.total() > res.budget)
        throw std::logic_error("tree_pipeline: round budget exceeded: " +
                               std::to_string(res.ledger.total()) + " > " +
                               std::to_string(res.budget));
    res.valid = true;
    return res;
}

/// The bounded-arboricity transformation: decompose with k = floor(g(n)^rho)
/// and b = 2a, run A on the typical part G[E_2], then complete the 6a star
/// families F_{i,j} one after another by solving the node-list variant per
/// star (a constant number of rounds each).
///
/// Requires the node-list variant of `problem` to admit a valid solution on
/// any valid instance, and a <= g(n)^rho / 5; inputs violating the latter
/// are rejected.
inline PipelineResult arb_pipeline(const Problem& problem, const TrulyLocalAlgo& algo,
                                   const ListSolver& solver, const SemiGraph& g, int a,
                                   int rho = 2) {
    for (EdgeId e = 0; e < g.m(); ++e)
        if (g.rank(e) != 2)
            throw std::invalid_argument("arb_pipeline: input must be a graph (rank-2 edges)");
    if (a < 1 || rho < 1) throw std::invalid_argument("arb_pipeline: need a >= 1, rho >= 1");

    PipelineParams params;
    params.n = g.n();
    params.a = a;
    params.b = 2 * a;
    params.rho = rho;
    params.f_descr = algo.f.descr;
    if (g.n() >= 2) {
        params.g = solve_g(algo.f, static_cast<double>(g.n()));
        params.k = std::max(2L, static_cast<long>(
                                    std::floor(std::pow(params.g, static_cast<double>(rho)))));
    } else {
        params.g = 2.0;
        params.k = 5L * a;
    }
    if (params.k < 5L * a)
        throw std::invalid_argument(
            "arb_pipeline: constraint 5a <= k = g(n)^rho violated (a=" + std::to_string(a) +
            ", k=" + std::to_string(params.k) + "); raise rho");

    PipelineResult res;
    res.params = params;
    int k = static_cast<int>(params.k);

    auto dec = arboricity_decompose(g, a, 2 * a, k);
    res.ledger.charge("decompose", dec.rounds);
    auto rep = arb_validate(dec, a, k);
    if (!rep.ok) throw std::logic_error("arb_pipeline: decomposition lemma violated");

    auto split = split_edges(g, dec, k, a);
    res.ledger.charge("forest-color", split.rounds);

    Labeling partial(g);
    if (!split.typical.empty()) {
        if (induced_max_degree(g, split.typical) > k)
            throw std::logic_error("arb_pipeline: typical-degree lemma violated");
        auto e2 = induce_edges(g, split.typical);
        auto stats = algo.solve(e2.graph);
        res.ledger.charge("solve-A", stats.rounds);
        detail_pipeline::merge_sub_labels(partial, e2, stats.labels);
    }

    for (int i = 0; i < 2 * a; ++i)
        for (int j = 0; j < 3; ++j) {
            const auto& family = split.stars[i][j];
            if (family.empty()) continue;
            auto sub = induce_edges(g, family);
            auto inst = derive_node_lists(problem, g, partial, sub);
            auto completed = solver(inst);
            detail_pipeline::merge_sub_labels(partial, sub, completed);
            res.ledger.charge("star-phases", kStarPhaseRounds);
        }

    detail_pipeline::require_pipeline_valid(problem, g, partial, "arb_pipeline");
    res.labels = std::move(partial);
    res.budget = round_budget_arb(params, algo, g.id_bound());
    if (res.ledger.total() > res.budget)
        throw std::logic_error("arb_pipeline: round budget exceeded: " +
                               std::to_string(res.ledger.total()) + " > " +
                               std::to_string(res.budget));
    res.valid = true;
    return res;
}

/// Smallest rho making the arboricity pipeline's constraint 5a <= g(n)^rho
/// hold (never below the requested minimum).
inline int pick_rho(const ComplexityFn& f, long n, int a, int min_rho = 2) {
    double g = n >= 2 ? solve_g(f, static_cast<double>(n)) : 2.0;
    int rho = min_rho;
    while (std::floor(std::pow(g, static_cast<double>(rho))) < 5.0 * a && rho < 256) ++rho;
    return rho;
}

} // namespace semilocal
