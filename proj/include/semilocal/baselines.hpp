#pragma once

#include "complexity.hpp"
#include "concrete.hpp"
#include "engine.hpp"
#include "symmetry.hpp"

namespace semilocal {

/// Declared round bounds of the baselines below, as
///   rounds <= f(Delta) + kBaselineLogstarCoeff * log*(id space) + kBaselineAdditive.
/// The quadratic coefficients dominate the class-iteration phase, whose
/// length is the distance-2 palette: at most kLinialK*(2*Delta-1)^2 <= 40*Delta^2
/// for the edge problems and kLinialK*Delta^2 for node coloring.
inline constexpr double kEdgeBaselineQuad = 40.0;
inline constexpr double kNodeBaselineQuad = 10.0;
inline constexpr int kBaselineLogstarCoeff = 2;
inline constexpr int kBaselineAdditive = 24;

struct SolveStats {
    Labeling labels;
    long rounds = 0;
};

/// A truly-local algorithm: a solver measured in engine rounds plus its
/// declared complexity function, kept with explicit constants so that g(n)
/// is well defined.
struct TrulyLocalAlgo {
    std::string name;
    std::string problem; // which concrete problem the output satisfies
    ComplexityFn f;
    int c2 = kBaselineLogstarCoeff;
    int c3 = kBaselineAdditive;
    std::function<SolveStats(const SemiGraph&)> solve;

    double round_bound(double delta, std::uint64_t id_space) const {
        return f.eval(delta) + c2 * log_star(static_cast<double>(id_space)) + c3;
    }
};

namespace detail {

/// Greedy processing of distance-2 edge color classes in increasing order.
/// Per round, the edges of the current class fix their value; both endpoints
/// evaluate the same deterministic rule over the same adjacent information,
/// so no agreement message is needed. Newly fixed values are broadcast as
/// (edge, value) pairs.
struct EdgeClassState {
    std::vector<std::int64_t> d2;   // by port; -1 for rank!=2 ports
    std::vector<int> final_color;   // by port; 0 = undecided (edge coloring)
    std::vector<std::vector<int>> far_final; // finals heard per port
    std::uint8_t matched = 0;       // matching only
    std::vector<std::uint8_t> far_matched;  // matching: per-port peer status
    long round = 0;
};

} // namespace detail

/// (edge-degree+1)-edge coloring in f(Delta) = 40*Delta^2 (+ log*) rounds:
/// distance-2 color the edges, then every class greedily takes the smallest
/// color part unused on adjacent edges. Emits (deg(u), c) / (deg(v), c) on
/// the half-edges and D on rank-1 edges.
inline TrulyLocalAlgo baseline_edgecolor() {
    TrulyLocalAlgo algo;
    algo.name = "baseline-edgecolor";
    algo.problem = "edgecolor";
    algo.f = ComplexityFn::quadratic(kEdgeBaselineQuad);
    algo.solve = [](const SemiGraph& s) -> SolveStats {
        Labeling out(s);
        for (EdgeId e = 0; e < s.m(); ++e)
            if (s.rank(e) == 1) out.set(s.endpoint(e, 0), e, Label::d());
        auto d2 = line_graph_color(s, std::max(1, s.underlying_max_degree()));
        long palette = static_cast<long>(d2.palette);

        using Msg = std::vector<std::pair<EdgeId, int>>;
        std::vector<detail::EdgeClassState> init(s.n());
        for (NodeId v = 0; v < s.n(); ++v) {
            auto inc = s.incident(v);
            init[v].d2.assign(inc.size(), -1);
            init[v].final_color.assign(inc.size(), 0);
            init[v].far_final.assign(inc.size(), {});
            for (std::size_t i = 0; i < inc.size(); ++i)
                if (s.rank(inc[i]) == 2) init[v].d2[i] = d2.color[inc[i]];
        }
        auto prog = [&](const NodeContext& ctx, detail::EdgeClassState& st,
                        std::span<const Incoming<Msg>> in, Outbox<Msg>& out) -> bool {
            for (const auto& msg : in)
                for (const auto& [e, c] : msg.payload)
                    if (e != ctx.ports[msg.port].edge) st.far_final[msg.port].push_back(c);
            Msg fresh;
            int undecided = 0;
            for (std::size_t i = 0; i < ctx.ports.size(); ++i) {
                if (ctx.ports[i].rank != 2 || st.final_color[i] != 0) continue;
                if (st.d2[i] != st.round) {
                    ++undecided;
                    continue;
                }
                std::vector<std::uint8_t> used(ctx.ports.size() + st.far_final[i].size() + 2, 0);
                auto mark = [&](int c) {
                    if (c > 0 && c < static_cast<int>(used.size())) used[c] = 1;
                };
                for (std::size_t j = 0; j < ctx.ports.size(); ++j)
                    if (j != i) mark(st.final_color[j]);
                for (int c : st.far_final[i]) mark(c);
                int c = 1;
                while (used[c]) ++c;
                st.final_color[i] = c;
                fresh.emplace_back(ctx.ports[i].edge, c);
            }
            if (!fresh.empty()) out.broadcast(fresh);
            ++st.round;
            (void)palette;
            return undecided == 0;
        };
        auto run = run_rounds<Msg>(s, std::move(init), prog);
        for (NodeId v = 0; v < s.n(); ++v) {
            auto inc = s.incident(v);
            for (std::size_t i = 0; i < inc.size(); ++i)
                if (s.rank(inc[i]) == 2)
                    out.set(v, inc[i], Label::pair(s.rank2_deg(v), run.states[v].final_color[i]));
        }
        return {std::move(out), d2.rounds + run.rounds};
    };
    return algo;
}

/// Maximal matching in f(Delta) = 40*Delta^2 (+ log*) rounds: distance-2
/// color the edges, process classes in order, an edge joins the matching iff
/// both endpoints are still unmatched, then one status round fixes P/O.
inline TrulyLocalAlgo baseline_matching() {
    TrulyLocalAlgo algo;
    algo.name = "baseline-matching";
    algo.problem = "matching";
    algo.f = ComplexityFn::quadratic(kEdgeBaselineQuad);
    algo.solve = [](const SemiGraph& s) -> SolveStats {
        Labeling out(s);
        for (EdgeId e = 0; e < s.m(); ++e)
            if (s.rank(e) == 1) out.set(s.endpoint(e, 0), e, Label::d());
        auto d2 = line_graph_color(s, std::max(1, s.underlying_max_degree()));
        long palette = static_cast<long>(d2.palette);

        struct Msg {
            std::uint8_t now_matched;
        };
        std::vector<detail::EdgeClassState> init(s.n());
        for (NodeId v = 0; v < s.n(); ++v) {
            auto inc = s.incident(v);
            init[v].d2.assign(inc.size(), -1);
            init[v].final_color.assign(inc.size(), 0); // 1 = in matching, 2 = out
            init[v].far_matched.assign(inc.size(), 0);
            for (std::size_t i = 0; i < inc.size(); ++i)
                if (s.rank(inc[i]) == 2) init[v].d2[i] = d2.color[inc[i]];
        }
        auto prog = [&](const NodeContext& ctx, detail::EdgeClassState& st,
                        std::span<const Incoming<Msg>> in, Outbox<Msg>& out) -> bool {
            bool has_edge = false;
            for (const auto& p : ctx.ports)
                if (p.rank == 2) has_edge = true;
            if (!has_edge) return true;
            for (const auto& msg : in)
                if (msg.payload.now_matched) st.far_matched[msg.port] = 1;
            bool became_matched = false;
            for (std::size_t i = 0; i < ctx.ports.size(); ++i) {
                if (ctx.ports[i].rank != 2 || st.d2[i] != st.round) continue;
                if (!st.matched && !st.far_matched[i]) {
                    st.final_color[i] = 1;
                    st.matched = 1;
                    became_matched = true;
                } else {
                    st.final_color[i] = 2;
                }
            }
            if (became_matched) out.broadcast(Msg{1});
            ++st.round;
            // One extra round after the classes lets final statuses settle.
            return st.round > palette;
        };
        auto run = run_rounds<Msg>(s, std::move(init), prog);
        for (NodeId v = 0; v < s.n(); ++v) {
            auto inc = s.incident(v);
            const auto& st = run.states[v];
            for (std::size_t i = 0; i < inc.size(); ++i) {
                if (s.rank(inc[i]) != 2) continue;
                if (st.final_color[i] == 1)
                    out.set(v, inc[i], Label::m());
                else
                    out.set(v, inc[i], st.matched ? Label::p() : Label::o());
            }
        }
        return {std::move(out), d2.rounds + run.rounds};
    };
    return algo;
}

/// (deg+1)-coloring in f(Delta) = 10*Delta^2 (+ log*) rounds: Linial to at
/// most 10*Delta^2 colors, then classes recolor greedily in descending order.
inline TrulyLocalAlgo baseline_degplus1() {
    TrulyLocalAlgo algo;
    algo.name = "baseline-degplus1";
    algo.problem = "degplus1";
    algo.f = ComplexityFn::quadratic(kNodeBaselineQuad);
    algo.solve = [](const SemiGraph& s) -> SolveStats {
        auto lin = linial_color(s, std::max(1, s.underlying_max_degree()));
        long palette = static_cast<long>(lin.palette);

        struct State {
            std::int64_t cls;
            int final_color = 0;
            std::vector<int> nbr_final; // by port
            long round = 0;
        };
        struct Msg {
            int color;
        };
        std::vector<State> init(s.n());
        for (NodeId v = 0; v < s.n(); ++v) {
            init[v].cls = lin.color[v];
            init[v].nbr_final.assign(s.incident(v).size(), 0);
        }
        auto prog = [&](const NodeContext& ctx, State& st, std::span<const Incoming<Msg>> in,
                        Outbox<Msg>& out) -> bool {
            bool has_edge = false;
            for (const auto& p : ctx.ports)
                if (p.rank == 2) has_edge = true;
            if (!has_edge) {
                st.final_color = 1;
                return true;
            }
            for (const auto& msg : in) st.nbr_final[msg.port] = msg.payload.color;
            // Classes run from palette-1 down to 0; class c acts in round palette-1-c.
            if (st.final_color == 0 && st.cls == palette - 1 - st.round) {
                std::vector<std::uint8_t> used(ctx.ports.size() + 2, 0);
                for (std::size_t i = 0; i < ctx.ports.size(); ++i) {
                    int c = st.nbr_final[i];
                    if (c > 0 && c < static_cast<int>(used.size())) used[c] = 1;
                }
                int c = 1;
                while (used[c]) ++c;
                st.final_color = c;
                out.broadcast(Msg{c});
                ++st.round;
                return true;
            }
            ++st.round;
            return false;
        };
        auto run = run_rounds<Msg>(s, std::move(init), prog);
        Labeling out(s);
        for (NodeId v = 0; v < s.n(); ++v)
            for (EdgeId e : s.incident(v)) out.set(v, e, Label::color(run.states[v].final_color));
        return {std::move(out), lin.rounds + run.rounds};
    };
    return algo;
}

inline TrulyLocalAlgo baseline_for(const std::string& problem) {
    if (problem == "edgecolor") return baseline_edgecolor();
    if (problem == "matching") return baseline_matching();
    if (problem == "degplus1") return baseline_degplus1();
    throw std::invalid_argument("baseline_for: unknown problem " + problem);
}

inline Problem problem_for(const std::string& problem) {
    if (problem == "edgecolor") return edgecolor_problem();
    if (problem == "matching") return matching_problem();
    if (problem == "degplus1") return degplus1_problem();
    throw std::invalid_argument("problem_for: unknown problem " + problem);
}

} // namespace semilocal
