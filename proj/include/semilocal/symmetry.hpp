#pragma once

#include <cstdint>

#include "engine.hpp"
#include "mathutil.hpp"
#include "semigraph.hpp"

namespace semilocal {

/// Palette guarantee of the Linial-style reduction: the final palette is at
/// most kLinialK * dmax^2 (dmax >= 1). The fixed point of the iteration is
/// (next prime above 2*dmax)^2; the worst ratios occur at small dmax
/// (dmax = 1 gives 9, dmax = 4 gives 121/16), all below 10.
inline constexpr int kLinialK = 10;

/// Extra rounds beyond log*(id space) that the reduction schedules may use.
inline constexpr int kLinialExtraRounds = 8;

/// Cole-Vishkin slack: forest_3color uses at most log*(id space) + 10 rounds
/// (the bit-reduction tracks log*, plus six shift-down/eliminate rounds).
inline constexpr int kForestColorExtraRounds = 10;

struct LinialStep {
    std::uint64_t q; // prime field size, q > dmax * t
    int t;           // polynomial degree bound; q^(t+1) covers the palette
};

/// Schedule of color-reduction steps for an initial palette bound m0 and
/// degree bound d, identical at every node. Each step maps a palette m to
/// q^2 where q is the smallest prime > d*t whose degree-<=t polynomials can
/// encode m colors; it stops at the fixed point.
inline std::vector<LinialStep> linial_schedule(long double m0, int d) {
    std::vector<LinialStep> steps;
    if (d < 1) return steps;
    long double m = m0;
    for (;;) {
        std::uint64_t best_q = 0;
        int best_t = 0;
        for (int t = 1; t <= 200; ++t) {
            std::uint64_t q = next_prime_above(static_cast<std::uint64_t>(d) * t);
            if (pow_at_least(q, t + 1, m)) {
                best_q = q;
                best_t = t;
                break;
            }
        }
        if (best_q == 0) throw std::logic_error("linial_schedule: no feasible step");
        long double next = static_cast<long double>(best_q) * static_cast<long double>(best_q);
        if (next >= m) break;
        steps.push_back({best_q, best_t});
        m = next;
    }
    return steps;
}

/// Final palette the schedule lands on.
inline std::uint64_t linial_final_palette(long double m0, int d) {
    auto steps = linial_schedule(m0, d);
    long double m = m0;
    if (!steps.empty()) {
        std::uint64_t q = steps.back().q;
        m = static_cast<long double>(q) * static_cast<long double>(q);
    }
    return static_cast<std::uint64_t>(m);
}

namespace detail {

using BigColor = unsigned __int128;

inline std::vector<std::uint32_t> base_digits(BigColor c, std::uint64_t q, int t) {
    std::vector<std::uint32_t> d(t + 1);
    for (int i = 0; i <= t; ++i) {
        d[i] = static_cast<std::uint32_t>(c % q);
        c /= q;
    }
    return d;
}

inline std::uint64_t eval_poly(const std::vector<std::uint32_t>& digits, std::uint64_t x,
                               std::uint64_t q) {
    std::uint64_t acc = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) acc = (acc * x + *it) % q;
    return acc;
}

/// One Linial step: pick an evaluation point x where our polynomial differs
/// from every conflicting neighbor polynomial; q > d*t guarantees one
/// exists. The new color is x*q + p(x) < q^2.
inline BigColor linial_step(BigColor my, const std::vector<BigColor>& others,
                            const LinialStep& st) {
    auto mine = base_digits(my, st.q, st.t);
    std::vector<std::vector<std::uint32_t>> theirs;
    theirs.reserve(others.size());
    for (auto c : others) theirs.push_back(base_digits(c, st.q, st.t));
    for (std::uint64_t x = 0; x < st.q; ++x) {
        std::uint64_t mv = eval_poly(mine, x, st.q);
        bool clash = false;
        for (const auto& dg : theirs)
            if (eval_poly(dg, x, st.q) == mv) {
                clash = true;
                break;
            }
        if (!clash) return static_cast<BigColor>(x) * st.q + mv;
    }
    throw std::logic_error("linial_step: no evaluation point (degree bound violated?)");
}

} // namespace detail

struct ColorResult {
    std::vector<std::int64_t> color;
    long rounds = 0;
    std::uint64_t palette = 1;
};

/// Proper node coloring with palette <= kLinialK * dmax^2 in
/// log*(id space) + O(1) rounds. Initial colors are the node identifiers.
inline ColorResult linial_color(const SemiGraph& s, int dmax) {
    if (s.underlying_max_degree() > dmax)
        throw std::invalid_argument("linial_color: degree exceeds dmax");
    ColorResult res;
    res.color.assign(s.n(), 0);
    if (s.n() == 0) return res;
    if (dmax < 1 || s.underlying_max_degree() == 0) {
        // No rank-2 edges: properness is vacuous.
        res.palette = 1;
        return res;
    }
    auto schedule = linial_schedule(static_cast<long double>(s.id_bound()), dmax);
    res.palette = linial_final_palette(static_cast<long double>(s.id_bound()), dmax);

    struct State {
        detail::BigColor color;
        std::size_t step = 0;
    };
    std::vector<State> init(s.n());
    for (NodeId v = 0; v < s.n(); ++v) init[v].color = s.id(v) - 1;

    auto prog = [&](const NodeContext& ctx, State& st, std::span<const Incoming<detail::BigColor>> in,
                    Outbox<detail::BigColor>& out) -> bool {
        bool isolated = true;
        for (const auto& p : ctx.ports)
            if (p.rank == 2) isolated = false;
        if (isolated) {
            st.color = 0;
            return true;
        }
        if (!in.empty()) {
            std::vector<detail::BigColor> others;
            others.reserve(in.size());
            for (const auto& msg : in) others.push_back(msg.payload);
            st.color = detail::linial_step(st.color, others, schedule[st.step]);
            ++st.step;
        }
        if (st.step == schedule.size()) return true;
        out.broadcast(st.color);
        return false;
    };
    auto run = run_rounds<detail::BigColor>(s, std::move(init), prog);
    res.rounds = run.rounds;
    for (NodeId v = 0; v < s.n(); ++v) res.color[v] = static_cast<std::int64_t>(run.states[v].color);
    for (EdgeId e = 0; e < s.m(); ++e)
        if (s.rank(e) == 2 && res.color[s.endpoint(e, 0)] == res.color[s.endpoint(e, 1)])
            throw std::logic_error("linial_color: output not proper");
    return res;
}

/// Proper coloring of the rank-2 edges under line-graph adjacency, palette
/// <= kLinialK * (2*dmax - 1)^2. Each line-graph round costs one graph round
/// since adjacent edges share a node.
struct EdgeColorResult {
    std::vector<std::int64_t> color; // per edge, -1 for rank != 2
    long rounds = 0;
    std::uint64_t palette = 1;
};

inline EdgeColorResult line_graph_color(const SemiGraph& s, int dmax) {
    if (s.underlying_max_degree() > dmax)
        throw std::invalid_argument("line_graph_color: degree exceeds dmax");
    EdgeColorResult res;
    res.color.assign(s.m(), -1);
    int d_line = 0;
    for (EdgeId e = 0; e < s.m(); ++e)
        if (s.rank(e) == 2) d_line = std::max(d_line, s.edge_degree(e));
    bool any_edge = false;
    for (EdgeId e = 0; e < s.m(); ++e) any_edge |= s.rank(e) == 2;
    if (!any_edge) return res;
    if (d_line == 0) {
        // No two rank-2 edges are adjacent; a single color suffices.
        for (EdgeId e = 0; e < s.m(); ++e)
            if (s.rank(e) == 2) res.color[e] = 0;
        return res;
    }

    long double m0 = static_cast<long double>(s.id_bound()) * static_cast<long double>(s.id_bound());
    auto schedule = d_line >= 1 ? linial_schedule(m0, d_line) : std::vector<LinialStep>{};
    res.palette = d_line >= 1 ? linial_final_palette(m0, d_line) : 1;

    struct State {
        std::vector<detail::BigColor> ecolor; // by port
        std::size_t step = 0;
    };
    using Msg = std::vector<std::pair<EdgeId, detail::BigColor>>;

    std::vector<State> init(s.n());
    for (NodeId v = 0; v < s.n(); ++v) {
        auto inc = s.incident(v);
        init[v].ecolor.assign(inc.size(), 0);
        for (std::size_t i = 0; i < inc.size(); ++i) {
            EdgeId e = inc[i];
            if (s.rank(e) != 2) continue;
            std::uint64_t a = s.id(s.endpoint(e, 0)), b = s.id(s.endpoint(e, 1));
            if (a > b) std::swap(a, b);
            init[v].ecolor[i] =
                static_cast<detail::BigColor>(a - 1) * s.id_bound() + (b - 1);
        }
    }

    auto prog = [&](const NodeContext& ctx, State& st, std::span<const Incoming<Msg>> in,
                    Outbox<Msg>& out) -> bool {
        bool has_edge = false;
        for (const auto& p : ctx.ports)
            if (p.rank == 2) has_edge = true;
        if (!has_edge || schedule.empty()) return true;
        if (!in.empty()) {
            // Colors of the far side's incident edges, keyed by our port.
            std::vector<const Msg*> far(ctx.ports.size(), nullptr);
            for (const auto& msg : in) far[msg.port] = &msg.payload;
            std::vector<detail::BigColor> next(st.ecolor.size());
            for (std::size_t i = 0; i < ctx.ports.size(); ++i) {
                if (ctx.ports[i].rank != 2) continue;
                EdgeId e = ctx.ports[i].edge;
                std::vector<detail::BigColor> adj;
                for (std::size_t j = 0; j < ctx.ports.size(); ++j)
                    if (j != i && ctx.ports[j].rank == 2) adj.push_back(st.ecolor[j]);
                if (far[i])
                    for (const auto& [fe, fc] : *far[i])
                        if (fe != e) adj.push_back(fc);
                next[i] = detail::linial_step(st.ecolor[i], adj, schedule[st.step]);
            }
            for (std::size_t i = 0; i < ctx.ports.size(); ++i)
                if (ctx.ports[i].rank == 2) st.ecolor[i] = next[i];
            ++st.step;
        }
        if (st.step == schedule.size()) return true;
        Msg mine;
        for (std::size_t i = 0; i < ctx.ports.size(); ++i)
            if (ctx.ports[i].rank == 2) mine.emplace_back(ctx.ports[i].edge, st.ecolor[i]);
        out.broadcast(mine);
        return false;
    };
    auto run = run_rounds<Msg>(s, std::move(init), prog);
    res.rounds = run.rounds;
    for (NodeId v = 0; v < s.n(); ++v) {
        auto inc = s.incident(v);
        for (std::size_t i = 0; i < inc.size(); ++i) {
            if (s.rank(inc[i]) != 2) continue;
            auto c = static_cast<std::int64_t>(run.states[v].ecolor[i]);
            if (res.color[inc[i]] == -1)
                res.color[inc[i]] = c;
            else if (res.color[inc[i]] != c)
                throw std::logic_error("line_graph_color: endpoints disagree");
        }
    }
    for (NodeId v = 0; v < s.n(); ++v) {
        auto inc = s.incident(v);
        for (std::size_t i = 0; i < inc.size(); ++i)
            for (std::size_t j = i + 1; j < inc.size(); ++j)
                if (s.rank(inc[i]) == 2 && s.rank(inc[j]) == 2 &&
                    res.color[inc[i]] == res.color[inc[j]])
                    throw std::logic_error("line_graph_color: output not proper");
    }
    return res;
}

/// Number of Cole-Vishkin bit-reduction iterations needed from an id bound
/// until at most 6 colors remain; shared by all nodes.
inline int cv_iterations(std::uint64_t id_bound) {
    int len = 1;
    while ((static_cast<std::uint64_t>(1) << len) <= id_bound && len < 64) ++len;
    int it = 0;
    while (len > 3) {
        int maxval = 2 * (len - 1) + 1;
        int nl = 1;
        while ((1 << nl) <= maxval) ++nl;
        len = nl;
        ++it;
    }
    return it + 1; // one final step maps 3-bit colors into {0..5}
}

/// Proper 3-coloring of a rooted forest given per-node parent edges (-1 for
/// roots). Cole-Vishkin reduction to 6 colors, then three shift-down +
/// eliminate rounds. Rounds <= log*(id space) + kForestColorExtraRounds.
inline ColorResult forest_3color(const SemiGraph& s, const std::vector<EdgeId>& parent_edge) {
    if (static_cast<int>(parent_edge.size()) != s.n())
        throw std::invalid_argument("forest_3color: parent map size mismatch");
    // Validate shape: parent edges are incident rank-2 edges and following
    // parents never cycles.
    {
        std::vector<int> state(s.n(), 0);
        for (NodeId v = 0; v < s.n(); ++v) {
            EdgeId pe = parent_edge[v];
            if (pe == -1) continue;
            if (pe < 0 || pe >= s.m() || s.rank(pe) != 2 || !s.has_endpoint(pe, v))
                throw std::invalid_argument("forest_3color: bad parent edge");
        }
        for (NodeId v = 0; v < s.n(); ++v) {
            NodeId u = v;
            std::vector<NodeId> path;
            while (u != -1 && state[u] == 0) {
                state[u] = 1;
                path.push_back(u);
                u = parent_edge[u] == -1 ? -1 : s.other_endpoint(parent_edge[u], u);
            }
            if (u != -1 && state[u] == 1)
                throw std::invalid_argument("forest_3color: parent map cyclic");
            for (NodeId w : path) state[w] = 2;
        }
    }

    const int r_cv = cv_iterations(s.id_bound());
    const int total_steps = r_cv + 6; // 3 x (shift-down, eliminate)

    struct MsgT {
        std::int64_t color;
        std::uint8_t to_parent;
    };

    // The parent port is part of each node's input, carried in its state.
    std::vector<int> parent_port(s.n(), -1);
    for (NodeId v = 0; v < s.n(); ++v) {
        if (parent_edge[v] == -1) continue;
        auto inc = s.incident(v);
        for (std::size_t i = 0; i < inc.size(); ++i)
            if (inc[i] == parent_edge[v]) parent_port[v] = static_cast<int>(i);
    }

    struct State2 {
        std::int64_t color;
        std::int64_t parent_color = -1;
        std::vector<std::int64_t> child_colors;
        int my_parent_port;
        int step = 0;
    };
    std::vector<State2> init2(s.n());
    for (NodeId v = 0; v < s.n(); ++v) {
        init2[v].color = static_cast<std::int64_t>(s.id(v));
        init2[v].my_parent_port = parent_port[v];
    }

    auto send_all = [](const NodeContext& ctx, const State2& st, Outbox<MsgT>& out) {
        for (int p = 0; p < static_cast<int>(ctx.ports.size()); ++p)
            if (ctx.ports[p].rank == 2)
                out.send(p, MsgT{st.color, static_cast<std::uint8_t>(p == st.my_parent_port)});
    };

    auto prog2 = [&, r_cv, total_steps](const NodeContext& ctx, State2& st,
                                        std::span<const Incoming<MsgT>> in,
                                        Outbox<MsgT>& out) -> bool {
        if (st.step > 0) {
            st.child_colors.clear();
            for (const auto& msg : in) {
                if (msg.port == st.my_parent_port)
                    st.parent_color = msg.payload.color;
                else if (msg.payload.to_parent)
                    st.child_colors.push_back(msg.payload.color);
            }
            int op = st.step - 1; // operation applied this round
            if (op < r_cv) {
                // Bit reduction: lowest differing bit against the parent.
                std::int64_t pc =
                    st.my_parent_port == -1 ? (st.color ^ 1) : st.parent_color;
                int i = 0;
                while (((st.color >> i) & 1) == ((pc >> i) & 1)) ++i;
                st.color = 2 * i + ((st.color >> i) & 1);
            } else {
                int phase = op - r_cv; // 0..5
                if (phase % 2 == 0) {
                    // Shift-down: adopt the parent's color; roots pick the
                    // smallest color in {0,1,2} different from their own.
                    if (st.my_parent_port != -1)
                        st.color = st.parent_color;
                    else
                        st.color = st.color == 0 ? 1 : 0;
                } else {
                    int victim = 5 - phase / 2; // eliminate 5, then 4, then 3
                    if (st.color == victim) {
                        bool used[3] = {false, false, false};
                        if (st.my_parent_port != -1 && st.parent_color < 3)
                            used[st.parent_color] = true;
                        for (auto c : st.child_colors)
                            if (c < 3) used[c] = true;
                        for (int c = 0; c < 3; ++c)
                            if (!used[c]) {
                                st.color = c;
                                break;
                            }
                    }
                }
            }
        }
        if (st.step == total_steps) return true;
        send_all(ctx, st, out);
        ++st.step;
        return false;
    };

    auto run = run_rounds<MsgT>(s, std::move(init2), prog2);
    ColorResult res;
    res.rounds = run.rounds;
    res.palette = 3;
    res.color.resize(s.n());
    for (NodeId v = 0; v < s.n(); ++v) res.color[v] = run.states[v].color;
    for (NodeId v = 0; v < s.n(); ++v) {
        if (res.color[v] < 0 || res.color[v] > 2)
            throw std::logic_error("forest_3color: color out of palette");
        if (parent_edge[v] != -1 &&
            res.color[v] == res.color[s.other_endpoint(parent_edge[v], v)])
            throw std::logic_error("forest_3color: output not proper");
    }
    return res;
}

} // namespace semilocal
