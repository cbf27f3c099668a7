#pragma once

#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "semigraph.hpp"

namespace semilocal {

/// Auditable count of synchronous rounds consumed by each pipeline phase.
class RoundLedger {
public:
    void charge(const std::string& phase, long rounds) {
        if (rounds < 0) throw std::invalid_argument("RoundLedger: negative charge");
        phases_.emplace_back(phase, rounds);
        total_ += rounds;
    }

    long total() const { return total_; }

    long phase_total(const std::string& phase) const {
        long t = 0;
        for (const auto& [name, r] : phases_)
            if (name == phase) t += r;
        return t;
    }

    const std::vector<std::pair<std::string, long>>& phases() const { return phases_; }

    nlohmann::json to_json() const {
        nlohmann::json rounds = nlohmann::json::object();
        for (const auto& [name, r] : phases_) {
            if (rounds.contains(name))
                rounds[name] = rounds[name].get<long>() + r;
            else
                rounds[name] = r;
        }
        return {{"rounds", rounds}, {"total", total_}};
    }

private:
    std::vector<std::pair<std::string, long>> phases_;
    long total_ = 0;
};

/// One incident edge as seen from a node, in ascending edge-id order.
struct Port {
    EdgeId edge;
    int rank;
};

/// What a node knows a priori in the LOCAL model: its identifier, the global
/// node count and maximum (underlying) degree, the identifier space, and its
/// ports.
struct NodeContext {
    std::uint64_t my_id;
    int n;
    int delta;
    std::uint64_t id_space;
    std::span<const Port> ports;
};

template <class Msg>
struct Incoming {
    int port; // receiver's port the message arrived on
    Msg payload;
};

/// Per-round send buffer. Messages travel only over rank-2 edges; sends on
/// rank-0/1 ports are silently dropped (there is nobody to receive them).
template <class Msg>
class Outbox {
public:
    Outbox(std::vector<std::pair<int, Msg>>& buf, std::span<const Port> ports)
        : buf_(buf), ports_(ports) {}

    void send(int port, Msg m) {
        if (port < 0 || port >= static_cast<int>(ports_.size()))
            throw std::out_of_range("Outbox::send: bad port");
        if (ports_[port].rank != 2) return;
        buf_.emplace_back(port, std::move(m));
    }

    void broadcast(const Msg& m) {
        for (int p = 0; p < static_cast<int>(ports_.size()); ++p)
            if (ports_[p].rank == 2) buf_.emplace_back(p, m);
    }

private:
    std::vector<std::pair<int, Msg>>& buf_;
    std::span<const Port> ports_;
};

template <class State>
struct RunResult {
    std::vector<State> states;
    long rounds = 0;
};

template <class State>
struct RunOptions {
    long max_rounds = 1000000;
    /// Called after every step with (round, node, state); round 0 is the
    /// free initial computation.
    std::function<void(long, NodeId, const State&)> observer;
};

/// Writes the optional transcript dump: one JSON line per (round, node).
template <class State>
RunOptions<State> transcript_options(std::ostream& out,
                                     std::function<std::string(const State&)> digest,
                                     long max_rounds = 1000000) {
    RunOptions<State> opts;
    opts.max_rounds = max_rounds;
    opts.observer = [&out, digest](long round, NodeId v, const State& st) {
        out << nlohmann::json{{"round", round}, {"node", v}, {"state", digest(st)}} << '\n';
    };
    return opts;
}

/// Synchronous lockstep execution. `prog(ctx, state, inbox, outbox)` returns
/// true when the node halts; messages emitted in the halting step are still
/// delivered, after which the node neither sends nor receives.
///
/// The initial step (empty inboxes) is free: a program that halts everywhere
/// immediately consumes 0 rounds. Every later step costs one round. Within a
/// round all outboxes are computed from the previous round's states before
/// anything is delivered, so per-node steps could run in parallel.
template <class Msg, class State, class Program>
RunResult<State> run_rounds(const SemiGraph& s, std::vector<State> init, Program&& prog,
                            const RunOptions<State>& opts = {}) {
    const int n = s.n();
    if (static_cast<int>(init.size()) != n)
        throw std::invalid_argument("run_rounds: init size mismatch");

    // Port tables and the receiver port of each rank-2 edge's endpoints.
    std::vector<std::vector<Port>> ports(n);
    std::vector<std::array<int, 2>> edge_port(s.m(), {-1, -1});
    for (NodeId v = 0; v < n; ++v) {
        auto inc = s.incident(v);
        ports[v].reserve(inc.size());
        for (std::size_t i = 0; i < inc.size(); ++i) {
            EdgeId e = inc[i];
            ports[v].push_back({e, s.rank(e)});
            edge_port[e][s.side_of(e, v)] = static_cast<int>(i);
        }
    }
    const int delta = s.underlying_max_degree();
    auto ctx = [&](NodeId v) {
        return NodeContext{s.id(v), n, delta, s.id_bound(), ports[v]};
    };

    std::vector<State> states = std::move(init);
    std::vector<std::uint8_t> halted(n, 0);
    std::vector<std::vector<std::pair<int, Msg>>> outbox(n);
    std::vector<std::vector<Incoming<Msg>>> inbox(n);
    int unhalted = n;

    for (NodeId v = 0; v < n; ++v) {
        Outbox<Msg> ob(outbox[v], ports[v]);
        std::span<const Incoming<Msg>> empty;
        if (prog(ctx(v), states[v], empty, ob)) {
            halted[v] = 1;
            --unhalted;
        }
        if (opts.observer) opts.observer(0, v, states[v]);
    }

    long rounds = 0;
    while (unhalted > 0) {
        if (rounds >= opts.max_rounds) {
            std::string msg = "run_rounds: max_rounds reached with non-halted nodes:";
            int shown = 0;
            for (NodeId v = 0; v < n; ++v)
                if (!halted[v]) {
                    msg += " " + std::to_string(v);
                    if (++shown == 8) {
                        msg += " ...";
                        break;
                    }
                }
            throw std::runtime_error(msg);
        }
        ++rounds;
        for (NodeId v = 0; v < n; ++v)
            if (!halted[v]) inbox[v].clear();
        for (NodeId v = 0; v < n; ++v) {
            for (auto& [port, msg] : outbox[v]) {
                EdgeId e = ports[v][port].edge;
                NodeId w = s.other_endpoint(e, v);
                if (halted[w]) continue;
                inbox[w].push_back({edge_port[e][s.side_of(e, w)], std::move(msg)});
            }
            outbox[v].clear();
        }
        for (NodeId v = 0; v < n; ++v) {
            if (halted[v]) continue;
            Outbox<Msg> ob(outbox[v], ports[v]);
            std::span<const Incoming<Msg>> in(inbox[v]);
            if (prog(ctx(v), states[v], in, ob)) {
                halted[v] = 1;
                --unhalted;
            }
            if (opts.observer) opts.observer(rounds, v, states[v]);
        }
    }
    return {std::move(states), rounds};
}

/// Everything within distance r of v in the underlying graph: the nodes
/// with their distances and the induced sub-semi-graph (the full view a
/// gathering node obtains). Gathering costs r rounds, charged to `phase`.
struct BallView {
    std::vector<NodeId> nodes; // ascending node index
    std::vector<int> dist;     // aligned with nodes
    SubSemiGraph view;
};

inline BallView gather_ball(const SemiGraph& s, NodeId v, int r, RoundLedger& ledger,
                            const std::string& phase) {
    if (r < 0) throw std::invalid_argument("gather_ball: negative radius");
    auto dist = bfs_dist(s, v);
    BallView ball;
    for (NodeId u = 0; u < s.n(); ++u)
        if (dist[u] != -1 && dist[u] <= r) {
            ball.nodes.push_back(u);
            ball.dist.push_back(dist[u]);
        }
    ball.view = induce_nodes(s, ball.nodes, false);
    ledger.charge(phase, r);
    return ball;
}

} // namespace semilocal
