#pragma once

#include "mathutil.hpp"
#include "semigraph.hpp"
#include "symmetry.hpp"

namespace semilocal {

/// Each Compress/Rake iteration costs two engine rounds: one exchange for
/// the survivors' current degrees, one for the fresh marks.
inline constexpr int kRoundsPerDecompIteration = 2;

/// kappa in the arboricity decomposition's iteration bound
/// ceil(kappa * log_{k/a} n) + 1, pinned by log_{5/4} 5 <= 10.
inline constexpr int kDecompKappa = 10;

enum class LayerKind : std::uint8_t { Rake, Compress };

/// Per-node layer: the iteration at which the node was marked plus the kind
/// of the marking operation. Within one rake-and-compress iteration the
/// compress marks precede the rake marks.
struct LayerAssignment {
    std::vector<int> iter;        // 1-based marking iteration
    std::vector<LayerKind> kind;
    int iterations = 0;

    /// Total order on layers: lower key = marked earlier.
    int layer_key(NodeId v) const {
        return 2 * (iter[v] - 1) + (kind[v] == LayerKind::Rake ? 1 : 0);
    }

    /// Layer-major, id-minor node order.
    bool lower_than(const SemiGraph& s, NodeId u, NodeId v) const {
        int ku = layer_key(u), kv = layer_key(v);
        if (ku != kv) return ku < kv;
        return s.id(u) < s.id(v);
    }

    NodeId lower_endpoint(const SemiGraph& s, EdgeId e) const {
        NodeId a = s.endpoint(e, 0), b = s.endpoint(e, 1);
        return lower_than(s, a, b) ? a : b;
    }
    NodeId higher_endpoint(const SemiGraph& s, EdgeId e) const {
        NodeId a = s.endpoint(e, 0), b = s.endpoint(e, 1);
        return lower_than(s, a, b) ? b : a;
    }

    /// Survivor set V_i = nodes not yet marked after iteration i (V_0 = all).
    std::vector<NodeId> survivors(int i) const {
        std::vector<NodeId> out;
        for (NodeId v = 0; v < static_cast<int>(iter.size()); ++v)
            if (iter[v] > i) out.push_back(v);
        return out;
    }
};

struct RakeCompressResult {
    LayerAssignment layers;
    long rounds = 0;
};

/// Rake-and-compress on a tree with parameter k >= 2. Iteration i first
/// compresses every survivor whose own and all surviving neighbors' degrees
/// are at most k, then rakes the degree-<=1 nodes of what is left. All nodes
/// must be marked within ceil(log_k n) + 1 iterations.
inline RakeCompressResult rake_and_compress(const SemiGraph& t, int k) {
    if (k < 2) throw std::invalid_argument("rake_and_compress: k must be >= 2");
    if (!is_tree(t)) throw std::invalid_argument("rake_and_compress: input is not a tree");
    const int n = t.n();
    const int max_iters = ceil_log_int(k, std::max(n, 1)) + 1;

    LayerAssignment la;
    la.iter.assign(n, 0);
    la.kind.assign(n, LayerKind::Rake);
    std::vector<int> deg(n);
    std::vector<std::uint8_t> alive(n, 1);
    for (NodeId v = 0; v < n; ++v) deg[v] = t.rank2_deg(v);
    int unmarked = n;

    int i = 0;
    while (unmarked > 0) {
        ++i;
        if (i > max_iters)
            throw std::logic_error("rake_and_compress: completeness bound exceeded");
        // Compress(G[V_{i-1}], k)
        std::vector<NodeId> compressed;
        for (NodeId v = 0; v < n; ++v) {
            if (!alive[v] || deg[v] > k) continue;
            bool ok = true;
            for (EdgeId e : t.incident(v)) {
                if (t.rank(e) != 2) continue;
                NodeId w = t.other_endpoint(e, v);
                if (alive[w] && deg[w] > k) {
                    ok = false;
                    break;
                }
            }
            if (ok) compressed.push_back(v);
        }
        for (NodeId v : compressed) {
            la.iter[v] = i;
            la.kind[v] = LayerKind::Compress;
            alive[v] = 0;
        }
        for (NodeId v : compressed)
            for (EdgeId e : t.incident(v)) {
                if (t.rank(e) != 2) continue;
                NodeId w = t.other_endpoint(e, v);
                if (alive[w]) --deg[w];
            }
        // Rake(G[V_{i-1} \ C_i])
        std::vector<NodeId> raked;
        for (NodeId v = 0; v < n; ++v)
            if (alive[v] && deg[v] <= 1) raked.push_back(v);
        for (NodeId v : raked) {
            la.iter[v] = i;
            la.kind[v] = LayerKind::Rake;
            alive[v] = 0;
        }
        for (NodeId v : raked)
            for (EdgeId e : t.incident(v)) {
                if (t.rank(e) != 2) continue;
                NodeId w = t.other_endpoint(e, v);
                if (alive[w]) --deg[w];
            }
        unmarked -= static_cast<int>(compressed.size() + raked.size());
    }
    la.iterations = std::max(i, 1);
    return {std::move(la), static_cast<long>(kRoundsPerDecompIteration) * la.iterations};
}

/// Lemma-level validation of a rake-and-compress run: (a) the graph induced
/// by the edges whose lower endpoint is compressed has maximum degree <= k;
/// (b) every connected component of the raked-node induced subgraph has
/// diameter <= 4(log_k n + 1) + 2. Both are theorems, so a failure
/// falsifies the implementation.
struct RcReport {
    int max_compress_degree = 0;
    int degree_bound = 0;
    int max_raked_diameter = 0;
    double diameter_bound = 0;
    bool ok = false;
};

/// Largest exact component diameter of a forest, via double BFS sweeps with
/// shared scratch arrays (linear overall, unlike the per-node API).
inline int forest_max_component_diameter(const SemiGraph& s) {
    std::vector<int> dist(s.n(), -1);
    std::vector<std::uint8_t> done(s.n(), 0);
    std::vector<NodeId> queue;
    auto bfs_far = [&](NodeId src) {
        queue.clear();
        queue.push_back(src);
        dist[src] = 0;
        NodeId best = src;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            NodeId u = queue[i];
            if (dist[u] > dist[best]) best = u;
            for (EdgeId e : s.incident(u)) {
                if (s.rank(e) != 2) continue;
                NodeId w = s.other_endpoint(e, u);
                if (dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        int d = dist[best];
        for (NodeId u : queue) dist[u] = -1;
        return std::pair<NodeId, int>{best, d};
    };
    int diam = 0;
    for (NodeId v = 0; v < s.n(); ++v) {
        if (done[v]) continue;
        auto [far, d1] = bfs_far(v);
        (void)d1;
        auto [other, d2] = bfs_far(far);
        (void)other;
        diam = std::max(diam, d2);
        queue.clear();
        queue.push_back(v);
        done[v] = 1;
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (EdgeId e : s.incident(queue[i])) {
                if (s.rank(e) != 2) continue;
                NodeId w = s.other_endpoint(e, queue[i]);
                if (!done[w]) {
                    done[w] = 1;
                    queue.push_back(w);
                }
            }
    }
    return diam;
}

inline RcReport rc_validate(const SemiGraph& t, int k, const LayerAssignment& la) {
    RcReport rep;
    rep.degree_bound = k;
    double n = std::max(t.n(), 1);
    rep.diameter_bound = 4.0 * (std::log(n) / std::log(static_cast<double>(k)) + 1.0) + 2.0;

    std::vector<int> cdeg(t.n(), 0);
    for (EdgeId e = 0; e < t.m(); ++e) {
        if (t.rank(e) != 2) continue;
        if (la.kind[la.lower_endpoint(t, e)] != LayerKind::Compress) continue;
        ++cdeg[t.endpoint(e, 0)];
        ++cdeg[t.endpoint(e, 1)];
    }
    for (NodeId v = 0; v < t.n(); ++v)
        rep.max_compress_degree = std::max(rep.max_compress_degree, cdeg[v]);

    std::vector<NodeId> raked;
    for (NodeId v = 0; v < t.n(); ++v)
        if (la.kind[v] == LayerKind::Rake) raked.push_back(v);
    // The raked subgraph of a tree is a forest, so the double sweep is exact.
    auto sub = induce_nodes(t, raked, false);
    rep.max_raked_diameter = forest_max_component_diameter(sub.graph);
    rep.ok = rep.max_compress_degree <= rep.degree_bound &&
             rep.max_raked_diameter <= rep.diameter_bound;
    return rep;
}

/// Output of the arboricity decomposition: layers (compress-only), plus the
/// edges recorded atypical for each node at its marking time (the incident
/// edges whose surviving far endpoint had degree > k), and the per-iteration
/// survivor counts for the shrink validation.
struct ArbDecomposition {
    LayerAssignment layers;
    std::vector<std::vector<EdgeId>> atypical_for;
    std::vector<long> survivors; // survivors[i] = |V_i|, survivors[0] = n
    long rounds = 0;
};

/// The generalized compress process: iteration i marks every survivor with
/// degree <= k and at most b surviving neighbors of degree > k. Requires
/// a < b and 5a <= k; with b = 2a on a graph of arboricity <= a all nodes
/// are marked within ceil(10 log_{k/a} n) + 1 iterations.
inline ArbDecomposition arboricity_decompose(const SemiGraph& g, int a, int b, int k) {
    if (a < 1) throw std::invalid_argument("arboricity_decompose: a must be >= 1");
    if (!(a < b)) throw std::invalid_argument("arboricity_decompose: requires a < b");
    if (!(5 * a <= k)) throw std::invalid_argument("arboricity_decompose: requires 5a <= k");
    const int n = g.n();
    const double n_real = std::max(n, 2);
    const double ratio = static_cast<double>(k) / a;
    const int max_iters =
        static_cast<int>(std::ceil(kDecompKappa * std::log(n_real) / std::log(ratio))) + 1;

    ArbDecomposition out;
    out.layers.iter.assign(n, 0);
    out.layers.kind.assign(n, LayerKind::Compress);
    out.atypical_for.assign(n, {});
    out.survivors.push_back(n);

    std::vector<int> deg(n);
    std::vector<std::uint8_t> alive(n, 1);
    for (NodeId v = 0; v < n; ++v) deg[v] = g.rank2_deg(v);
    int unmarked = n;

    int i = 0;
    while (unmarked > 0) {
        ++i;
        if (i > max_iters)
            throw std::logic_error(
                "arboricity_decompose: iteration bound exceeded (arboricity witness wrong?)");
        std::vector<NodeId> marked;
        for (NodeId v = 0; v < n; ++v) {
            if (!alive[v] || deg[v] > k) continue;
            int high = 0;
            for (EdgeId e : g.incident(v)) {
                if (g.rank(e) != 2) continue;
                NodeId w = g.other_endpoint(e, v);
                if (alive[w] && deg[w] > k) ++high;
            }
            if (high <= b) marked.push_back(v);
        }
        for (NodeId v : marked) {
            out.layers.iter[v] = i;
            out.layers.kind[v] = LayerKind::Compress;
            // Record the atypical edges for v now: far endpoint surviving
            // this iteration with degree > k in G[V_{i-1}].
            for (EdgeId e : g.incident(v)) {
                if (g.rank(e) != 2) continue;
                NodeId w = g.other_endpoint(e, v);
                if (alive[w] && deg[w] > k) out.atypical_for[v].push_back(e);
            }
        }
        for (NodeId v : marked) alive[v] = 0;
        for (NodeId v : marked)
            for (EdgeId e : g.incident(v)) {
                if (g.rank(e) != 2) continue;
                NodeId w = g.other_endpoint(e, v);
                if (alive[w]) --deg[w];
            }
        unmarked -= static_cast<int>(marked.size());
        out.survivors.push_back(unmarked);
    }
    out.layers.iterations = std::max(i, 1);
    out.rounds = static_cast<long>(kRoundsPerDecompIteration) * out.layers.iterations;
    return out;
}

struct ArbReport {
    bool shrink_ok = false;
    bool iters_ok = false;
    int iterations = 0;
    int iteration_bound = 0;
    bool ok = false;
};

/// Checks the proof inequality |V_{i+1}| <= 4a(|V_i|-1)/k for every
/// iteration and the iteration bound.
inline ArbReport arb_validate(const ArbDecomposition& d, int a, int k) {
    ArbReport rep;
    rep.iterations = d.layers.iterations;
    long n = d.survivors.empty() ? 0 : d.survivors[0];
    const double ratio = static_cast<double>(k) / a;
    rep.iteration_bound = static_cast<int>(std::ceil(
                              kDecompKappa * std::log(static_cast<double>(std::max(n, 2L))) /
                              std::log(ratio))) +
                          1;
    rep.iters_ok = rep.iterations <= rep.iteration_bound;
    rep.shrink_ok = true;
    for (std::size_t i = 0; i + 1 < d.survivors.size(); ++i) {
        if (d.survivors[i] < 1) continue;
        double bound = 4.0 * a * (d.survivors[i] - 1) / k;
        if (static_cast<double>(d.survivors[i + 1]) > bound) rep.shrink_ok = false;
    }
    rep.ok = rep.shrink_ok && rep.iters_ok;
    return rep;
}

/// Typical/atypical edge split plus the forest and star families.
///
/// E1 = edges atypical for their lower endpoint; E2 = the rest. Each node
/// colors its atypical edges (all towards higher neighbors) with distinct
/// colors from {1..2a}, giving forests F_1..F_{2a} in which every node has
/// at most one higher neighbor. A 3-coloring of each forest splits F_i into
/// F_{i,1..3} whose components are stars centered at their highest node.
struct EdgeSplit {
    std::vector<EdgeId> atypical; // E1
    std::vector<EdgeId> typical;  // E2 (rank-2 edges only)
    std::vector<std::vector<EdgeId>> forests;              // F_1..F_{2a}
    std::vector<std::array<std::vector<EdgeId>, 3>> stars; // F_{i,j}, j in {1,2,3}
    long rounds = 0;
};

namespace detail_split {
inline void check_forest_acyclic(const SemiGraph& g, const std::vector<EdgeId>& forest) {
    std::vector<int> parent(g.n());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (EdgeId e : forest) {
        int x = find(g.endpoint(e, 0)), y = find(g.endpoint(e, 1));
        if (x == y) throw std::logic_error("split_edges: forest contains a cycle");
        parent[x] = y;
    }
}
} // namespace detail_split

/// Structural invariants of the split; failures falsify the implementation.
inline void validate_split(const SemiGraph& g, const ArbDecomposition& d, int a,
                           const EdgeSplit& split) {
    // Each F_i: acyclic, and at most one higher F_i-neighbor per node.
    for (const auto& forest : split.forests) {
        detail_split::check_forest_acyclic(g, forest);
        std::vector<int> higher(g.n(), 0);
        for (EdgeId e : forest) ++higher[d.layers.lower_endpoint(g, e)];
        for (NodeId v = 0; v < g.n(); ++v)
            if (higher[v] > 1)
                throw std::logic_error("split_edges: node with two higher forest neighbors");
    }
    // Every F_{i,j} component is a star centered at its highest node: no
    // node is a star center and a leaf at once, and centers are the higher
    // endpoints.
    for (int i = 0; i < 2 * a; ++i)
        for (int j = 0; j < 3; ++j) {
            std::vector<std::uint8_t> center(g.n(), 0), leaf(g.n(), 0);
            for (EdgeId e : split.stars[i][j]) {
                center[d.layers.higher_endpoint(g, e)] = 1;
                NodeId lo = d.layers.lower_endpoint(g, e);
                if (leaf[lo])
                    throw std::logic_error("split_edges: leaf on two star edges");
                leaf[lo] = 1;
            }
            for (NodeId v = 0; v < g.n(); ++v)
                if (center[v] && leaf[v])
                    throw std::logic_error("split_edges: star component is not a star");
        }
}

inline EdgeSplit split_edges(const SemiGraph& g, const ArbDecomposition& d, int k, int a) {
    (void)k;
    EdgeSplit out;
    out.forests.assign(2 * a, {});
    out.stars.assign(2 * a, {});

    std::vector<std::uint8_t> in_e1(g.m(), 0);
    for (NodeId v = 0; v < g.n(); ++v) {
        if (static_cast<int>(d.atypical_for[v].size()) > 2 * a)
            throw std::logic_error("split_edges: more than 2a atypical edges at a node");
        int color = 0;
        for (EdgeId e : d.atypical_for[v]) {
            in_e1[e] = 1;
            out.forests[color].push_back(e);
            ++color;
        }
    }
    for (EdgeId e = 0; e < g.m(); ++e) {
        if (g.rank(e) != 2) continue;
        if (in_e1[e])
            out.atypical.push_back(e);
        else
            out.typical.push_back(e);
    }

    // One round for the higher endpoints to learn their incident edges'
    // forest colors, then the forest 3-colorings (in parallel over i).
    long color_rounds = 0;
    bool any = false;
    for (int i = 0; i < 2 * a; ++i) {
        if (out.forests[i].empty()) continue;
        any = true;
        auto sub = induce_edges(g, out.forests[i]);
        // Parent of a node in F_i: the edge it colored i (towards its unique
        // higher F_i-neighbor).
        std::vector<EdgeId> parent(sub.graph.n(), -1);
        std::vector<int> sub_edge_of(g.m(), -1);
        for (EdgeId es = 0; es < sub.graph.m(); ++es) sub_edge_of[sub.edge_of[es]] = es;
        for (NodeId vs = 0; vs < sub.graph.n(); ++vs) {
            NodeId v = sub.node_of[vs];
            if (static_cast<int>(d.atypical_for[v].size()) > i) {
                EdgeId e = d.atypical_for[v][i];
                if (sub_edge_of[e] != -1) {
                    if (parent[vs] != -1)
                        throw std::logic_error("split_edges: two higher neighbors in a forest");
                    parent[vs] = sub_edge_of[e];
                }
            }
        }
        auto coloring = forest_3color(sub.graph, parent);
        color_rounds = std::max(color_rounds, coloring.rounds);
        std::vector<int> sub_node_of(g.n(), -1);
        for (NodeId vs = 0; vs < sub.graph.n(); ++vs) sub_node_of[sub.node_of[vs]] = vs;
        for (EdgeId es = 0; es < sub.graph.m(); ++es) {
            EdgeId e = sub.edge_of[es];
            NodeId hi = d.layers.higher_endpoint(g, e);
            int c = static_cast<int>(coloring.color[sub_node_of[hi]]);
            out.stars[i][c].push_back(e);
        }
    }
    out.rounds = any ? 1 + color_rounds : 0;
    validate_split(g, d, a, out);
    return out;
}

/// Maximum degree of the graph induced by an edge set.
inline int induced_max_degree(const SemiGraph& g, const std::vector<EdgeId>& edges) {
    std::vector<int> deg(g.n(), 0);
    int dmax = 0;
    for (EdgeId e : edges) {
        dmax = std::max(dmax, ++deg[g.endpoint(e, 0)]);
        dmax = std::max(dmax, ++deg[g.endpoint(e, 1)]);
    }
    return dmax;
}

// --------------------------------------------------------------------------
// JSON for the CLI's decompose subcommand.
// --------------------------------------------------------------------------

inline nlohmann::json layers_to_json(const LayerAssignment& la) {
    nlohmann::json layers = nlohmann::json::array();
    for (NodeId v = 0; v < static_cast<int>(la.iter.size()); ++v)
        layers.push_back({{"node", v},
                          {"iter", la.iter[v]},
                          {"kind", la.kind[v] == LayerKind::Rake ? "rake" : "compress"}});
    return layers;
}

inline nlohmann::json split_to_json(const EdgeSplit& split) {
    nlohmann::json forests = nlohmann::json::array();
    for (const auto& f : split.forests) forests.push_back(f);
    return {{"E1", split.atypical}, {"E2", split.typical}, {"forests", forests}};
}

} // namespace semilocal
