#pragma once

#include <random>
#include <unordered_set>

#include "semigraph.hpp"

namespace semilocal {
namespace gen {

/// Identifiers: n distinct values sampled from [1, n^2] under the seed.
inline std::vector<std::uint64_t> sample_ids(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uint64_t hi = static_cast<std::uint64_t>(std::max(n, 1)) *
                       static_cast<std::uint64_t>(std::max(n, 1));
    std::uniform_int_distribution<std::uint64_t> dist(1, hi);
    std::unordered_set<std::uint64_t> used;
    std::vector<std::uint64_t> ids;
    ids.reserve(n);
    while (static_cast<int>(ids.size()) < n) {
        std::uint64_t x = dist(rng);
        if (used.insert(x).second) ids.push_back(x);
    }
    return ids;
}

inline SemiGraph from_pairs(int n, const std::vector<std::pair<NodeId, NodeId>>& pairs,
                            std::uint64_t seed) {
    std::vector<std::vector<NodeId>> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs) edges.push_back({u, v});
    return SemiGraph::make(n, edges, sample_ids(n, seed));
}

/// Uniform random labeled tree via a Pruefer sequence.
inline SemiGraph random_tree(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_tree: n >= 1 required");
    std::vector<std::pair<NodeId, NodeId>> pairs;
    if (n >= 2) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> dist(0, n - 1);
        std::vector<int> pruefer(std::max(n - 2, 0));
        for (auto& x : pruefer) x = dist(rng);
        std::vector<int> deg(n, 1);
        for (int x : pruefer) ++deg[x];
        // Standard linear decode with a moving pointer over leaves.
        int ptr = 0;
        while (deg[ptr] != 1) ++ptr;
        int leaf = ptr;
        for (int x : pruefer) {
            pairs.emplace_back(leaf, x);
            if (--deg[x] == 1 && x < ptr) {
                leaf = x;
            } else {
                ++ptr;
                while (deg[ptr] != 1) ++ptr;
                leaf = ptr;
            }
        }
        pairs.emplace_back(leaf, n - 1);
    }
    return from_pairs(n, pairs, seed);
}

/// Regular balanced tree: the root has `delta` children, every other
/// internal node delta-1 children, all leaves at distance `depth` from the
/// root. balanced_regular_tree(3, 2) has 1 + 3 + 6 = 10 nodes.
inline SemiGraph balanced_regular_tree(int delta, int depth, std::uint64_t seed = 1) {
    if (delta < 2) throw std::invalid_argument("balanced_regular_tree: delta >= 2 required");
    if (depth < 0) throw std::invalid_argument("balanced_regular_tree: depth >= 0 required");
    std::vector<std::pair<NodeId, NodeId>> pairs;
    std::vector<NodeId> frontier{0};
    int next = 1;
    for (int d = 0; d < depth; ++d) {
        std::vector<NodeId> fresh;
        for (NodeId v : frontier) {
            int children = d == 0 ? delta : delta - 1;
            for (int c = 0; c < children; ++c) {
                pairs.emplace_back(v, next);
                fresh.push_back(next);
                ++next;
            }
        }
        frontier = std::move(fresh);
    }
    return from_pairs(next, pairs, seed);
}

/// Node count of balanced_regular_tree(delta, depth).
inline long balanced_tree_size(int delta, int depth) {
    long total = 1, layer = 1;
    for (int d = 0; d < depth; ++d) {
        layer *= d == 0 ? delta : delta - 1;
        total += layer;
    }
    return total;
}

/// Largest depth whose balanced tree has at most n_target nodes.
inline int balanced_depth_for(int delta, long n_target) {
    int depth = 0;
    while (balanced_tree_size(delta, depth + 1) <= n_target) ++depth;
    return depth;
}

inline SemiGraph path_graph(int n, std::uint64_t seed = 1) {
    if (n < 1) throw std::invalid_argument("path_graph: n >= 1 required");
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (int v = 0; v + 1 < n; ++v) pairs.emplace_back(v, v + 1);
    return from_pairs(n, pairs, seed);
}

/// Star with `leaves` leaves; node 0 is the center.
inline SemiGraph star_graph(int leaves, std::uint64_t seed = 1) {
    if (leaves < 0) throw std::invalid_argument("star_graph: leaves >= 0 required");
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (int v = 1; v <= leaves; ++v) pairs.emplace_back(0, v);
    return from_pairs(leaves + 1, pairs, seed);
}

/// Spine of ~n/2 nodes with the remaining nodes attached as random legs.
inline SemiGraph caterpillar(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("caterpillar: n >= 1 required");
    std::mt19937_64 rng(seed);
    int spine = std::max(1, n / 2);
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (int v = 0; v + 1 < spine; ++v) pairs.emplace_back(v, v + 1);
    std::uniform_int_distribution<int> dist(0, spine - 1);
    for (int v = spine; v < n; ++v) pairs.emplace_back(dist(rng), v);
    return from_pairs(n, pairs, seed);
}

struct ArbGraph {
    SemiGraph graph;
    std::vector<std::vector<EdgeId>> witness; // forest partition of the edges
};

/// Union of `a` independently sampled random spanning trees on [n], with
/// duplicate node pairs kept only in the first forest that produced them.
/// The witness certifies arboricity <= a.
inline ArbGraph arboricity_graph(int n, int a, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("arboricity_graph: n >= 2 required");
    if (a < 1) throw std::invalid_argument("arboricity_graph: a >= 1 required");
    std::vector<std::pair<NodeId, NodeId>> pairs;
    std::vector<int> owner;
    std::unordered_set<std::uint64_t> seen;
    for (int f = 0; f < a; ++f) {
        SemiGraph forest = random_tree(n, seed * 1000003ULL + f);
        for (EdgeId e = 0; e < forest.m(); ++e) {
            std::uint64_t u = std::min(forest.endpoint(e, 0), forest.endpoint(e, 1));
            std::uint64_t v = std::max(forest.endpoint(e, 0), forest.endpoint(e, 1));
            if (!seen.insert(u * static_cast<std::uint64_t>(n) + v).second) continue;
            pairs.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
            owner.push_back(f);
        }
    }
    ArbGraph out{from_pairs(n, pairs, seed), {}};
    out.witness.assign(a, {});
    for (EdgeId e = 0; e < out.graph.m(); ++e) out.witness[owner[e]].push_back(e);
    return out;
}

} // namespace gen
} // namespace semilocal
