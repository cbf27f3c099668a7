#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

namespace semilocal {

using NodeId = int;
using EdgeId = int;

/// A half-edge is a (node, incident edge) pair. Output labels live on these.
struct HalfEdge {
    NodeId v;
    EdgeId e;
    auto operator<=>(const HalfEdge&) const = default;
};

/// Semi-graph: a graph whose edges may have 0, 1 or 2 endpoints ("rank").
/// Stored as the usual incidence structure; immutable after construction.
///
/// Invariants (checked by make()):
///  - every edge has rank in {0,1,2}, rank-2 endpoints distinct,
///  - no parallel rank-2 edges between the same node pair,
///  - node identifiers pairwise distinct, in [1, id_bound].
class SemiGraph {
public:
    struct EdgeRecord {
        std::array<NodeId, 2> v{-1, -1};
        int rank = 0;
    };

    static SemiGraph make(int n, const std::vector<std::vector<NodeId>>& edges,
                          std::vector<std::uint64_t> ids = {},
                          std::uint64_t id_bound = 0) {
        if (n < 0) throw std::invalid_argument("SemiGraph: negative node count");
        SemiGraph s;
        s.n_ = n;
        s.edges_.reserve(edges.size());
        s.incident_.assign(n, {});
        std::unordered_set<std::uint64_t> pair_seen;
        for (const auto& ep : edges) {
            if (ep.size() > 2) throw std::invalid_argument("SemiGraph: edge with more than 2 endpoints");
            EdgeRecord rec;
            rec.rank = static_cast<int>(ep.size());
            for (std::size_t i = 0; i < ep.size(); ++i) {
                if (ep[i] < 0 || ep[i] >= n) throw std::invalid_argument("SemiGraph: endpoint out of range");
                rec.v[i] = ep[i];
            }
            if (rec.rank == 2) {
                if (rec.v[0] == rec.v[1]) throw std::invalid_argument("SemiGraph: self-loop");
                std::uint64_t a = std::min(rec.v[0], rec.v[1]);
                std::uint64_t b = std::max(rec.v[0], rec.v[1]);
                std::uint64_t key = a * static_cast<std::uint64_t>(n) + b;
                if (!pair_seen.insert(key).second)
                    throw std::invalid_argument("SemiGraph: parallel rank-2 edges");
            }
            EdgeId id = static_cast<EdgeId>(s.edges_.size());
            s.edges_.push_back(rec);
            for (int i = 0; i < rec.rank; ++i) s.incident_[rec.v[i]].push_back(id);
        }
        for (auto& inc : s.incident_) std::sort(inc.begin(), inc.end());

        if (ids.empty()) {
            ids.resize(n);
            std::iota(ids.begin(), ids.end(), std::uint64_t{1});
        }
        if (static_cast<int>(ids.size()) != n) throw std::invalid_argument("SemiGraph: ids size mismatch");
        std::uint64_t max_id = 0;
        std::unordered_set<std::uint64_t> seen;
        for (auto id : ids) {
            if (id == 0) throw std::invalid_argument("SemiGraph: identifiers must be positive");
            if (!seen.insert(id).second) throw std::invalid_argument("SemiGraph: duplicate identifier");
            max_id = std::max(max_id, id);
        }
        std::uint64_t nn = static_cast<std::uint64_t>(std::max(n, 1));
        s.id_bound_ = std::max({id_bound, nn * nn, max_id});
        s.ids_ = std::move(ids);
        return s;
    }

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }

    int rank(EdgeId e) const { return edges_[e].rank; }
    NodeId endpoint(EdgeId e, int side) const { return edges_[e].v[side]; }
    const EdgeRecord& edge(EdgeId e) const { return edges_[e]; }

    std::span<const EdgeId> incident(NodeId v) const { return incident_[v]; }
    int deg(NodeId v) const { return static_cast<int>(incident_[v].size()); }

    int rank2_deg(NodeId v) const {
        int d = 0;
        for (EdgeId e : incident_[v])
            if (rank(e) == 2) ++d;
        return d;
    }

    std::uint64_t id(NodeId v) const { return ids_[v]; }
    const std::vector<std::uint64_t>& ids() const { return ids_; }
    std::uint64_t id_bound() const { return id_bound_; }

    bool has_endpoint(EdgeId e, NodeId v) const {
        const auto& r = edges_[e];
        return (r.rank > 0 && r.v[0] == v) || (r.rank > 1 && r.v[1] == v);
    }

    int side_of(EdgeId e, NodeId v) const {
        const auto& r = edges_[e];
        if (r.rank > 0 && r.v[0] == v) return 0;
        if (r.rank > 1 && r.v[1] == v) return 1;
        throw std::invalid_argument("side_of: node not an endpoint of edge");
    }

    NodeId other_endpoint(EdgeId e, NodeId v) const {
        const auto& r = edges_[e];
        if (r.rank != 2) return -1;
        return r.v[0] == v ? r.v[1] : r.v[0];
    }

    /// Number of adjacent rank-2 edges of e (shared-endpoint adjacency).
    int edge_degree(EdgeId e) const {
        const auto& r = edges_[e];
        int d = 0;
        for (int i = 0; i < r.rank; ++i) d += rank2_deg(r.v[i]) - (r.rank == 2 ? 1 : 0);
        return d;
    }

    int underlying_max_degree() const {
        int d = 0;
        for (NodeId v = 0; v < n_; ++v) d = std::max(d, rank2_deg(v));
        return d;
    }

    int half_edge_count() const {
        int c = 0;
        for (const auto& r : edges_) c += r.rank;
        return c;
    }

    /// Dense index of a half-edge: slot 2e + side.
    int he_slot(NodeId v, EdgeId e) const { return 2 * e + side_of(e, v); }
    int he_slot_count() const { return 2 * m(); }
    bool slot_exists(int slot) const {
        return edges_[slot / 2].rank > (slot & 1);
    }
    HalfEdge slot_halfedge(int slot) const {
        return HalfEdge{edges_[slot / 2].v[slot & 1], slot / 2};
    }

    /// Re-checks the construction invariants; used by tests.
    bool validate() const {
        for (EdgeId e = 0; e < m(); ++e) {
            const auto& r = edges_[e];
            if (r.rank < 0 || r.rank > 2) return false;
            if (r.rank == 2 && r.v[0] == r.v[1]) return false;
            for (int i = 0; i < r.rank; ++i) {
                auto inc = incident(r.v[i]);
                if (std::find(inc.begin(), inc.end(), e) == inc.end()) return false;
            }
        }
        for (NodeId v = 0; v < n_; ++v)
            for (EdgeId e : incident(v))
                if (!has_endpoint(e, v)) return false;
        return true;
    }

    bool operator==(const SemiGraph& o) const {
        if (n_ != o.n_ || ids_ != o.ids_) return false;
        if (edges_.size() != o.edges_.size()) return false;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (edges_[e].rank != o.edges_[e].rank) return false;
            if (edges_[e].v != o.edges_[e].v) return false;
        }
        return true;
    }

private:
    int n_ = 0;
    std::vector<EdgeRecord> edges_;
    std::vector<std::vector<EdgeId>> incident_;
    std::vector<std::uint64_t> ids_;
    std::uint64_t id_bound_ = 1;
};

/// Partial assignment of output labels to half-edges. The domain is a
/// subset of H(S); a total labeling covers every half-edge.
///
/// Holds a non-owning reference to the graph it labels, which must outlive
/// the labeling.
template <class L>
class BasicLabeling {
public:
    BasicLabeling() = default;
    explicit BasicLabeling(const SemiGraph& s)
        : s_(&s), val_(s.he_slot_count()), set_(s.he_slot_count(), 0) {}

    const SemiGraph& graph() const { return *s_; }

    void set(NodeId v, EdgeId e, L label) {
        int slot = s_->he_slot(v, e);
        val_[slot] = std::move(label);
        set_[slot] = 1;
    }

    bool has(NodeId v, EdgeId e) const { return set_[s_->he_slot(v, e)] != 0; }

    const L& at(NodeId v, EdgeId e) const {
        int slot = s_->he_slot(v, e);
        if (!set_[slot]) throw std::out_of_range("Labeling: half-edge unlabeled");
        return val_[slot];
    }

    std::optional<L> get(NodeId v, EdgeId e) const {
        int slot = s_->he_slot(v, e);
        if (!set_[slot]) return std::nullopt;
        return val_[slot];
    }

    std::vector<HalfEdge> unlabeled() const {
        std::vector<HalfEdge> out;
        for (int slot = 0; slot < s_->he_slot_count(); ++slot)
            if (s_->slot_exists(slot) && !set_[slot]) out.push_back(s_->slot_halfedge(slot));
        return out;
    }

    bool total() const {
        for (int slot = 0; slot < s_->he_slot_count(); ++slot)
            if (s_->slot_exists(slot) && !set_[slot]) return false;
        return true;
    }

    int size() const {
        int c = 0;
        for (auto b : set_) c += b;
        return c;
    }

    /// Sorted multiset of the labels present on v's half-edges.
    std::vector<L> labels_at(NodeId v) const {
        std::vector<L> out;
        for (EdgeId e : s_->incident(v)) {
            int slot = s_->he_slot(v, e);
            if (set_[slot]) out.push_back(val_[slot]);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Sorted multiset of the labels present on e's half-edges.
    std::vector<L> labels_on_edge(EdgeId e) const {
        std::vector<L> out;
        for (int i = 0; i < s_->rank(e); ++i) {
            int slot = 2 * e + i;
            if (set_[slot]) out.push_back(val_[slot]);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool operator==(const BasicLabeling& o) const {
        return set_ == o.set_ && [&] {
            for (std::size_t i = 0; i < val_.size(); ++i)
                if (set_[i] && !(val_[i] == o.val_[i])) return false;
            return true;
        }();
    }

private:
    const SemiGraph* s_ = nullptr;
    std::vector<L> val_;
    std::vector<std::uint8_t> set_;
};

/// A sub-semi-graph together with its node/edge correspondence into the
/// structure it was induced from.
struct SubSemiGraph {
    SemiGraph graph;
    std::vector<NodeId> node_of; // sub node index -> original node
    std::vector<EdgeId> edge_of; // sub edge index -> original edge
};

/// The underlying graph: same nodes, only the rank-2 edges kept.
inline SubSemiGraph underlying_graph(const SemiGraph& s) {
    SubSemiGraph out;
    out.node_of.resize(s.n());
    std::iota(out.node_of.begin(), out.node_of.end(), 0);
    std::vector<std::vector<NodeId>> edges;
    for (EdgeId e = 0; e < s.m(); ++e) {
        if (s.rank(e) != 2) continue;
        edges.push_back({s.endpoint(e, 0), s.endpoint(e, 1)});
        out.edge_of.push_back(e);
    }
    out.graph = SemiGraph::make(s.n(), edges, s.ids(), s.id_bound());
    return out;
}

/// Node-induced sub-semi-graph.
///
/// With keep_boundary=true, every edge with at least one endpoint in P is
/// retained and its half-edges restricted to endpoints in P, so boundary
/// edges drop to rank 1 and each kept node keeps its full degree. With
/// keep_boundary=false this is the plain induced structure (edges with all
/// endpoints in P).
inline SubSemiGraph induce_nodes(const SemiGraph& s, const std::vector<NodeId>& p,
                                 bool keep_boundary) {
    std::vector<int> newid(s.n(), -1);
    SubSemiGraph out;
    for (NodeId v : p) {
        if (v < 0 || v >= s.n()) throw std::invalid_argument("induce_nodes: unknown node");
        if (newid[v] != -1) throw std::invalid_argument("induce_nodes: duplicate node in P");
        newid[v] = static_cast<int>(out.node_of.size());
        out.node_of.push_back(v);
    }
    std::vector<std::vector<NodeId>> edges;
    std::vector<std::uint64_t> ids;
    ids.reserve(p.size());
    for (NodeId v : out.node_of) ids.push_back(s.id(v));
    for (EdgeId e = 0; e < s.m(); ++e) {
        std::vector<NodeId> kept;
        int inside = 0;
        for (int i = 0; i < s.rank(e); ++i) {
            NodeId v = s.endpoint(e, i);
            if (newid[v] != -1) {
                kept.push_back(newid[v]);
                ++inside;
            }
        }
        if (inside == 0) continue;
        if (!keep_boundary && inside < s.rank(e)) continue;
        edges.push_back(std::move(kept));
        out.edge_of.push_back(e);
    }
    out.graph = SemiGraph::make(static_cast<int>(p.size()), edges, std::move(ids), s.id_bound());
    return out;
}

/// Edge-induced subgraph G[Q]; Q must consist of rank-2 edges.
inline SubSemiGraph induce_edges(const SemiGraph& s, const std::vector<EdgeId>& q) {
    SubSemiGraph out;
    std::vector<int> newid(s.n(), -1);
    std::vector<std::vector<NodeId>> edges;
    std::vector<std::uint64_t> ids;
    for (EdgeId e : q) {
        if (e < 0 || e >= s.m()) throw std::invalid_argument("induce_edges: unknown edge");
        if (s.rank(e) != 2) throw std::invalid_argument("induce_edges: edge of rank != 2 in Q");
        std::vector<NodeId> ep;
        for (int i = 0; i < 2; ++i) {
            NodeId v = s.endpoint(e, i);
            if (newid[v] == -1) {
                newid[v] = static_cast<int>(out.node_of.size());
                out.node_of.push_back(v);
                ids.push_back(s.id(v));
            }
            ep.push_back(newid[v]);
        }
        edges.push_back(std::move(ep));
        out.edge_of.push_back(e);
    }
    out.graph = SemiGraph::make(static_cast<int>(out.node_of.size()), edges, std::move(ids),
                                s.id_bound());
    return out;
}

/// BFS distances from v in the underlying graph; -1 for unreachable.
inline std::vector<int> bfs_dist(const SemiGraph& s, NodeId v) {
    std::vector<int> dist(s.n(), -1);
    std::queue<NodeId> q;
    dist[v] = 0;
    q.push(v);
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        for (EdgeId e : s.incident(u)) {
            if (s.rank(e) != 2) continue;
            NodeId w = s.other_endpoint(e, u);
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

inline std::vector<NodeId> component_of(const SemiGraph& s, NodeId v) {
    if (v < 0 || v >= s.n()) throw std::invalid_argument("component_of: unknown node");
    auto dist = bfs_dist(s, v);
    std::vector<NodeId> comp;
    for (NodeId u = 0; u < s.n(); ++u)
        if (dist[u] != -1) comp.push_back(u);
    return comp;
}

/// Exact diameter of v's connected component. Acyclic components use a
/// double BFS sweep; anything else falls back to all-pairs BFS, which is
/// fine at desk scale.
inline int component_diameter(const SemiGraph& s, NodeId v) {
    auto dist = bfs_dist(s, v);
    std::vector<NodeId> comp;
    int comp_edges = 0;
    for (NodeId u = 0; u < s.n(); ++u)
        if (dist[u] != -1) comp.push_back(u);
    for (NodeId u : comp)
        for (EdgeId e : s.incident(u))
            if (s.rank(e) == 2) ++comp_edges;
    comp_edges /= 2;
    bool acyclic = comp_edges == static_cast<int>(comp.size()) - 1;

    auto farthest = [&](NodeId src) {
        auto d = bfs_dist(s, src);
        NodeId best = src;
        for (NodeId u : comp)
            if (d[u] > d[best]) best = u;
        return std::pair<NodeId, int>{best, d[best]};
    };
    if (acyclic) {
        auto [a, _] = farthest(v);
        auto [b, diam] = farthest(a);
        (void)b;
        return diam;
    }
    int diam = 0;
    for (NodeId u : comp) {
        auto d = bfs_dist(s, u);
        for (NodeId w : comp) diam = std::max(diam, d[w]);
    }
    return diam;
}

inline bool is_connected(const SemiGraph& s) {
    if (s.n() == 0) return true;
    return static_cast<int>(component_of(s, 0).size()) == s.n();
}

/// Underlying graph is a tree: connected and exactly n-1 rank-2 edges.
inline bool is_tree(const SemiGraph& s) {
    int r2 = 0;
    for (EdgeId e = 0; e < s.m(); ++e)
        if (s.rank(e) == 2) ++r2;
    return s.n() >= 1 && r2 == s.n() - 1 && is_connected(s);
}

// ---------------------------------------------------------------------------
// File formats.
// JSON: {"n": int, "ids": [...] (optional), "edges": [[u,v] | [u] | []]}
// Text: one "u v" line per rank-2 edge.
// ---------------------------------------------------------------------------

inline nlohmann::json semigraph_to_json(const SemiGraph& s) {
    nlohmann::json j;
    j["n"] = s.n();
    j["ids"] = s.ids();
    auto& edges = j["edges"] = nlohmann::json::array();
    for (EdgeId e = 0; e < s.m(); ++e) {
        nlohmann::json ep = nlohmann::json::array();
        for (int i = 0; i < s.rank(e); ++i) ep.push_back(s.endpoint(e, i));
        edges.push_back(std::move(ep));
    }
    return j;
}

inline SemiGraph semigraph_from_json(const nlohmann::json& j) {
    int n = j.at("n").get<int>();
    std::vector<std::vector<NodeId>> edges;
    for (const auto& ep : j.at("edges")) edges.push_back(ep.get<std::vector<NodeId>>());
    std::vector<std::uint64_t> ids;
    if (j.contains("ids")) ids = j.at("ids").get<std::vector<std::uint64_t>>();
    return SemiGraph::make(n, edges, std::move(ids));
}

inline std::string semigraph_to_edge_list(const SemiGraph& s) {
    std::ostringstream out;
    for (EdgeId e = 0; e < s.m(); ++e) {
        if (s.rank(e) != 2)
            throw std::invalid_argument("edge-list format supports rank-2-only graphs");
        out << s.endpoint(e, 0) << ' ' << s.endpoint(e, 1) << '\n';
    }
    return out.str();
}

inline SemiGraph semigraph_from_edge_list(std::istream& in) {
    std::vector<std::vector<NodeId>> edges;
    int n = 0;
    NodeId u, v;
    while (in >> u >> v) {
        edges.push_back({u, v});
        n = std::max({n, u + 1, v + 1});
    }
    return SemiGraph::make(n, edges);
}

} // namespace semilocal
