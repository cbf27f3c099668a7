#include <catch2/catch_amalgamated.hpp>

#include <semilocal/gen.hpp>
#include <semilocal/semigraph.hpp>

#include <random>
#include <sstream>

using namespace semilocal;

namespace {

SemiGraph path3() { return SemiGraph::make(3, {{0, 1}, {1, 2}}); }

// Independent BFS oracle used to freeze diameter expectations.
int bfs_diameter(const SemiGraph& s) {
    int best = 0;
    for (NodeId v = 0; v < s.n(); ++v) {
        auto d = bfs_dist(s, v);
        for (int x : d) best = std::max(best, x);
    }
    return best;
}

} // namespace

TEST_CASE("construction invariants") {
    auto s = SemiGraph::make(3, {{0, 1}, {1, 2}, {2}, {}});
    REQUIRE(s.n() == 3);
    REQUIRE(s.m() == 4);
    REQUIRE(s.rank(0) == 2);
    REQUIRE(s.rank(2) == 1);
    REQUIRE(s.rank(3) == 0);
    REQUIRE(s.deg(2) == 2);
    REQUIRE(s.rank2_deg(2) == 1);
    REQUIRE(s.validate());

    REQUIRE_THROWS_AS(SemiGraph::make(2, {{0, 0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(SemiGraph::make(2, {{0, 1}, {1, 0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(SemiGraph::make(2, {{0, 2}}), std::invalid_argument);
    REQUIRE_THROWS_AS(SemiGraph::make(2, {{0, 1, 1}}), std::invalid_argument);
    REQUIRE_THROWS_AS(SemiGraph::make(2, {}, {5, 5}), std::invalid_argument);
    REQUIRE_THROWS_AS(SemiGraph::make(2, {}, {0, 1}), std::invalid_argument);
}

TEST_CASE("underlying_graph") {
    SECTION("plain graph is a fixed point") {
        auto s = path3();
        REQUIRE(underlying_graph(s).graph == s);
    }
    SECTION("rank-1 edge leaves its node isolated") {
        auto s = SemiGraph::make(2, {{0, 1}, {1}});
        auto u = underlying_graph(s).graph;
        REQUIRE(u.m() == 1);
        REQUIRE(u.deg(1) == 1);
    }
    SECTION("path plus rank-0 edge drops the rank-0 edge") {
        auto s = SemiGraph::make(2, {{0, 1}, {}});
        auto u = underlying_graph(s).graph;
        REQUIRE(u.m() == 1);
        REQUIRE(u.rank(0) == 2);
    }
}

TEST_CASE("induce_nodes") {
    SECTION("boundary kept: middle of path keeps degree 2 via rank-1 edges") {
        auto s = path3();
        auto sub = induce_nodes(s, {1}, true);
        REQUIRE(sub.graph.n() == 1);
        REQUIRE(sub.graph.m() == 2);
        REQUIRE(sub.graph.rank(0) == 1);
        REQUIRE(sub.graph.rank(1) == 1);
        REQUIRE(sub.graph.deg(0) == 2);
    }
    SECTION("all nodes reproduces the structure") {
        auto s = path3();
        auto sub = induce_nodes(s, {0, 1, 2}, true);
        REQUIRE(sub.graph == s);
    }
    SECTION("plain induction drops boundary edges") {
        auto s = path3();
        auto sub = induce_nodes(s, {0, 2}, false);
        REQUIRE(sub.graph.n() == 2);
        REQUIRE(sub.graph.m() == 0);
    }
    SECTION("unknown node errors") {
        auto s = path3();
        REQUIRE_THROWS_AS(induce_nodes(s, {7}, true), std::invalid_argument);
    }
    SECTION("keep_boundary preserves degrees (random instances)") {
        std::mt19937_64 rng(42);
        for (int rep = 0; rep < 30; ++rep) {
            auto t = gen::random_tree(2 + static_cast<int>(rng() % 40), rng());
            std::vector<NodeId> p;
            for (NodeId v = 0; v < t.n(); ++v)
                if (rng() % 2) p.push_back(v);
            if (p.empty()) continue;
            auto sub = induce_nodes(t, p, true);
            for (NodeId vs = 0; vs < sub.graph.n(); ++vs)
                REQUIRE(sub.graph.deg(vs) == t.deg(sub.node_of[vs]));
        }
    }
}

TEST_CASE("induce_edges") {
    auto triangle = SemiGraph::make(3, {{0, 1}, {1, 2}, {0, 2}});
    SECTION("empty set gives the empty semi-graph") {
        auto sub = induce_edges(triangle, {});
        REQUIRE(sub.graph.n() == 0);
        REQUIRE(sub.graph.m() == 0);
    }
    SECTION("one triangle edge gives a single edge on two nodes") {
        auto sub = induce_edges(triangle, {1});
        REQUIRE(sub.graph.n() == 2);
        REQUIRE(sub.graph.m() == 1);
    }
    SECTION("two star edges form a path of length 2") {
        auto star = gen::star_graph(3, 1);
        auto sub = induce_edges(star, {0, 1});
        REQUIRE(sub.graph.n() == 3);
        REQUIRE(sub.graph.m() == 2);
        REQUIRE(bfs_diameter(sub.graph) == 2);
    }
    SECTION("rank-1 edge rejected") {
        auto s = SemiGraph::make(2, {{0, 1}, {1}});
        REQUIRE_THROWS_AS(induce_edges(s, {1}), std::invalid_argument);
    }
    SECTION("induced max degree equals per-node incidence count") {
        std::mt19937_64 rng(7);
        for (int rep = 0; rep < 20; ++rep) {
            auto g = gen::arboricity_graph(3 + static_cast<int>(rng() % 30), 2, rng()).graph;
            std::vector<EdgeId> q;
            std::vector<int> cnt(g.n(), 0);
            for (EdgeId e = 0; e < g.m(); ++e)
                if (rng() % 2) {
                    q.push_back(e);
                    ++cnt[g.endpoint(e, 0)];
                    ++cnt[g.endpoint(e, 1)];
                }
            if (q.empty()) continue;
            int want = *std::max_element(cnt.begin(), cnt.end());
            auto sub = induce_edges(g, q);
            REQUIRE(underlying_graph(sub.graph).graph.underlying_max_degree() == want);
        }
    }
}

TEST_CASE("components and diameters") {
    SECTION("isolated node") {
        auto s = SemiGraph::make(1, {});
        REQUIRE(component_of(s, 0) == std::vector<NodeId>{0});
        REQUIRE(component_diameter(s, 0) == 0);
    }
    SECTION("path of 4 nodes has diameter 3") {
        auto s = gen::path_graph(4, 1);
        REQUIRE(component_diameter(s, 0) == 3);
    }
    SECTION("balanced binary tree of depth 2 has diameter 4") {
        auto s = SemiGraph::make(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
        REQUIRE(bfs_diameter(s) == 4); // oracle
        REQUIRE(component_diameter(s, 3) == 4);
    }
    SECTION("double-sweep matches all-pairs on random trees") {
        std::mt19937_64 rng(3);
        for (int rep = 0; rep < 15; ++rep) {
            auto t = gen::random_tree(2 + static_cast<int>(rng() % 60), rng());
            REQUIRE(component_diameter(t, 0) == bfs_diameter(t));
        }
    }
}

TEST_CASE("incidence symmetry holds for generated graphs") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        auto t = gen::random_tree(2 + static_cast<int>(rng() % 50), rng());
        REQUIRE(t.validate());
        auto g = gen::arboricity_graph(5 + static_cast<int>(rng() % 50), 3, rng()).graph;
        REQUIRE(g.validate());
    }
}

TEST_CASE("file formats") {
    SECTION("JSON round trip") {
        auto s = SemiGraph::make(4, {{0, 1}, {1, 2}, {3}, {}}, {9, 5, 7, 16});
        auto j = semigraph_to_json(s);
        auto back = semigraph_from_json(j);
        REQUIRE(back == s);
        REQUIRE(j.at("edges")[2].size() == 1);
        REQUIRE(j.at("edges")[3].size() == 0);
    }
    SECTION("edge list round trip for plain graphs") {
        auto s = gen::path_graph(5);
        auto text = semigraph_to_edge_list(s);
        std::istringstream in(text);
        auto back = semigraph_from_edge_list(in);
        REQUIRE(back.n() == s.n());
        REQUIRE(back.m() == s.m());
    }
    SECTION("edge list rejects semi-graphs") {
        auto s = SemiGraph::make(2, {{0, 1}, {1}});
        REQUIRE_THROWS_AS(semigraph_to_edge_list(s), std::invalid_argument);
    }
}

TEST_CASE("labeling basics") {
    auto s = path3();
    BasicLabeling<int> l(s);
    REQUIRE_FALSE(l.total());
    REQUIRE(l.unlabeled().size() == 4);
    l.set(0, 0, 10);
    l.set(1, 0, 20);
    l.set(1, 1, 30);
    l.set(2, 1, 40);
    REQUIRE(l.total());
    REQUIRE(l.at(1, 0) == 20);
    REQUIRE(l.labels_at(1) == std::vector<int>{20, 30});
    REQUIRE(l.labels_on_edge(0) == std::vector<int>{10, 20});
    REQUIRE_THROWS_AS(l.at(0, 1), std::invalid_argument);
}
