#include <catch2/catch_amalgamated.hpp>

#include <semilocal/gen.hpp>
#include <semilocal/oracles.hpp>
#include <semilocal/transform.hpp>

#include <cmath>

using namespace semilocal;

TEST_CASE("solve_g") {
    SECTION("exact powers") {
        REQUIRE(std::abs(solve_g(ComplexityFn::linear(1.0), 27) - 3.0) < 1e-9);
        REQUIRE(std::abs(solve_g(ComplexityFn::linear(1.0), 256) - 4.0) < 1e-9);
        REQUIRE(std::abs(solve_g(ComplexityFn::log2x(), 65536.0) - 16.0) < 1e-6);
    }
    SECTION("residual below 1e-9 over f and n grids") {
        std::vector<ComplexityFn> fs{ComplexityFn::linear(1.0), ComplexityFn::quadratic(1.0),
                                     ComplexityFn::log2x(), ComplexityFn::xlog2x()};
        for (const auto& f : fs)
            for (int p = 2; p <= 30; p += 4) {
                double n = std::pow(2.0, p);
                double g = solve_g(f, n);
                double val = std::pow(g, f.eval(g));
                REQUIRE(std::abs(val - n) / n <= 1e-9);
            }
    }
    SECTION("bad inputs rejected") {
        ComplexityFn not_monotone{[](double x) { return x < 2 ? 2 - x : x; }, "bad"};
        REQUIRE_THROWS_AS(solve_g(not_monotone, 100), std::invalid_argument);
        ComplexityFn nonzero_at_zero{[](double x) { return x + 1; }, "bad"};
        REQUIRE_THROWS_AS(solve_g(nonzero_at_zero, 100), std::invalid_argument);
        REQUIRE_THROWS_AS(solve_g(ComplexityFn::linear(1.0), 1.0), std::invalid_argument);
    }
}

TEST_CASE("tree_pipeline") {
    auto problem = degplus1_problem();
    auto algo = baseline_degplus1();
    SECTION("P_4: everything compressed, output is A's output") {
        auto t = gen::path_graph(4, 5);
        auto res = tree_pipeline(problem, algo, degplus1_list_solve, t);
        REQUIRE(res.valid);
        REQUIRE(res.params.k == 2);
        REQUIRE(res.ledger.phase_total("gather-solve-scatter") == 0);
        REQUIRE(direct_check_nodecoloring(t, pi_to_nodecoloring(t, res.labels)));
    }
    SECTION("single node") {
        auto t = SemiGraph::make(1, {});
        auto res = tree_pipeline(problem, algo, degplus1_list_solve, t);
        REQUIRE(res.valid);
        REQUIRE(res.ledger.total() <= 10);
    }
    SECTION("balanced 3-regular tree around 3000 nodes") {
        auto t = gen::balanced_regular_tree(3, gen::balanced_depth_for(3, 3000), 11);
        auto res = tree_pipeline(problem, algo, degplus1_list_solve, t);
        REQUIRE(res.valid);
        REQUIRE(res.ledger.total() <= res.budget);
        REQUIRE(check_solution(problem, t, res.labels).empty());
        REQUIRE(direct_check_nodecoloring(t, pi_to_nodecoloring(t, res.labels)));
    }
    SECTION("random trees verify end to end") {
        std::mt19937_64 rng(27);
        for (int rep = 0; rep < 5; ++rep) {
            auto t = gen::random_tree(200 + static_cast<int>(rng() % 2000), rng());
            auto res = tree_pipeline(problem, algo, degplus1_list_solve, t);
            REQUIRE(res.valid);
            REQUIRE(res.ledger.total() <= res.budget);
            REQUIRE(direct_check_nodecoloring(t, pi_to_nodecoloring(t, res.labels)));
        }
    }
    SECTION("non-trees rejected") {
        auto tri = SemiGraph::make(3, {{0, 1}, {1, 2}, {0, 2}});
        REQUIRE_THROWS_AS(tree_pipeline(problem, algo, degplus1_list_solve, tri),
                          std::invalid_argument);
    }
    SECTION("semi-graph trees with rank-1 and rank-0 edges") {
        // Path 0-1-2-3 plus a rank-1 edge at node 1 and a rank-0 edge.
        auto t = SemiGraph::make(4, {{0, 1}, {1, 2}, {2, 3}, {1}, {}});
        auto res = tree_pipeline(problem, algo, degplus1_list_solve, t);
        REQUIRE(res.valid);
        REQUIRE(check_solution(problem, t, res.labels).empty());
        // The rank-1 half-edge carries node 1's color.
        REQUIRE(res.labels.at(1, 3) == res.labels.at(1, 0));
    }
}

TEST_CASE("arb_pipeline") {
    SECTION("star K_{1,10} with matching: exactly one edge matched") {
        auto s = gen::star_graph(10, 5);
        auto algo = baseline_matching();
        auto res = arb_pipeline(matching_problem(), algo, matching_list_solve, s, 1,
                                pick_rho(algo.f, s.n(), 1));
        auto matched = pi_to_matching(s, res.labels);
        int size = 0;
        for (auto x : matched) size += x;
        REQUIRE(size == 1);
        REQUIRE(direct_check_matching(s, matched));
        REQUIRE(res.ledger.total() <= res.budget);
    }
    SECTION("edge coloring on a tree (a=1)") {
        auto t = gen::random_tree(800, 9);
        auto algo = baseline_edgecolor();
        auto res = arb_pipeline(edgecolor_problem(), algo, edgecolor_list_solve, t, 1,
                                pick_rho(algo.f, t.n(), 1));
        REQUIRE(direct_check_edgecoloring(t, pi_to_edgecoloring(t, res.labels)));
        REQUIRE(res.ledger.total() <= res.budget);
    }
    SECTION("matching on an arboricity-3 graph") {
        auto g = gen::arboricity_graph(1200, 3, 7).graph;
        auto algo = baseline_matching();
        auto res = arb_pipeline(matching_problem(), algo, matching_list_solve, g, 3,
                                pick_rho(algo.f, g.n(), 3));
        REQUIRE(direct_check_matching(g, pi_to_matching(g, res.labels)));
        REQUIRE(res.ledger.total() <= res.budget);
        REQUIRE(res.ledger.phase_total("star-phases") <= 6L * 3 * kStarPhaseRounds);
    }
    SECTION("constraint 5a <= k is enforced rather than silently relaxed") {
        auto g = gen::arboricity_graph(100, 3, 3).graph;
        auto algo = baseline_matching();
        // rho = 1 makes k = floor(g(n)) far below 5a = 15.
        REQUIRE_THROWS_AS(arb_pipeline(matching_problem(), algo, matching_list_solve, g, 3, 1),
                          std::invalid_argument);
    }
    SECTION("semi-graphs with low-rank edges rejected") {
        auto s = SemiGraph::make(2, {{0, 1}, {1}});
        auto algo = baseline_matching();
        REQUIRE_THROWS_AS(arb_pipeline(matching_problem(), algo, matching_list_solve, s, 1, 4),
                          std::invalid_argument);
    }
}

TEST_CASE("round budgets") {
    SECTION("degenerate k = n keeps the decomposition term constant") {
        PipelineParams p;
        p.n = 1000;
        p.k = 1000;
        p.a = 1;
        auto algo = baseline_degplus1();
        long iters = ceil_log_int(1000, 1000) + 1; // = 2
        REQUIRE(iters == 2);
        long b = round_budget_tree(p, algo, 1000ULL * 1000ULL);
        // The A term dominates: f(k) is the million-ish part.
        REQUIRE(b >= static_cast<long>(algo.f.eval(1000)));
        REQUIRE(b - static_cast<long>(algo.f.eval(1000)) <
                static_cast<long>(algo.f.eval(1000)));
    }
    SECTION("arb budget counts 6a star phases") {
        PipelineParams p;
        p.n = 1000;
        p.k = 5;
        p.a = 1;
        auto algo = baseline_matching();
        long b1 = round_budget_arb(p, algo, 1000ULL * 1000ULL);
        p.a = 2;
        p.k = 10;
        long b2 = round_budget_arb(p, algo, 1000ULL * 1000ULL);
        REQUIRE(b2 > b1);
    }
}

TEST_CASE("pipeline result serializes") {
    auto t = gen::path_graph(6, 3);
    auto res = tree_pipeline(degplus1_problem(), baseline_degplus1(), degplus1_list_solve, t);
    auto j = res.to_json();
    REQUIRE(j.at("valid") == true);
    REQUIRE(j.at("k") == res.params.k);
    REQUIRE(j.at("budget").get<long>() == res.budget);
    REQUIRE(j.at("rounds").contains("decompose"));
}
