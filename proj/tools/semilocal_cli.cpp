// Batch experiment front door: generate, decompose, solve, verify, bench.
// Exit codes: 0 success, 1 verification failure, 2 usage/config error.

#include <CLI11.hpp>
#include <semilocal/semilocal.hpp>

#include <fstream>
#include <iostream>

using namespace semilocal;

namespace {

SemiGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    if (path.size() > 4 && path.substr(path.size() - 4) == ".txt")
        return semigraph_from_edge_list(in);
    nlohmann::json j;
    in >> j;
    return semigraph_from_json(j);
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path);
    out << j.dump(2) << '\n';
}

ListSolver solver_for(const std::string& problem) {
    if (problem == "edgecolor") return edgecolor_list_solve;
    if (problem == "matching") return matching_list_solve;
    if (problem == "degplus1") return degplus1_list_solve;
    throw std::invalid_argument("unknown problem " + problem);
}

bool direct_check(const std::string& problem, const SemiGraph& g, const Labeling& l) {
    if (problem == "edgecolor") return direct_check_edgecoloring(g, pi_to_edgecoloring(g, l));
    if (problem == "matching") return direct_check_matching(g, pi_to_matching(g, l));
    return direct_check_nodecoloring(g, pi_to_nodecoloring(g, l));
}

int cmd_gen(const std::string& family, int n, int delta, int arboricity, std::uint64_t seed,
            const std::string& out) {
    SemiGraph g = [&] {
        if (family == "tree") return gen::random_tree(n, seed);
        if (family == "balanced")
            return gen::balanced_regular_tree(delta, gen::balanced_depth_for(delta, n), seed);
        if (family == "path") return gen::path_graph(n, seed);
        if (family == "star") return gen::star_graph(std::max(n - 1, 0), seed);
        if (family == "arb") return gen::arboricity_graph(n, arboricity, seed).graph;
        throw std::invalid_argument("unknown family " + family);
    }();
    write_json(out, semigraph_to_json(g));
    std::cout << "wrote " << family << " graph: n=" << g.n() << " m=" << g.m() << " to " << out
              << "\n";
    return 0;
}

int cmd_decompose(const std::string& algo, int k, int a, const std::string& in,
                  const std::string& out) {
    auto g = load_graph(in);
    nlohmann::json j;
    bool ok = true;
    if (algo == "rc") {
        auto rc = rake_and_compress(g, k);
        auto rep = rc_validate(g, k, rc.layers);
        ok = rep.ok;
        j["layers"] = layers_to_json(rc.layers);
        j["E1"] = nlohmann::json::array();
        j["E2"] = nlohmann::json::array();
        j["forests"] = nlohmann::json::array();
        j["rounds"] = rc.rounds;
        j["report"] = {{"ok", rep.ok},
                       {"max_compress_degree", rep.max_compress_degree},
                       {"degree_bound", rep.degree_bound},
                       {"max_raked_diameter", rep.max_raked_diameter},
                       {"diameter_bound", rep.diameter_bound}};
    } else if (algo == "arb") {
        auto d = arboricity_decompose(g, a, 2 * a, k);
        auto rep = arb_validate(d, a, k);
        auto split = split_edges(g, d, k, a);
        ok = rep.ok;
        j["layers"] = layers_to_json(d.layers);
        auto sj = split_to_json(split);
        j["E1"] = sj["E1"];
        j["E2"] = sj["E2"];
        j["forests"] = sj["forests"];
        j["rounds"] = d.rounds + split.rounds;
        j["report"] = {{"ok", rep.ok},
                       {"iterations", rep.iterations},
                       {"iteration_bound", rep.iteration_bound},
                       {"shrink_ok", rep.shrink_ok},
                       {"typical_max_degree", induced_max_degree(g, split.typical)}};
    } else {
        throw std::invalid_argument("unknown algo " + algo);
    }
    write_json(out, j);
    std::cout << j["report"].dump() << "\n";
    return ok ? 0 : 1;
}

int cmd_solve(const std::string& problem, const std::string& pipeline, int rho, int a,
              const std::string& in, const std::string& out) {
    auto g = load_graph(in);
    auto p = problem_for(problem);
    auto algo = baseline_for(problem);
    nlohmann::json j;
    Labeling labels(g);
    if (pipeline == "tree") {
        if (problem != "degplus1")
            throw std::invalid_argument(
                "tree pipeline requires an edge-list-solvable problem (degplus1)");
        auto res = tree_pipeline(p, algo, solver_for(problem), g);
        j = res.to_json();
        labels = std::move(res.labels);
    } else if (pipeline == "arb") {
        if (problem == "degplus1")
            throw std::invalid_argument(
                "arb pipeline requires a node-list-solvable problem (edgecolor, matching)");
        int use_rho = rho > 0 ? rho : pick_rho(algo.f, g.n(), a);
        auto res = arb_pipeline(p, algo, solver_for(problem), g, a, use_rho);
        j = res.to_json();
        labels = std::move(res.labels);
    } else if (pipeline == "direct") {
        auto st = algo.solve(g);
        labels = std::move(st.labels);
        long budget = static_cast<long>(
            std::ceil(algo.round_bound(g.underlying_max_degree(), g.id_bound())));
        j = {{"valid", true},
             {"rounds", {{"solve-A", st.rounds}}},
             {"total", st.rounds},
             {"budget", budget},
             {"k", g.underlying_max_degree()},
             {"params", {{"n", g.n()}, {"f", algo.f.descr}}}};
    } else {
        throw std::invalid_argument("unknown pipeline " + pipeline);
    }

    bool ok = check_solution(p, g, labels).empty() && direct_check(problem, g, labels);
    j["valid"] = ok;
    j["labels"] = labeling_to_json(g, labels)["labels"];
    write_json(out, j);
    std::cout << "valid=" << (ok ? "true" : "false") << " total="
              << j["total"].get<long>() << " budget=" << j["budget"].get<long>() << "\n";
    return ok ? 0 : 1;
}

int cmd_verify(const std::string& problem, const std::string& in, const std::string& labeling) {
    auto g = load_graph(in);
    std::ifstream lin(labeling);
    if (!lin) throw std::invalid_argument("cannot open " + labeling);
    nlohmann::json lj;
    lin >> lj;
    auto l = labeling_from_json(g, lj);
    auto vs = check_solution(problem_for(problem), g, l);
    std::cout << violations_to_json(vs).dump(2) << "\n";
    return static_cast<int>(std::min<std::size_t>(vs.size(), 255));
}

void csv_row(std::ostream& out, const std::string& family, long n, long k, int a,
             const std::string& problem, const std::string& pipeline, const std::string& phase,
             long rounds, long budget, bool valid) {
    out << family << ',' << n << ',' << k << ',' << a << ',' << problem << ',' << pipeline << ','
        << phase << ',' << rounds << ',' << budget << ',' << (valid ? "true" : "false") << '\n';
}

int cmd_bench(const std::string& suite, const std::vector<long>& sizes, int seeds,
              const std::string& csv) {
    std::ofstream out(csv);
    if (!out) throw std::invalid_argument("cannot open " + csv);
    out << "family,n,k,a,problem,pipeline,phase,rounds,budget,valid\n";
    bool all_ok = true;

    if (suite == "lemmas") {
        for (long n : sizes)
            for (int seed = 0; seed < seeds; ++seed) {
                auto t = gen::random_tree(static_cast<int>(n), seed + 1);
                for (int k : {2, 4, 16}) {
                    auto rc = rake_and_compress(t, k);
                    bool ok = rc_validate(t, k, rc.layers).ok;
                    all_ok &= ok;
                    long budget = kRoundsPerDecompIteration *
                                  (ceil_log_int(k, static_cast<std::uint64_t>(n)) + 1);
                    csv_row(out, "tree", n, k, 1, "", "rc", "decompose", rc.rounds, budget, ok);
                }
                for (int a : {1, 2, 3}) {
                    if (n < 2) continue;
                    auto g = gen::arboricity_graph(static_cast<int>(n), a, seed + 1).graph;
                    int k = 5 * a;
                    auto d = arboricity_decompose(g, a, 2 * a, k);
                    auto rep = arb_validate(d, a, k);
                    auto split = split_edges(g, d, k, a);
                    bool ok = rep.ok && induced_max_degree(g, split.typical) <= k;
                    all_ok &= ok;
                    long budget = kRoundsPerDecompIteration * rep.iteration_bound;
                    csv_row(out, "arb", n, k, a, "", "arb", "decompose", d.rounds, budget, ok);
                }
            }
    } else if (suite == "baselines") {
        for (long n : sizes)
            for (int seed = 0; seed < seeds; ++seed) {
                auto t = gen::random_tree(static_cast<int>(n), seed + 1);
                for (const char* problem : {"edgecolor", "matching", "degplus1"}) {
                    auto algo = baseline_for(problem);
                    auto st = algo.solve(t);
                    bool ok = check_solution(problem_for(problem), t, st.labels).empty();
                    all_ok &= ok;
                    long budget = static_cast<long>(std::ceil(
                        algo.round_bound(t.underlying_max_degree(), t.id_bound())));
                    csv_row(out, "tree", n, t.underlying_max_degree(), 1, problem, "direct",
                            "solve", st.rounds, budget, ok);
                }
            }
    } else if (suite == "pipelines") {
        for (long n : sizes)
            for (int seed = 0; seed < seeds; ++seed) {
                auto t = gen::random_tree(static_cast<int>(n), seed + 1);
                {
                    auto res = tree_pipeline(degplus1_problem(), baseline_degplus1(),
                                             degplus1_list_solve, t);
                    bool ok = res.valid && direct_check("degplus1", t, res.labels);
                    all_ok &= ok;
                    for (const auto& [phase, rounds] : res.ledger.phases())
                        csv_row(out, "tree", n, res.params.k, 1, "degplus1", "tree", phase,
                                rounds, res.budget, ok);
                    csv_row(out, "tree", n, res.params.k, 1, "degplus1", "tree", "total",
                            res.ledger.total(), res.budget, ok);
                }
                for (const char* problem : {"edgecolor", "matching"}) {
                    auto algo = baseline_for(problem);
                    auto res = arb_pipeline(problem_for(problem), algo, solver_for(problem), t,
                                            1, pick_rho(algo.f, t.n(), 1));
                    bool ok = res.valid && direct_check(problem, t, res.labels);
                    all_ok &= ok;
                    for (const auto& [phase, rounds] : res.ledger.phases())
                        csv_row(out, "tree", n, res.params.k, 1, problem, "arb", phase, rounds,
                                res.budget, ok);
                    csv_row(out, "tree", n, res.params.k, 1, problem, "arb", "total",
                            res.ledger.total(), res.budget, ok);
                }
            }
    } else {
        throw std::invalid_argument("unknown suite " + suite);
    }
    std::cout << "wrote " << csv << "\n";
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-graph LOCAL-model decompositions and transformations"};
    app.require_subcommand(1);

    std::string family = "tree", in_file, out_file = "out.json", labeling_file;
    std::string algo = "rc", problem = "matching", pipeline = "arb", suite = "lemmas";
    std::string csv_file = "bench.csv";
    std::string sizes_str = "100,1000";
    int n = 100, delta = 3, arboricity = 1, k = 2, a = 1, rho = 0, seeds = 3;
    std::uint64_t seed = 1;

    auto* g = app.add_subcommand("gen", "generate a benchmark graph");
    g->add_option("--family", family, "tree|balanced|path|star|arb")->required();
    g->add_option("--n", n, "target node count")->required();
    g->add_option("--delta", delta, "degree for balanced trees");
    g->add_option("--arboricity", arboricity, "arboricity for the arb family");
    g->add_option("--seed", seed, "RNG seed");
    g->add_option("--out", out_file, "output graph JSON")->required();

    auto* d = app.add_subcommand("decompose", "run a decomposition and its validators");
    d->add_option("--algo", algo, "rc|arb")->required();
    d->add_option("--k", k, "degree parameter")->required();
    d->add_option("--a", a, "arboricity bound (arb only)");
    d->add_option("--in", in_file, "input graph")->required();
    d->add_option("--out", out_file, "output JSON")->required();

    auto* s = app.add_subcommand("solve", "run a pipeline with double verification");
    s->add_option("--problem", problem, "edgecolor|matching|degplus1")->required();
    s->add_option("--pipeline", pipeline, "tree|arb|direct")->required();
    s->add_option("--rho", rho, "exponent for the arb pipeline (0 = auto)");
    s->add_option("--a", a, "arboricity bound for the arb pipeline");
    s->add_option("--in", in_file, "input graph")->required();
    s->add_option("--out", out_file, "output labeling + ledger JSON")->required();

    auto* v = app.add_subcommand("verify", "check a labeling against a problem");
    v->add_option("--problem", problem, "edgecolor|matching|degplus1")->required();
    v->add_option("--in", in_file, "input graph")->required();
    v->add_option("--labeling", labeling_file, "labeling JSON")->required();

    auto* b = app.add_subcommand("bench", "emit benchmark CSV");
    b->add_option("--suite", suite, "lemmas|pipelines|baselines")->required();
    b->add_option("--sizes", sizes_str, "comma-separated node counts");
    b->add_option("--seeds", seeds, "seeds per configuration");
    b->add_option("--csv", csv_file, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (g->parsed()) return cmd_gen(family, n, delta, arboricity, seed, out_file);
        if (d->parsed()) return cmd_decompose(algo, k, a, in_file, out_file);
        if (s->parsed()) return cmd_solve(problem, pipeline, rho, a, in_file, out_file);
        if (v->parsed()) return cmd_verify(problem, in_file, labeling_file);
        if (b->parsed()) {
            std::vector<long> sizes;
            std::stringstream ss(sizes_str);
            std::string tok;
            while (std::getline(ss, tok, ',')) sizes.push_back(std::stol(tok));
            return cmd_bench(suite, sizes, seeds, csv_file);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
