#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "dbsearch/bench.hpp"

using namespace dbsearch;

namespace {

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string write_file(const std::string& name, const std::string& content) {
    std::string path = temp_file(name);
    std::ofstream out(path);
    out << content;
    return path;
}

template <typename F>
std::string thrown_message(F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

TspInstance random_tsp(int n, unsigned seed) {
    std::mt19937 rng(seed);
    TspInstance inst;
    inst.name = "rnd" + std::to_string(n);
    inst.n = n;
    inst.dist.assign(static_cast<size_t>(n), std::vector<long long>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long long w = 1 + static_cast<long long>(rng() % 50);
            inst.dist[static_cast<size_t>(i)][static_cast<size_t>(j)] = w;
            inst.dist[static_cast<size_t>(j)][static_cast<size_t>(i)] = w;
        }
    return inst;
}

} // namespace

TEST_CASE("strategy ids") {
    CHECK(parse_strategy("dfs").kind == Strategy::Kind::DFS);
    CHECK(parse_strategy("lds").kind == Strategy::Kind::LDS);
    CHECK(parse_strategy("lds-pref").kind == Strategy::Kind::LDSPref);
    CHECK(parse_strategy("dbs").kind == Strategy::Kind::DBS);
    CHECK(parse_strategy("dbs-pref").kind == Strategy::Kind::DBSPref);
    Strategy ib = parse_strategy("ib:1,2,4");
    CHECK(ib.kind == Strategy::Kind::IB);
    CHECK(ib.cutoffs == std::vector<int>{1, 2, 4});
    CHECK(ib.id == "ib:1,2,4");

    CHECK_THROWS_AS(parse_strategy("bfs"), std::runtime_error);
    CHECK_THROWS_AS(parse_strategy("ib:"), std::runtime_error);
    CHECK_THROWS_AS(parse_strategy("ib:2,2"), std::runtime_error);
    CHECK_THROWS_AS(parse_strategy("ib:3,1"), std::runtime_error);
}

TEST_CASE("every strategy solves a small tour to the exact optimum") {
    TspInstance inst = random_tsp(6, 3);
    long long opt = held_karp(inst);
    RunLimits limits;
    limits.time_limit = 60.0;
    for (const char* id : {"dfs", "lds", "lds-pref", "dbs", "dbs-pref", "ib:1,2,6"}) {
        RunRecord rec = run_tsp(inst, parse_strategy(id), limits, opt);
        CHECK(rec.outcome == Outcome::Optimal);
        REQUIRE(rec.objective);
        CHECK(*rec.objective == opt);
        CHECK(rec.instance == "rnd6");
        CHECK(rec.strategy == id);
    }
}

TEST_CASE("exhaustion proves optimality when no target is given") {
    TspInstance inst = random_tsp(6, 4);
    RunLimits limits;
    limits.time_limit = 60.0;
    RunRecord rec = run_tsp(inst, parse_strategy("lds"), limits, std::nullopt);
    CHECK(rec.outcome == Outcome::Optimal);
    REQUIRE(rec.objective);
    CHECK(*rec.objective == held_karp(inst));
}

TEST_CASE("node limit reports a limit outcome") {
    TspInstance inst = random_tsp(8, 5);
    RunLimits limits;
    limits.node_limit = 1;
    RunRecord rec = run_tsp(inst, parse_strategy("lds"), limits, std::nullopt);
    CHECK(rec.outcome == Outcome::Limit);
    CHECK_FALSE(rec.objective);
}

TEST_CASE("runs are deterministic") {
    TspInstance inst = random_tsp(7, 11);
    RunLimits limits;
    RunRecord a = run_tsp(inst, parse_strategy("dbs"), limits, held_karp(inst));
    RunRecord b = run_tsp(inst, parse_strategy("dbs"), limits, held_karp(inst));
    CHECK(a.stats.fails == b.stats.fails);
    CHECK(a.stats.leaves_visited == b.stats.leaves_visited);
    CHECK(a.stats.solution_discrepancy == b.stats.solution_discrepancy);
    CHECK(a.objective == b.objective);
}

TEST_CASE("square completion runs") {
    PlsInstance inst = generate_pls(8, 20, true, 7);
    RunLimits limits;
    limits.time_limit = 60.0;
    for (const char* id : {"lds", "dbs", "dfs"}) {
        RunRecord rec = run_pls(inst, parse_strategy(id), limits, "inst8");
        CHECK(rec.outcome == Outcome::Solved);
        CHECK(rec.instance == "inst8");
        CHECK_FALSE(rec.objective);
    }
}

TEST_CASE("uncompletable squares are reported infeasible") {
    // (0,2) and (1,2) are both forced to 3 by their rows and column 3
    std::string path = write_file("dbs_unsat.pls",
                                  "3\n"
                                  "1 0 0\n"
                                  "0 1 0\n"
                                  "0 0 2\n");
    PlsInstance inst = parse_pls(path);
    std::remove(path.c_str());
    RunLimits limits;
    RunRecord rec = run_pls(inst, parse_strategy("lds"), limits, "unsat3");
    CHECK(rec.outcome == Outcome::Infeasible);
    CHECK(rec.stats.fails >= 1);
    CHECK(rec.stats.leaves_visited == 0);
}

TEST_CASE("config files") {
    std::string path = write_file("dbs_bench.cfg",
                                  "# tiny smoke experiment\n"
                                  "instance = data/tsplib/gr17.tsp\n"
                                  "instance = gen-pls:order=6,holes=12,balanced=1,seed=3\n"
                                  "strategy = lds\n"
                                  "strategy = dbs   # decomposition\n"
                                  "time_limit = 60\n"
                                  "optimum = gr17:2085\n"
                                  "seed = 5\n"
                                  "threads = 2\n");
    BenchConfig cfg = parse_bench_config(path);
    std::remove(path.c_str());
    CHECK(cfg.instances == std::vector<std::string>{"data/tsplib/gr17.tsp",
                                                    "gen-pls:order=6,holes=12,balanced=1,seed=3"});
    CHECK(cfg.strategies == std::vector<std::string>{"lds", "dbs"});
    REQUIRE(cfg.limits.time_limit);
    CHECK(*cfg.limits.time_limit == 60.0);
    REQUIRE(cfg.optima.size() == 1);
    CHECK(cfg.optima[0].first == "gr17");
    CHECK(cfg.optima[0].second == 2085);
    CHECK(cfg.seed == 5);
    CHECK(cfg.threads == 2);

    path = write_file("dbs_badkey.cfg", "instance = x\nwalltime = 3\n");
    std::string badkey = thrown_message([&] { parse_bench_config(path); });
    CHECK(badkey.find(":2:") != std::string::npos);
    CHECK(badkey.find("unknown key") != std::string::npos);
    std::remove(path.c_str());

    path = write_file("dbs_badstrat.cfg", "instance = x\nstrategy = bfs\n");
    std::string badstrat = thrown_message([&] { parse_bench_config(path); });
    CHECK(badstrat.find(":2:") != std::string::npos);
    CHECK(badstrat.find("unknown strategy") != std::string::npos);
    std::remove(path.c_str());

    path = write_file("dbs_badopt.cfg", "optimum = gr17=2085\n");
    std::string badopt = thrown_message([&] { parse_bench_config(path); });
    CHECK(badopt.find("name:value") != std::string::npos);
    std::remove(path.c_str());

    path = write_file("dbs_noinst.cfg", "strategy = lds\n");
    std::string noinst = thrown_message([&] { parse_bench_config(path); });
    CHECK(noinst.find("no instances") != std::string::npos);
    std::remove(path.c_str());

    path = write_file("dbs_nostrat.cfg", "instance = x\n");
    std::string nostrat = thrown_message([&] { parse_bench_config(path); });
    CHECK(nostrat.find("no strategies") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("experiments run the full strategy grid and sort records") {
    std::string tsp_path = temp_file("dbs_exp6.tsp");
    emit_tsplib(random_tsp(6, 21), tsp_path, EdgeWeightFormat::LowerDiagRow);
    std::string cfg_path = write_file("dbs_exp.cfg",
                                      "instance = " + tsp_path +
                                          "\n"
                                          "instance = gen-pls:order=6,holes=14,balanced=1,seed=2\n"
                                          "strategy = lds\n"
                                          "strategy = dbs\n"
                                          "time_limit = 60\n");
    BenchConfig cfg = parse_bench_config(cfg_path);
    std::vector<RunRecord> records = run_experiment(cfg);
    REQUIRE(records.size() == 4);
    CHECK(records[0].instance == "bpls.order6.holes14.seed2");
    CHECK(records[0].strategy == "dbs");
    CHECK(records[1].strategy == "lds");
    CHECK(records[2].instance == "rnd6");
    for (const RunRecord& r : records)
        CHECK((r.outcome == Outcome::Solved || r.outcome == Outcome::Optimal));
    // the tour instance has n <= 20, so its optimum is computed and proven
    CHECK(records[2].outcome == Outcome::Optimal);
    CHECK(records[3].outcome == Outcome::Optimal);
    CHECK(records[2].objective == records[3].objective);

    BenchConfig threaded = cfg;
    threaded.threads = 3;
    std::vector<RunRecord> parallel = run_experiment(threaded);
    REQUIRE(parallel.size() == records.size());
    for (size_t i = 0; i < records.size(); ++i) {
        CHECK(parallel[i].instance == records[i].instance);
        CHECK(parallel[i].strategy == records[i].strategy);
        CHECK(parallel[i].outcome == records[i].outcome);
        CHECK(parallel[i].objective == records[i].objective);
        CHECK(parallel[i].stats.fails == records[i].stats.fails);
    }
    std::remove(cfg_path.c_str());
    std::remove(tsp_path.c_str());
}

TEST_CASE("table rendering") {
    RunRecord solved;
    solved.instance = "alpha";
    solved.strategy = "lds";
    solved.outcome = Outcome::Solved;
    solved.stats.wall_time = 0.50;
    solved.stats.fails = 5;
    solved.stats.solution_discrepancy = 2;

    RunRecord limited;
    limited.instance = "alpha";
    limited.strategy = "dbs";
    limited.outcome = Outcome::Limit;

    RunRecord infeasible;
    infeasible.instance = "beta";
    infeasible.strategy = "lds";
    infeasible.outcome = Outcome::Infeasible;
    infeasible.stats.wall_time = 0.25;
    infeasible.stats.fails = 3;

    std::string table = format_table({solved, limited, infeasible});
    CHECK(table.find("lds time/fails/discr") != std::string::npos);
    CHECK(table.find("dbs time/fails/discr") != std::string::npos);
    CHECK(table.find("0.50 / 5 / 2") != std::string::npos);
    CHECK(table.find("N.A. / N.A. / N.A.") != std::string::npos);
    CHECK(table.find("(infeasible)") != std::string::npos);
    CHECK(table.find("\nsum") != std::string::npos);
    CHECK(table.find("\nmean") != std::string::npos);
    // the limited run must not contribute to the aggregates
    CHECK(table.find("0.75 / 8 / -") != std::string::npos);
}
