#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dbsearch/analysis.hpp"
#include "dbsearch/bench.hpp"
#include "dbsearch/pls.hpp"
#include "dbsearch/tsplib.hpp"

namespace {

using namespace dbsearch;

const char* outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Solved: return "solved";
    case Outcome::Optimal: return "optimal";
    case Outcome::Infeasible: return "infeasible";
    case Outcome::Limit: return "limit";
    }
    return "?";
}

int report_run(const RunRecord& rec) {
    std::printf("%s %s: %s", rec.instance.c_str(), rec.strategy.c_str(),
                outcome_name(rec.outcome));
    if (rec.objective) std::printf(" %lld", *rec.objective);
    std::printf(" in %.3f s, %lld fails", rec.stats.wall_time, rec.stats.fails);
    if (rec.stats.solution_discrepancy)
        std::printf(", discrepancy %d", *rec.stats.solution_discrepancy);
    std::printf("\n");
    return rec.outcome == Outcome::Solved || rec.outcome == Outcome::Optimal ? 0 : 1;
}

int cmd_solve_tsp(const std::string& file, const std::string& strategy_id,
                  const std::string& optimum_arg, const RunLimits& limits) {
    TspInstance inst = parse_tsplib(file);
    Strategy strategy = parse_strategy(strategy_id);
    std::optional<long long> optimum;
    if (optimum_arg == "auto")
        optimum = held_karp(inst);
    else if (!optimum_arg.empty())
        optimum = std::stoll(optimum_arg);
    return report_run(run_tsp(inst, strategy, limits, optimum));
}

int cmd_solve_pls(const std::string& file, const std::string& strategy_id,
                  const RunLimits& limits) {
    PlsInstance inst = parse_pls(file);
    Strategy strategy = parse_strategy(strategy_id);
    size_t slash = file.find_last_of('/');
    std::string label = slash == std::string::npos ? file : file.substr(slash + 1);
    return report_run(run_pls(inst, strategy, limits, label));
}

int cmd_gen_pls(int order, int holes, bool balanced, uint64_t seed, const std::string& out) {
    PlsInstance inst = generate_pls(order, holes, balanced, seed);
    emit_pls(inst, out);
    std::printf("wrote %s: order %d, %d holes%s, seed %llu\n", out.c_str(), order, holes,
                balanced ? " (balanced)" : "", static_cast<unsigned long long>(seed));
    return 0;
}

Family parse_family(const std::string& name) {
    if (name == "linear") return Family::Linear;
    if (name == "poisson") return Family::Poisson;
    if (name == "binomial") return Family::Binomial;
    throw std::runtime_error("unknown family \"" + name + "\" (linear|poisson|binomial)");
}

int cmd_curves(int b, int n, const std::string& family, bool plateaus, const std::string& out) {
    DistributionSpec spec;
    spec.family = parse_family(family);
    if (plateaus) {
        if (b % 2 != 0) throw std::runtime_error("--plateaus needs an even branch width");
        spec.plateaus = {b / 2, 2};
    }
    ProbabilityModel m = make_distribution(spec, b, n);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw std::runtime_error(out + ": cannot open for writing");
        os = &file;
    }
    *os << "strategy,leaves,cum_prob\n";
    const std::pair<Schedule, const char*> rows[] = {
        {Schedule::LDS, "lds"},
        {Schedule::DBS, "dbs"},
        {Schedule::DBS2WithLDS, "dbs2-with-lds"},
    };
    char buf[64];
    for (const auto& [schedule, name] : rows)
        for (const SuccessPoint& pt : cumulative_success(schedule, m)) {
            std::snprintf(buf, sizeof buf, "%.12g", pt.probability);
            *os << name << ',' << pt.leaves << ',' << buf << '\n';
        }
    if (!out.empty() && !file.good()) throw std::runtime_error(out + ": write failed");
    return 0;
}

int cmd_verify_theorems(int max_b, int max_n) {
    TheoremReport report = verify_theorems(max_b, max_n);
    std::cout << report.details;
    std::printf("%lld checks, %s\n", report.checks, report.ok ? "all hold" : "VIOLATIONS FOUND");
    return report.ok ? 0 : 1;
}

int cmd_bench(const std::string& config) {
    BenchConfig cfg = parse_bench_config(config);
    std::vector<RunRecord> records = run_experiment(cfg);
    std::cout << format_table(records);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decomposition-based search: TSP / partial latin square solvers, "
                 "probability curves, and theorem checks"};
    app.require_subcommand(1);

    std::string file, strategy = "dbs", optimum, out, family = "linear", config;
    double time_limit = 900.0;
    long long node_limit = 0;
    int order = 25, holes = 0, b = 8, n = 8, max_b = 6, max_n = 5;
    bool balanced = false, plateaus = false;
    uint64_t seed = 1;

    CLI::App* solve_tsp = app.add_subcommand("solve-tsp", "Solve a TSPLIB instance");
    solve_tsp->add_option("file", file, "TSPLIB file (EXPLICIT edge weights)")->required();
    solve_tsp->add_option("--strategy", strategy, "dfs | lds | lds-pref | dbs | dbs-pref | ib:c1,c2,...");
    solve_tsp->add_option("--optimum", optimum, "known optimum, or \"auto\" for Held-Karp (n <= 20)");
    solve_tsp->add_option("--time-limit", time_limit, "seconds, 0 = none");
    solve_tsp->add_option("--node-limit", node_limit, "expanded-node cap, 0 = none");

    CLI::App* solve_pls = app.add_subcommand("solve-pls", "Complete a partial latin square");
    solve_pls->add_option("file", file, "PLS file (0 = hole)")->required();
    solve_pls->add_option("--strategy", strategy, "dfs | lds | lds-pref | dbs | dbs-pref | ib:c1,c2,...");
    solve_pls->add_option("--time-limit", time_limit, "seconds, 0 = none");
    solve_pls->add_option("--node-limit", node_limit, "expanded-node cap, 0 = none");

    CLI::App* gen_pls = app.add_subcommand("gen-pls", "Generate a completable partial latin square");
    gen_pls->add_option("--order", order, "square order")->required();
    gen_pls->add_option("--holes", holes, "number of blanked cells")->required();
    gen_pls->add_flag("--balanced", balanced, "spread holes evenly over rows and columns");
    gen_pls->add_option("--seed", seed, "generator seed");
    gen_pls->add_option("--out", out, "output path")->required();

    CLI::App* curves = app.add_subcommand("curves", "Cumulative success curves (CSV)");
    curves->add_option("--b", b, "branch width")->required();
    curves->add_option("--n", n, "depth")->required();
    curves->add_option("--family", family, "linear | poisson | binomial")->required();
    curves->add_flag("--plateaus", plateaus, "group the distribution into b/2 plateaus of size 2");
    curves->add_option("--out", out, "CSV path (default: stdout)");

    CLI::App* verify = app.add_subcommand("verify-theorems", "Check the probability theorems on a grid");
    verify->add_option("--max-b", max_b, "largest branch width");
    verify->add_option("--max-n", max_n, "largest depth");

    CLI::App* bench = app.add_subcommand("bench", "Run an instance x strategy experiment");
    bench->add_option("--config", config, "key=value config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        RunLimits limits;
        limits.time_limit = time_limit > 0 ? std::optional<double>(time_limit) : std::nullopt;
        limits.node_limit = node_limit > 0 ? std::optional<long long>(node_limit) : std::nullopt;
        if (solve_tsp->parsed()) return cmd_solve_tsp(file, strategy, optimum, limits);
        if (solve_pls->parsed()) return cmd_solve_pls(file, strategy, limits);
        if (gen_pls->parsed()) return cmd_gen_pls(order, holes, balanced, seed, out);
        if (curves->parsed()) return cmd_curves(b, n, family, plateaus, out);
        if (verify->parsed()) return cmd_verify_theorems(max_b, max_n);
        if (bench->parsed()) return cmd_bench(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
