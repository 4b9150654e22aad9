#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dbsearch/engine.hpp"
#include "dbsearch/pls.hpp"
#include "dbsearch/tsplib.hpp"

namespace dbsearch {

// Strategy ids: dfs | lds | lds-pref | dbs | dbs-pref | ib:c1,c2,...
// dbs groups equal-rank values into one subdomain and generates subproblems
// with a plain (non-preference) limited discrepancy selector; the -pref
// variants use the preference-ordered selector.
struct Strategy {
    enum class Kind { DFS, LDS, LDSPref, DBS, DBSPref, IB };
    Kind kind = Kind::LDS;
    std::vector<int> cutoffs;
    std::string id;
};

Strategy parse_strategy(const std::string& id);

enum class Outcome { Solved, Optimal, Infeasible, Limit };

struct RunRecord {
    std::string instance;
    std::string strategy;
    SearchStats stats;
    Outcome outcome = Outcome::Limit;
    std::optional<long long> objective;
};

struct RunLimits {
    std::optional<double> time_limit = 900.0;
    std::optional<long long> node_limit;
};

// Solves to the optimum when one is supplied (stop = optimum found), else
// exhausts within the limits and reports the best tour. Solutions are
// re-verified against the instance before recording.
RunRecord run_tsp(const TspInstance& inst, const Strategy& strategy, const RunLimits& limits,
                  std::optional<long long> optimum, std::string label = {});

RunRecord run_pls(const PlsInstance& inst, const Strategy& strategy, const RunLimits& limits,
                  std::string label);

// Flat key=value file: instance (repeatable; a path or a
// gen-pls:order=..,holes=..,balanced=..,seed=.. spec), strategy (repeatable),
// time_limit, node_limit, optimum (name:value, repeatable), seed, threads.
struct BenchConfig {
    std::vector<std::string> instances;
    std::vector<std::string> strategies;
    RunLimits limits;
    std::vector<std::pair<std::string, long long>> optima;
    uint64_t seed = 1;
    int threads = 1;
};

BenchConfig parse_bench_config(const std::string& path);

// Runs every instance under every strategy ((instance, strategy) cells may
// run in parallel) and returns records sorted by instance then strategy id.
std::vector<RunRecord> run_experiment(const BenchConfig& cfg);

// Paper-style table: one row per instance, a time/fails/discr column group
// per strategy, sum and mean rows over the solved runs (limit hits print
// N.A. and are excluded from aggregates).
std::string format_table(const std::vector<RunRecord>& records);

} // namespace dbsearch
