#include "dbsearch/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>

#include "dbsearch/pls_model.hpp"
#include "dbsearch/ranking.hpp"
#include "dbsearch/tsp_model.hpp"

namespace dbsearch {

namespace {

long long parse_int(const std::string& s, const std::string& what) {
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        throw std::runtime_error("bad " + what + " \"" + s + "\"");
    return v;
}

// relative_epsilon scales with the largest |rank| of the row (0 = exact
// ties only, for integer heuristics).
void apply_strategy(SearchConfig& cfg, const Strategy& s, double relative_epsilon) {
    auto plateau = [relative_epsilon](const RankedValues& rv) {
        double scale = 0.0;
        for (const RankedValue& r : rv) scale = std::max(scale, std::abs(r.rank));
        return partition_plateau(rv, relative_epsilon * scale);
    };
    switch (s.kind) {
    case Strategy::Kind::DFS:
        cfg.selector = Selector::DFS;
        break;
    case Strategy::Kind::LDS:
    case Strategy::Kind::IB:
        cfg.selector = Selector::LDS;
        break;
    case Strategy::Kind::LDSPref:
        cfg.selector = Selector::LDSPreference;
        break;
    case Strategy::Kind::DBS:
        cfg.selector = Selector::LDS;
        cfg.partitioner = plateau;
        break;
    case Strategy::Kind::DBSPref:
        cfg.selector = Selector::LDSPreference;
        cfg.partitioner = plateau;
        break;
    }
}

SearchResult dispatch(Problem& p, const Strategy& s, const SearchConfig& cfg) {
    if (s.kind == Strategy::Kind::IB) return ib_solve(p, s.cutoffs, cfg);
    return dbs_solve(p, cfg);
}

} // namespace

Strategy parse_strategy(const std::string& id) {
    Strategy s;
    s.id = id;
    if (id == "dfs") {
        s.kind = Strategy::Kind::DFS;
    } else if (id == "lds") {
        s.kind = Strategy::Kind::LDS;
    } else if (id == "lds-pref") {
        s.kind = Strategy::Kind::LDSPref;
    } else if (id == "dbs") {
        s.kind = Strategy::Kind::DBS;
    } else if (id == "dbs-pref") {
        s.kind = Strategy::Kind::DBSPref;
    } else if (id.rfind("ib:", 0) == 0) {
        s.kind = Strategy::Kind::IB;
        std::stringstream ss(id.substr(3));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            long long c = parse_int(tok, "cutoff");
            if (c < 1 || (!s.cutoffs.empty() && c <= s.cutoffs.back()))
                throw std::runtime_error("cutoffs must be strictly increasing and positive");
            s.cutoffs.push_back(static_cast<int>(c));
        }
        if (s.cutoffs.empty()) throw std::runtime_error("ib: needs at least one cutoff");
    } else {
        throw std::runtime_error("unknown strategy \"" + id + "\"");
    }
    return s;
}

RunRecord run_tsp(const TspInstance& inst, const Strategy& strategy, const RunLimits& limits,
                  std::optional<long long> optimum, std::string label) {
    TspModel model = build_tsp_model(inst);
    SearchConfig cfg;
    cfg.var_order = VarOrder::FirstFail;
    cfg.evaluator = model.evaluator;
    cfg.objective = model.objective;
    cfg.incumbent = model.incumbent;
    cfg.stop.time_limit = limits.time_limit;
    cfg.stop.node_limit = limits.node_limit;
    if (optimum) {
        cfg.stop.kind = StopKind::OptimumFound;
        cfg.stop.optimum = *optimum;
        // The target value is known, so anything provably worse is dead
        // weight: seed the bound to admit optimal-value tours only.
        model.incumbent->best = *optimum + 1;
    } else {
        cfg.stop.kind = StopKind::Exhausted;
    }
    apply_strategy(cfg, strategy, 1e-9);
    // A few generation levels diversify the top of the tree; below them the
    // cost-filtered depth-first dive is already near-perfect, and deeper
    // plateau boxes only get more expensive to refute.
    if (strategy.kind == Strategy::Kind::DBS || strategy.kind == Strategy::Kind::DBSPref)
        cfg.depth_bound = std::min(3, inst.n);

    SearchResult r = dispatch(*model.problem, strategy, cfg);

    RunRecord rec;
    rec.instance = label.empty() ? inst.name : std::move(label);
    rec.strategy = strategy.id;
    rec.stats = r.stats;
    rec.objective = r.objective_value;
    if (r.solution) {
        if (!verify_tour(inst, *r.solution, *r.objective_value))
            throw std::logic_error(rec.instance + ": reported tour failed verification");
        if (optimum && *r.objective_value == *optimum)
            rec.outcome = Outcome::Optimal;
        else if (r.termination == Termination::Exhausted)
            rec.outcome = Outcome::Optimal; // proven by exhaustion
        else
            rec.outcome = Outcome::Solved;
    } else {
        rec.outcome = r.termination == Termination::Limit ? Outcome::Limit : Outcome::Infeasible;
    }
    return rec;
}

RunRecord run_pls(const PlsInstance& inst, const Strategy& strategy, const RunLimits& limits,
                  std::string label) {
    PlsModel model = build_pls_model(inst);
    SearchConfig cfg;
    cfg.var_order = VarOrder::FirstFail;
    cfg.evaluator = model.evaluator;
    cfg.stop.kind = StopKind::FirstSolution;
    cfg.stop.time_limit = limits.time_limit;
    cfg.stop.node_limit = limits.node_limit;
    apply_strategy(cfg, strategy, 0.0);
    // Same reasoning as the TSP depth bound: occurrence plateaus are wide,
    // so a moderate number of generation levels is enough diversification.
    if (strategy.kind == Strategy::Kind::DBS || strategy.kind == Strategy::Kind::DBSPref)
        cfg.depth_bound = std::min(15, model.problem->num_vars());

    SearchResult r = dispatch(*model.problem, strategy, cfg);

    RunRecord rec;
    rec.instance = std::move(label);
    rec.strategy = strategy.id;
    rec.stats = r.stats;
    if (r.solution) {
        if (!verify_pls_solution(inst, *r.solution))
            throw std::logic_error(rec.instance + ": reported square failed verification");
        rec.outcome = Outcome::Solved;
    } else {
        rec.outcome = r.termination == Termination::Limit ? Outcome::Limit : Outcome::Infeasible;
    }
    return rec;
}

BenchConfig parse_bench_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    BenchConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t eq = line.find('=');
        auto strip = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            size_t z = s.find_last_not_of(" \t\r");
            return s.substr(a, z - a + 1);
        };
        std::string key = strip(eq == std::string::npos ? line : line.substr(0, eq));
        std::string value = eq == std::string::npos ? "" : strip(line.substr(eq + 1));
        if (key.empty()) continue;
        try {
            if (key == "instance") {
                cfg.instances.push_back(value);
            } else if (key == "strategy") {
                parse_strategy(value);
                cfg.strategies.push_back(value);
            } else if (key == "time_limit") {
                double v = std::strtod(value.c_str(), nullptr);
                cfg.limits.time_limit = v > 0 ? std::optional(v) : std::nullopt;
            } else if (key == "node_limit") {
                cfg.limits.node_limit = parse_int(value, "node_limit");
            } else if (key == "optimum") {
                size_t colon = value.rfind(':');
                if (colon == std::string::npos)
                    throw std::runtime_error("optimum must be name:value");
                cfg.optima.emplace_back(value.substr(0, colon),
                                        parse_int(value.substr(colon + 1), "optimum"));
            } else if (key == "seed") {
                cfg.seed = static_cast<uint64_t>(parse_int(value, "seed"));
            } else if (key == "threads") {
                cfg.threads = static_cast<int>(parse_int(value, "threads"));
                if (cfg.threads < 1) throw std::runtime_error("threads must be >= 1");
            } else {
                throw std::runtime_error("unknown key \"" + key + "\"");
            }
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (cfg.instances.empty()) throw std::runtime_error(path + ": no instances listed");
    if (cfg.strategies.empty()) throw std::runtime_error(path + ": no strategies listed");
    return cfg;
}

namespace {

struct LoadedInstance {
    std::string label;
    std::variant<TspInstance, PlsInstance> data;
};

std::string file_stem(const std::string& path) {
    size_t slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

LoadedInstance load_instance(const std::string& spec, uint64_t default_seed) {
    if (spec.rfind("gen-pls:", 0) == 0) {
        int order = 0, holes = 0;
        bool balanced = false;
        uint64_t seed = default_seed;
        std::stringstream ss(spec.substr(8));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            size_t eq = tok.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error(spec + ": expected key=value, got \"" + tok + "\"");
            std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
            if (k == "order") order = static_cast<int>(parse_int(v, "order"));
            else if (k == "holes") holes = static_cast<int>(parse_int(v, "holes"));
            else if (k == "balanced") balanced = parse_int(v, "balanced") != 0;
            else if (k == "seed") seed = static_cast<uint64_t>(parse_int(v, "seed"));
            else throw std::runtime_error(spec + ": unknown key \"" + k + "\"");
        }
        std::string label = (balanced ? "bpls.order" : "pls.order") + std::to_string(order) +
                            ".holes" + std::to_string(holes) + ".seed" + std::to_string(seed);
        return {label, generate_pls(order, holes, balanced, seed)};
    }
    if (spec.size() >= 4 && spec.substr(spec.size() - 4) == ".pls")
        return {file_stem(spec), parse_pls(spec)};
    TspInstance t = parse_tsplib(spec);
    std::string label = t.name.empty() ? file_stem(spec) : t.name;
    return {label, std::move(t)};
}

} // namespace

std::vector<RunRecord> run_experiment(const BenchConfig& cfg) {
    std::vector<LoadedInstance> instances;
    instances.reserve(cfg.instances.size());
    for (const std::string& spec : cfg.instances)
        instances.push_back(load_instance(spec, cfg.seed));

    std::vector<Strategy> strategies;
    strategies.reserve(cfg.strategies.size());
    for (const std::string& id : cfg.strategies) strategies.push_back(parse_strategy(id));

    struct Job {
        const LoadedInstance* inst;
        const Strategy* strat;
    };
    std::vector<Job> jobs;
    for (const LoadedInstance& li : instances)
        for (const Strategy& s : strategies) jobs.push_back({&li, &s});
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
        if (a.inst->label != b.inst->label) return a.inst->label < b.inst->label;
        return a.strat->id < b.strat->id;
    });

    std::vector<RunRecord> records(jobs.size());
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job& job = jobs[i];
            try {
                if (const TspInstance* t = std::get_if<TspInstance>(&job.inst->data)) {
                    std::optional<long long> optimum;
                    for (const auto& [name, value] : cfg.optima)
                        if (name == job.inst->label) optimum = value;
                    if (!optimum && t->n <= 20) optimum = held_karp(*t);
                    records[i] = run_tsp(*t, *job.strat, cfg.limits, optimum, job.inst->label);
                } else {
                    records[i] = run_pls(std::get<PlsInstance>(job.inst->data), *job.strat,
                                         cfg.limits, job.inst->label);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    int workers = std::min<int>(cfg.threads, static_cast<int>(jobs.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return records;
}

std::string format_table(const std::vector<RunRecord>& records) {
    std::vector<std::string> strategies;
    std::vector<std::string> instances;
    std::map<std::pair<std::string, std::string>, const RunRecord*> cell;
    for (const RunRecord& r : records) {
        if (std::find(strategies.begin(), strategies.end(), r.strategy) == strategies.end())
            strategies.push_back(r.strategy);
        if (std::find(instances.begin(), instances.end(), r.instance) == instances.end())
            instances.push_back(r.instance);
        cell[{r.instance, r.strategy}] = &r;
    }

    std::ostringstream out;
    size_t iw = 8;
    for (const std::string& i : instances) iw = std::max(iw, i.size());
    out << std::left << std::setw(static_cast<int>(iw)) << "instance";
    for (const std::string& s : strategies)
        out << " | " << std::left << std::setw(26) << (s + " time/fails/discr");
    out << "\n";
    out << std::string(iw, '-');
    for (size_t s = 0; s < strategies.size(); ++s) out << "-+-" << std::string(26, '-');
    out << "\n";

    std::map<std::string, std::pair<double, long long>> sums; // strategy -> (time, fails)
    std::map<std::string, int> counts;
    for (const std::string& i : instances) {
        out << std::left << std::setw(static_cast<int>(iw)) << i;
        for (const std::string& s : strategies) {
            auto it = cell.find({i, s});
            std::ostringstream c;
            if (it == cell.end()) {
                c << "-";
            } else if (it->second->outcome == Outcome::Limit) {
                c << "N.A. / N.A. / N.A.";
            } else {
                const RunRecord& r = *it->second;
                c << std::fixed << std::setprecision(2) << r.stats.wall_time << " / "
                  << r.stats.fails << " / ";
                if (r.stats.solution_discrepancy)
                    c << *r.stats.solution_discrepancy;
                else
                    c << "-";
                if (r.outcome == Outcome::Infeasible) c << " (infeasible)";
                sums[s].first += r.stats.wall_time;
                sums[s].second += r.stats.fails;
                ++counts[s];
            }
            out << " | " << std::left << std::setw(26) << c.str();
        }
        out << "\n";
    }
    out << std::left << std::setw(static_cast<int>(iw)) << "sum";
    for (const std::string& s : strategies) {
        std::ostringstream c;
        c << std::fixed << std::setprecision(2) << sums[s].first << " / " << sums[s].second
          << " / -";
        out << " | " << std::left << std::setw(26) << c.str();
    }
    out << "\n" << std::left << std::setw(static_cast<int>(iw)) << "mean";
    for (const std::string& s : strategies) {
        std::ostringstream c;
        int n = std::max(counts[s], 1);
        c << std::fixed << std::setprecision(2) << sums[s].first / n << " / "
          << static_cast<double>(sums[s].second) / n << " / -";
        out << " | " << std::left << std::setw(26) << c.str();
    }
    out << "\n";
    return out.str();
}

} // namespace dbsearch
