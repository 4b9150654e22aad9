#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dbsearch/analysis.hpp"
#include "dbsearch/bench.hpp"
#include "dbsearch/pls.hpp"
#include "dbsearch/tsplib.hpp"

namespace py = pybind11;
using namespace dbsearch;

namespace {

const char* outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Solved: return "solved";
    case Outcome::Optimal: return "optimal";
    case Outcome::Infeasible: return "infeasible";
    case Outcome::Limit: return "limit";
    }
    return "?";
}

py::dict record_to_dict(const RunRecord& rec) {
    py::dict d;
    d["instance"] = rec.instance;
    d["strategy"] = rec.strategy;
    d["outcome"] = outcome_name(rec.outcome);
    d["objective"] = rec.objective ? py::object(py::int_(*rec.objective)) : py::none();
    d["time"] = rec.stats.wall_time;
    d["fails"] = rec.stats.fails;
    d["discrepancy"] = rec.stats.solution_discrepancy
                           ? py::object(py::int_(*rec.stats.solution_discrepancy))
                           : py::none();
    return d;
}

RunLimits make_limits(double time_limit, long long node_limit) {
    RunLimits limits;
    limits.time_limit = time_limit > 0 ? std::optional<double>(time_limit) : std::nullopt;
    limits.node_limit = node_limit > 0 ? std::optional<long long>(node_limit) : std::nullopt;
    return limits;
}

ProbabilityModel make_model(int b, int n, const std::vector<double>& p) {
    ProbabilityModel m;
    m.b = b;
    m.n = n;
    m.p = p;
    validate_model(m);
    return m;
}

Family parse_family(const std::string& name) {
    if (name == "linear") return Family::Linear;
    if (name == "poisson") return Family::Poisson;
    if (name == "binomial") return Family::Binomial;
    throw std::invalid_argument("unknown family \"" + name + "\"");
}

} // namespace

PYBIND11_MODULE(dbsearch, mod) {
    mod.doc() = "Decomposition-based search: solvers and probability analysis";

    mod.def(
        "solve_tsp",
        [](const std::string& path, const std::string& strategy, py::object optimum,
           double time_limit, long long node_limit) {
            TspInstance inst = parse_tsplib(path);
            std::optional<long long> opt;
            if (py::isinstance<py::str>(optimum)) {
                if (optimum.cast<std::string>() != "auto")
                    throw std::invalid_argument("optimum: integer, \"auto\", or None");
                opt = held_karp(inst);
            } else if (!optimum.is_none()) {
                opt = optimum.cast<long long>();
            }
            return record_to_dict(
                run_tsp(inst, parse_strategy(strategy), make_limits(time_limit, node_limit), opt));
        },
        py::arg("path"), py::arg("strategy") = "dbs", py::arg("optimum") = py::none(),
        py::arg("time_limit") = 900.0, py::arg("node_limit") = 0);

    mod.def(
        "solve_pls",
        [](const std::string& path, const std::string& strategy, double time_limit,
           long long node_limit) {
            PlsInstance inst = parse_pls(path);
            return record_to_dict(run_pls(inst, parse_strategy(strategy),
                                          make_limits(time_limit, node_limit), path));
        },
        py::arg("path"), py::arg("strategy") = "dbs", py::arg("time_limit") = 900.0,
        py::arg("node_limit") = 0);

    mod.def(
        "gen_pls",
        [](int order, int holes, bool balanced, uint64_t seed, const std::string& out) {
            emit_pls(generate_pls(order, holes, balanced, seed), out);
        },
        py::arg("order"), py::arg("holes"), py::arg("balanced") = false, py::arg("seed") = 1,
        py::arg("out"));

    mod.def(
        "held_karp", [](const std::string& path) { return held_karp(parse_tsplib(path)); },
        py::arg("path"));

    mod.def(
        "prob_dbs",
        [](int c, int b, int n, const std::vector<double>& p) {
            SuccessPoint pt = prob_dbs(c, make_model(b, n, p));
            return py::make_tuple(pt.leaves, pt.probability);
        },
        py::arg("c"), py::arg("b"), py::arg("n"), py::arg("p"));

    mod.def(
        "prob_lds",
        [](int k, int b, int n, const std::vector<double>& p) {
            SuccessPoint pt = prob_lds(k, make_model(b, n, p));
            return py::make_tuple(pt.leaves, pt.probability);
        },
        py::arg("k"), py::arg("b"), py::arg("n"), py::arg("p"));

    mod.def(
        "curves",
        [](int b, int n, const std::string& family, bool plateaus) {
            DistributionSpec spec;
            spec.family = parse_family(family);
            if (plateaus) {
                if (b % 2 != 0) throw std::invalid_argument("plateaus need an even branch width");
                spec.plateaus = {b / 2, 2};
            }
            ProbabilityModel m = make_distribution(spec, b, n);
            py::list rows;
            const std::pair<Schedule, const char*> schedules[] = {
                {Schedule::LDS, "lds"},
                {Schedule::DBS, "dbs"},
                {Schedule::DBS2WithLDS, "dbs2-with-lds"},
            };
            for (const auto& [schedule, name] : schedules)
                for (const SuccessPoint& pt : cumulative_success(schedule, m))
                    rows.append(py::make_tuple(name, pt.leaves, pt.probability));
            return rows;
        },
        py::arg("b"), py::arg("n"), py::arg("family"), py::arg("plateaus") = false);

    mod.def(
        "verify_theorems",
        [](int max_b, int max_n) {
            TheoremReport report = verify_theorems(max_b, max_n);
            return py::make_tuple(report.ok, report.checks, report.details);
        },
        py::arg("max_b") = 6, py::arg("max_n") = 5);
}
