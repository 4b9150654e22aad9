#include "dbsearch/tsp_model.hpp"

#include <cassert>

#include "dbsearch/propagators.hpp"
#include "dbsearch/ranking.hpp"

namespace dbsearch {

TspRelaxation tsp_relaxation(const Problem& p, const TspInstance& inst) {
    size_t n = static_cast<size_t>(inst.n);
    TspRelaxation rel;
    rel.row_index.assign(n, -1);
    rel.col_index.assign(n, -1);

    std::vector<char> taken(n, 0);
    std::vector<int> rows;
    long long contracted = 0;
    for (size_t i = 0; i < n; ++i) {
        const Domain& d = p.dom(static_cast<int>(i));
        if (d.size() == 1) {
            size_t j = static_cast<size_t>(d.min());
            if (taken[j]) return rel; // two cities share a successor
            taken[j] = 1;
            contracted += inst.dist[i][j];
        } else {
            rows.push_back(static_cast<int>(i));
        }
    }
    size_t m = 0;
    for (size_t j = 0; j < n; ++j)
        if (!taken[j]) rel.col_index[j] = static_cast<int>(m++);
    if (rows.empty()) {
        rel.feasible = true;
        rel.lower_bound = contracted;
        return rel;
    }
    assert(rows.size() == m);

    CostMatrix sub(m, std::vector<long long>(m, 0));
    std::vector<std::vector<char>> forbidden(m, std::vector<char>(m, 1));
    for (size_t a = 0; a < rows.size(); ++a) {
        size_t i = static_cast<size_t>(rows[a]);
        rel.row_index[i] = static_cast<int>(a);
        for (size_t j = 0; j < n; ++j)
            if (rel.col_index[j] >= 0)
                sub[a][static_cast<size_t>(rel.col_index[j])] = inst.dist[i][j];
        p.dom(rows[a]).for_each([&](int j) {
            int c = rel.col_index[static_cast<size_t>(j)];
            if (c >= 0) forbidden[a][static_cast<size_t>(c)] = 0;
        });
    }
    AssignmentResult r = solve_assignment(sub, &forbidden);
    if (!r.feasible) return rel;
    rel.feasible = true;
    rel.lower_bound = contracted + r.optimal_value;
    rel.rc = std::move(r.reduced_costs);
    return rel;
}

namespace {

// Cost filtering from the assignment relaxation: fail once the residual
// lower bound reaches the incumbent, and drop every open arc whose reduced
// cost alone closes the remaining gap. The relaxation's matching arcs carry
// zero reduced cost, so while the bound holds every free row keeps at least
// one value.
class CostFilter final : public Propagator {
public:
    CostFilter(std::vector<int> scope, std::shared_ptr<const TspInstance> inst,
               std::shared_ptr<const Incumbent> incumbent)
        : scope_(std::move(scope)),
          inst_(std::move(inst)),
          incumbent_(std::move(incumbent)) {}

    const std::vector<int>& scope() const override { return scope_; }

    PropResult propagate(Problem& p) override {
        TspRelaxation rel = tsp_relaxation(p, *inst_);
        if (!rel.feasible) return PropResult::Failed;
        if (!incumbent_->best) return PropResult::Consistent;
        long long gap = *incumbent_->best - rel.lower_bound;
        if (gap <= 0) return PropResult::Failed;
        for (int i : scope_) {
            if (rel.row_index[static_cast<size_t>(i)] < 0) continue;
            dead_.clear();
            p.dom(i).for_each([&](int j) {
                if (rel.col_index[static_cast<size_t>(j)] >= 0 &&
                    rel.reduced_cost(i, j) >= gap)
                    dead_.push_back(j);
            });
            for (int j : dead_)
                if (!p.remove(i, j)) return PropResult::Failed;
        }
        return PropResult::Consistent;
    }

private:
    std::vector<int> scope_;
    std::shared_ptr<const TspInstance> inst_;
    std::shared_ptr<const Incumbent> incumbent_;
    std::vector<int> dead_;
};

} // namespace

TspModel build_tsp_model(const TspInstance& inst) {
    auto shared = std::make_shared<TspInstance>(inst);
    int n = shared->n;

    TspModel model;
    model.problem = std::make_unique<Problem>();
    model.incumbent = std::make_shared<Incumbent>();
    Problem& p = *model.problem;

    std::vector<int> scope(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        scope[static_cast<size_t>(i)] = p.add_variable(0, n - 1);
        p.remove(i, i);
    }
    p.add_constraint(std::make_unique<AlldifferentGAC>(scope, 0, n - 1));
    p.add_constraint(std::make_unique<NoSubtour>(scope));
    p.add_constraint(std::make_unique<CostFilter>(scope, shared, model.incumbent));

    model.evaluator = [shared](const Problem& prob, int var) {
        TspRelaxation rel = tsp_relaxation(prob, *shared);
        assert(rel.feasible && "relaxation infeasible after propagation");
        return rank_reduced_cost(prob.dom(var),
                                 [&rel, var](int j) { return rel.reduced_cost(var, j); });
    };

    model.objective = [shared](const std::vector<int>& next) {
        long long len = 0;
        for (size_t i = 0; i < next.size(); ++i)
            len += shared->dist[i][static_cast<size_t>(next[i])];
        return len;
    };
    return model;
}

} // namespace dbsearch
