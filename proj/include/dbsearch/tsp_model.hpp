#pragma once

#include <memory>

#include "dbsearch/assignment.hpp"
#include "dbsearch/engine.hpp"
#include "dbsearch/tsplib.hpp"

namespace dbsearch {

// Successor formulation: variable i ranges over the cities that may follow
// city i. Constraints: alldifferent (a city has one predecessor), subtour
// elimination, and cost filtering against the incumbent tour length driven
// by the assignment relaxation (bound + reduced-cost arc removal).
struct TspModel {
    std::unique_ptr<Problem> problem;
    std::shared_ptr<Incumbent> incumbent;
    Evaluator evaluator; // rank = -reduced cost from the assignment relaxation
    std::function<long long(const std::vector<int>&)> objective;
};

TspModel build_tsp_model(const TspInstance& inst);

// Assignment relaxation of the residual problem. Assigned arcs are
// contracted out: their rows and columns leave the matrix and their cost is
// added to the bound, so duals and reduced costs describe only the arcs
// still open in the domains.
struct TspRelaxation {
    bool feasible = false;
    long long lower_bound = 0; // contracted arc cost + residual optimum
    std::vector<int> row_index; // city -> residual row, -1 when assigned
    std::vector<int> col_index; // city -> residual column, -1 when taken
    CostMatrix rc;              // residual reduced-cost matrix

    long long reduced_cost(int var, int value) const {
        return rc[static_cast<size_t>(row_index[static_cast<size_t>(var)])]
                 [static_cast<size_t>(col_index[static_cast<size_t>(value)])];
    }
};

TspRelaxation tsp_relaxation(const Problem& p, const TspInstance& inst);

} // namespace dbsearch
