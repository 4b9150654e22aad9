#pragma once

#include <memory>

#include "dbsearch/engine.hpp"
#include "dbsearch/pls.hpp"

namespace dbsearch {

// Cell formulation: one variable per cell (row-major), domain 1..n,
// alldifferent on every row and column. Pre-filled cells are assigned at
// build time; the engine's root propagation establishes the fixpoint.
struct PlsModel {
    std::unique_ptr<Problem> problem;
    Evaluator evaluator; // rank = current occurrence count of the value
};

PlsModel build_pls_model(const PlsInstance& inst);

} // namespace dbsearch
