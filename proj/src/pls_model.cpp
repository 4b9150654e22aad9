#include "dbsearch/pls_model.hpp"

#include "dbsearch/propagators.hpp"
#include "dbsearch/ranking.hpp"

namespace dbsearch {

PlsModel build_pls_model(const PlsInstance& inst) {
    int n = inst.order;
    PlsModel model;
    model.problem = std::make_unique<Problem>();
    Problem& p = *model.problem;

    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            int var = p.add_variable(1, n);
            int pre = inst.grid[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (pre != 0) p.assign(var, pre);
        }
    for (int r = 0; r < n; ++r) {
        std::vector<int> row(static_cast<size_t>(n));
        for (int c = 0; c < n; ++c) row[static_cast<size_t>(c)] = r * n + c;
        p.add_constraint(std::make_unique<AlldifferentGAC>(std::move(row), 1, n));
    }
    for (int c = 0; c < n; ++c) {
        std::vector<int> col(static_cast<size_t>(n));
        for (int r = 0; r < n; ++r) col[static_cast<size_t>(r)] = r * n + c;
        p.add_constraint(std::make_unique<AlldifferentGAC>(std::move(col), 1, n));
    }

    // Most-frequent value first, recounted from the assignments at the
    // current node: the most constrained value is the most supported guess.
    model.evaluator = [n](const Problem& prob, int var) {
        std::vector<int> occ(static_cast<size_t>(n) + 1, 0);
        for (int x = 0; x < prob.num_vars(); ++x)
            if (prob.dom(x).is_assigned()) ++occ[static_cast<size_t>(prob.dom(x).value())];
        return rank_occurrence(prob.dom(var), occ);
    };
    return model;
}

} // namespace dbsearch
