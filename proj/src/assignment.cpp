#include "dbsearch/assignment.hpp"

#include <cassert>
#include <cstdlib>
#include <limits>

namespace dbsearch {

AssignmentResult solve_assignment(const CostMatrix& cost,
                                  const std::vector<std::vector<char>>* forbidden) {
    const int n = static_cast<int>(cost.size());
    AssignmentResult res;
    if (n == 0) {
        res.feasible = true;
        return res;
    }

    long long max_abs = 0;
    for (auto& row : cost) {
        assert(static_cast<int>(row.size()) == n);
        for (long long c : row) max_abs = std::max(max_abs, c < 0 ? -c : c);
    }
    // A matching with one sentinel arc must cost more than any matching of
    // real arcs: sentinel - (n-1)*max_abs > n*max_abs.
    const long long sentinel = 1 + 2 * static_cast<long long>(n) * max_abs;
    assert(sentinel < std::numeric_limits<long long>::max() / (4 * n) && "cost magnitude overflow");

    auto w = [&](int i, int j) -> long long {
        if (forbidden && (*forbidden)[static_cast<size_t>(i)][static_cast<size_t>(j)]) return sentinel;
        return cost[static_cast<size_t>(i)][static_cast<size_t>(j)];
    };

    // Jonker-Volgenant style shortest augmenting paths with potentials,
    // 1-based arrays; p[j] = row matched to column j.
    const long long INF = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> uu(static_cast<size_t>(n) + 1, 0), vv(static_cast<size_t>(n) + 1, 0);
    std::vector<int> p(static_cast<size_t>(n) + 1, 0), way(static_cast<size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<long long> minv(static_cast<size_t>(n) + 1, INF);
        std::vector<char> used(static_cast<size_t>(n) + 1, 0);
        do {
            used[static_cast<size_t>(j0)] = 1;
            int i0 = p[static_cast<size_t>(j0)], j1 = 0;
            long long delta = INF;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<size_t>(j)]) continue;
                long long cur = w(i0 - 1, j - 1) - uu[static_cast<size_t>(i0)] - vv[static_cast<size_t>(j)];
                if (cur < minv[static_cast<size_t>(j)]) {
                    minv[static_cast<size_t>(j)] = cur;
                    way[static_cast<size_t>(j)] = j0;
                }
                if (minv[static_cast<size_t>(j)] < delta) {
                    delta = minv[static_cast<size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<size_t>(j)]) {
                    uu[static_cast<size_t>(p[static_cast<size_t>(j)])] += delta;
                    vv[static_cast<size_t>(j)] -= delta;
                } else {
                    minv[static_cast<size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<size_t>(j0)] != 0);
        do {
            int j1 = way[static_cast<size_t>(j0)];
            p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j1)];
            j0 = j1;
        } while (j0);
    }

    res.matching.assign(static_cast<size_t>(n), -1);
    for (int j = 1; j <= n; ++j) res.matching[static_cast<size_t>(p[static_cast<size_t>(j)]) - 1] = j - 1;
    res.u.assign(static_cast<size_t>(n), 0);
    res.v.assign(static_cast<size_t>(n), 0);
    for (int i = 1; i <= n; ++i) res.u[static_cast<size_t>(i) - 1] = uu[static_cast<size_t>(i)];
    for (int j = 1; j <= n; ++j) res.v[static_cast<size_t>(j) - 1] = vv[static_cast<size_t>(j)];

    res.feasible = true;
    res.optimal_value = 0;
    for (int i = 0; i < n; ++i) {
        int j = res.matching[static_cast<size_t>(i)];
        if (forbidden && (*forbidden)[static_cast<size_t>(i)][static_cast<size_t>(j)]) res.feasible = false;
        res.optimal_value += cost[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    res.reduced_costs.assign(static_cast<size_t>(n), std::vector<long long>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            res.reduced_costs[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                w(i, j) - res.u[static_cast<size_t>(i)] - res.v[static_cast<size_t>(j)];
    if (!res.feasible) res.optimal_value = 0;
    return res;
}

} // namespace dbsearch
