#pragma once

#include <cstdint>
#include <vector>

namespace dbsearch {

using CostMatrix = std::vector<std::vector<long long>>;

// Exact linear assignment solution with integral dual prices.
// reduced_costs[i][j] = cost[i][j] - u[i] - v[j] >= 0 for every feasible pair,
// zero on matching arcs; Sum(u) + Sum(v) = optimal_value.
struct AssignmentResult {
    bool feasible = false;
    long long optimal_value = 0;
    std::vector<int> matching;   // row -> column
    std::vector<long long> u, v; // row and column duals
    CostMatrix reduced_costs;
};

// Shortest-augmenting-path Hungarian method, O(n^3), integer arithmetic.
// Forbidden pairs (forbidden[i][j] != 0) are excluded via a sentinel cost of
// 1 + 2n * max|entry|; the result is infeasible iff no perfect matching
// avoids them. Reduced costs of forbidden pairs are reported against the
// sentinel.
AssignmentResult solve_assignment(const CostMatrix& cost,
                                  const std::vector<std::vector<char>>* forbidden = nullptr);

} // namespace dbsearch
