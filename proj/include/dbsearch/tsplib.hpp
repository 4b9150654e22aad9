#pragma once

#include <string>
#include <vector>

#include "dbsearch/assignment.hpp"

namespace dbsearch {

struct TspInstance {
    std::string name;
    int n = 0;
    CostMatrix dist; // symmetric; the diagonal is never used
};

enum class EdgeWeightFormat { FullMatrix, LowerDiagRow, UpperRow, UpperDiagRow };

// Subset of the TSPLIB format: TYPE TSP, EDGE_WEIGHT_TYPE EXPLICIT, formats
// above. Throws std::runtime_error with file/line context on bad input.
TspInstance parse_tsplib(const std::string& path);

void emit_tsplib(const TspInstance& inst, const std::string& path, EdgeWeightFormat format);

// Exact optimum of the symmetric TSP; requires n <= 20.
long long held_karp(const TspInstance& inst);

// Tour validity plus exact length; tour is a permutation of 0..n-1 given as
// successor array (tour[i] = city visited after city i).
bool verify_tour(const TspInstance& inst, const std::vector<int>& next, long long expected_length);

} // namespace dbsearch
