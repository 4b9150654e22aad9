#pragma once

#include <functional>
#include <vector>

#include "dbsearch/domain.hpp"

namespace dbsearch {

// Ranked domain values, best first. Higher rank is better; equal-rank runs
// form plateaus. Ties are broken by ascending value for determinism.
struct RankedValue {
    int value;
    double rank;
};
using RankedValues = std::vector<RankedValue>;

// Ordered disjoint cover of a domain, best cell first.
struct DomainPartition {
    std::vector<std::vector<int>> cells;
};

// rank(v) = -reduced_cost(v): lowest reduced cost first.
RankedValues rank_reduced_cost(const Domain& dom, const std::function<long long(int)>& reduced_cost);

// rank(v) = occurrences[v]: most frequent value first.
RankedValues rank_occurrence(const Domain& dom, const std::vector<int>& occurrences);

// Groups consecutive values whose ranks differ by <= epsilon into one cell.
DomainPartition partition_plateau(const RankedValues& ranked, double epsilon);

// The (*) partitioner: cell 0 holds the best c_0 values, cell t the values
// ranked c_{t-1}+1 .. c_t. Cutoffs beyond the domain size truncate; values
// past the last cutoff form one final cell, keeping the cover complete.
DomainPartition partition_star(const RankedValues& ranked, const std::vector<int>& cutoffs);

// Cell sizes are fractions of the domain size; earlier cells take the ceiling.
DomainPartition partition_percentile(const RankedValues& ranked, const std::vector<double>& fractions);

} // namespace dbsearch
