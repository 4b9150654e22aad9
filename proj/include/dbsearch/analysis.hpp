#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dbsearch/engine.hpp"

namespace dbsearch {

// Branch success probabilities of the synthetic ordered tree: width b,
// depth n, p[j] = probability that branch j+1 (label j) leads to the
// successful leaf. Non-increasing, sums to 1.
struct ProbabilityModel {
    int b = 0;
    int n = 0;
    std::vector<double> p;
};

bool validate_model(const ProbabilityModel& m, double tol = 1e-12);

// One equivalence class of compositions of k into n parts (each part in
// 0..b-1), canonicalized by its part-value counts. multiplicity = number of
// orderings, n! / prod counts[t]!.
struct CompositionClass {
    std::vector<int> counts;
    unsigned long long multiplicity = 0;
};

struct PartitionSet {
    int k = 0;
    std::vector<CompositionClass> entries;
};

PartitionSet enumerate_partitions(int k, int n, int b);

struct SuccessPoint {
    unsigned long long leaves = 0;
    double probability = 0.0;
};

// (sum of the first c branch probabilities)^n over c^n leaves.
SuccessPoint prob_dbs(int c, const ProbabilityModel& m);
// Mass of the discrepancy-k wave and its leaf count.
SuccessPoint prob_lds(int k, const ProbabilityModel& m);

// Number of depth-n label paths per discrepancy value 0..n(b-1).
std::vector<unsigned long long> lds_wave_leaves(int b, int n);

enum class Schedule { LDS, DBS, DBS2WithLDS };

// Cumulative (leaves visited, probability of having seen the successful
// leaf) points. LDS: one point per discrepancy wave. DBS: one point per
// subdomain cardinality c = 1..b (the first subproblem). DBS2WithLDS: cells
// of size 2 (last may be 1), one point per subproblem in discrepancy order.
std::vector<SuccessPoint> cumulative_success(Schedule schedule, const ProbabilityModel& m);

// Oracle: accumulates leaf masses in an explicit visitation order. A leaf is
// a complete assignment; value v selects branch v+1. Requires b^n <= 1e6.
std::vector<SuccessPoint> brute_force_success(const std::vector<std::vector<int>>& visitation_order,
                                              const ProbabilityModel& m);

// Runs the search engine on an unconstrained CSP (n variables, domains
// 0..b-1) and records the visited assignments in order. Requires b^n <= 1e6.
std::vector<std::vector<int>> engine_leaf_order(int b, int n, Selector selector,
                                                Partitioner partitioner = {});

struct TheoremCheck {
    bool precondition_ok = false;
    bool holds = false;
    double dbs_side = 0.0;
    double lds_side = 0.0;
    bool equality_expected = false;
};

// Mean success per leaf: prob(DBS(c))/c^n vs prob(LDS<=k)/leaves(LDS<=k),
// on models whose best plateau has size >= c.
TheoremCheck check_theorem2(const ProbabilityModel& m, int c, int k);
// Equal budget: prob(DBS(c)) vs prob(LDS<=k) when leaves(LDS<=k) <= c^n, on
// strictly decreasing models with p_1^{n-1} p_{c+1} < p_c^n.
TheoremCheck check_theorem3(const ProbabilityModel& m, int c, int k);

enum class Family { Linear, Poisson, Binomial };

struct DistributionSpec {
    Family family = Family::Linear;
    // (count, size); count*size must equal b. Values are replaced by the
    // average of their run, yielding `count` plateaus of `size` equal values.
    std::optional<std::pair<int, int>> plateaus;
    double lambda = 2.0;
    double q = 0.35;
};

ProbabilityModel make_distribution(const DistributionSpec& spec, int b, int n = 1);

struct TheoremReport {
    bool ok = false;
    long long checks = 0;
    std::string details;
};

// Theorem 1 on the synthetic b=4, n=3 tree plus Theorems 2-3 over the full
// admissible grid up to max_b, max_n.
TheoremReport verify_theorems(int max_b, int max_n);

} // namespace dbsearch
