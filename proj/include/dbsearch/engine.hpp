#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "dbsearch/problem.hpp"
#include "dbsearch/ranking.hpp"

namespace dbsearch {

// Frontier selectors. All three are realized as monotone keys over branch
// label paths, so a best-first frontier visits leaves in exactly the sorted
// order: DFS = lex(labels); LDS = (discrepancy, lex); preference-ordered LDS
// = (discrepancy, max label, lex). Ties of equal discrepancy are thereby
// broken depth-first (deepest first, then leftmost).
enum class Selector { DFS, LDS, LDSPreference };

enum class VarOrder { FirstFail, InputOrder };

enum class StopKind { FirstSolution, OptimumFound, Exhausted };

struct StopCriteria {
    StopKind kind = StopKind::FirstSolution;
    long long optimum = 0; // for OptimumFound
    std::optional<long long> node_limit;
    std::optional<double> time_limit; // seconds
};

struct SearchStats {
    long long fails = 0;          // Failed propagation outcomes (dead ends)
    long long nodes_expanded = 0;
    long long leaves_visited = 0; // complete assignments reached
    std::optional<int> solution_discrepancy;
    double wall_time = 0.0;
};

// Passed to the leaf hook: the complete assignment plus the generation-tree
// path of the subproblem that produced it.
struct LeafInfo {
    const std::vector<int>& assignment;
    const std::vector<uint8_t>& gen_labels;
    int gen_discrepancy;
    int gen_max_label;
};

using Evaluator = std::function<RankedValues(const Problem&, int)>;
using Partitioner = std::function<DomainPartition(const RankedValues&)>;

// Ranks current domain values ascending (smallest value = best).
RankedValues default_evaluator(const Problem& p, int var);
// One cell per ranked value: DBS degenerates to the plain selector strategy.
DomainPartition singleton_partitioner(const RankedValues& ranked);

struct SearchConfig {
    VarOrder var_order = VarOrder::FirstFail;
    Evaluator evaluator;     // default_evaluator when empty
    Partitioner partitioner; // singleton_partitioner when empty
    Selector selector = Selector::LDS;
    std::optional<int> depth_bound; // d; default: every variable
    StopCriteria stop;
    // Optional minimization objective over complete assignments. Improving
    // solutions update the incumbent (when present) and the recorded result.
    std::function<long long(const std::vector<int>&)> objective;
    std::shared_ptr<Incumbent> incumbent;
    // Test / analysis hook, called for every complete assignment visited.
    std::function<void(const LeafInfo&)> on_leaf;
};

enum class Termination { Criterion, Exhausted, Limit };

struct SearchResult {
    std::optional<std::vector<int>> solution;
    std::optional<long long> objective_value;
    Termination termination = Termination::Exhausted;
    SearchStats stats;
};

// Algorithm: two-phase decomposition search. Open nodes live in a best-first
// frontier keyed by the selector; node state is rebuilt by replaying the
// decision path against the trail (longest-common-prefix replay). A node at
// the depth bound, or with no variable left to partition, becomes a
// subproblem and is solved by DFS labelling.
SearchResult dbs_solve(Problem& p, const SearchConfig& cfg);

// Iterative broadening: for each cutoff c, restart a DFS restricted to the
// first c ranked values per variable; stats accumulate across restarts.
SearchResult ib_solve(Problem& p, const std::vector<int>& cutoffs, SearchConfig cfg);

} // namespace dbsearch
