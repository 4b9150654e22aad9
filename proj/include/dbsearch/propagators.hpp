#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "dbsearch/problem.hpp"

namespace dbsearch {

// Regin's hyper-arc-consistent alldifferent: maximum bipartite matching,
// then SCC + alternating-path filtering on the residual value graph.
// The matching is repaired incrementally between calls and rebuilt from
// scratch after a restore (detected via the problem's restore epoch).
class AlldifferentGAC final : public Propagator {
public:
    AlldifferentGAC(std::vector<int> scope, int value_lo, int value_hi);
    const std::vector<int>& scope() const override { return scope_; }
    PropResult propagate(Problem& p) override;

private:
    bool augment(const Problem& p, int var);

    std::vector<int> scope_;
    int lo_, nv_;                    // value universe [lo_, lo_ + nv_)
    std::vector<int> match_var_;     // var position -> value offset, -1 unmatched
    std::vector<int> match_val_;     // value offset -> var position, -1 free
    uint64_t seen_epoch_ = ~uint64_t{0};

    // workspaces
    std::vector<char> visited_val_;
    std::vector<int> comp_;          // SCC id per node (vars then values)
    std::vector<int> index_, low_, tstack_;
    std::vector<char> on_stack_;
    std::vector<char> val_reachable_;
};

// Successor-model subtour elimination: along every maximal path of assigned
// arcs ending at e, the path nodes are removed from D(next[e]) (re-entry
// would close a short cycle); the start stays when the path covers all n
// nodes, as that arc closes the tour. A closed short cycle fails. Paths are
// recomputed per call.
class NoSubtour final : public Propagator {
public:
    explicit NoSubtour(std::vector<int> next_vars) : scope_(std::move(next_vars)) {}
    const std::vector<int>& scope() const override { return scope_; }
    PropResult propagate(Problem& p) override;

private:
    std::vector<int> scope_;
};

// Fails exactly when lower_bound(state) >= incumbent (strict improvement
// sought, integer costs). The hook returns nullopt when the residual
// relaxation is infeasible, which also fails.
class ObjectiveBound final : public Propagator {
public:
    using BoundFn = std::function<std::optional<long long>(const Problem&)>;
    ObjectiveBound(std::vector<int> scope, BoundFn lower_bound, std::shared_ptr<Incumbent> incumbent)
        : scope_(std::move(scope)), bound_(std::move(lower_bound)), incumbent_(std::move(incumbent)) {}
    const std::vector<int>& scope() const override { return scope_; }
    PropResult propagate(Problem& p) override;

private:
    std::vector<int> scope_;
    BoundFn bound_;
    std::shared_ptr<Incumbent> incumbent_;
};

} // namespace dbsearch
