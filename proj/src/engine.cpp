#include "dbsearch/engine.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <chrono>
#include <queue>

namespace dbsearch {

RankedValues default_evaluator(const Problem& p, int var) {
    RankedValues rv;
    p.dom(var).for_each([&](int v) { rv.push_back({v, -static_cast<double>(v)}); });
    return rv;
}

DomainPartition singleton_partitioner(const RankedValues& ranked) {
    DomainPartition part;
    part.cells.reserve(ranked.size());
    for (const RankedValue& r : ranked) part.cells.push_back({r.value});
    return part;
}

namespace {

struct PathStep {
    std::shared_ptr<const PathStep> parent;
    int var;
    std::vector<int> cell;
};

struct Node {
    std::shared_ptr<const PathStep> tail;
    std::vector<uint8_t> labels;
    int disc = 0;
    int max_label = 0;
};

struct KeyGreater {
    Selector sel;
    bool operator()(const Node& a, const Node& b) const {
        if (sel != Selector::DFS) {
            if (a.disc != b.disc) return a.disc > b.disc;
            if (sel == Selector::LDSPreference && a.max_label != b.max_label)
                return a.max_label > b.max_label;
        }
        return std::lexicographical_compare(b.labels.begin(), b.labels.end(),
                                            a.labels.begin(), a.labels.end());
    }
};

class Search {
public:
    Search(Problem& p, const SearchConfig& cfg)
        : p_(p), cfg_(cfg), frontier_(KeyGreater{cfg.selector}) {
        eval_ = cfg_.evaluator ? cfg_.evaluator : default_evaluator;
        part_ = cfg_.partitioner ? cfg_.partitioner : singleton_partitioner;
        depth_bound_ = cfg_.depth_bound.value_or(p.num_vars());
        on_path_.assign(static_cast<size_t>(p.num_vars()), 0);
    }

    SearchResult run() {
        auto t0 = std::chrono::steady_clock::now();
        deadline_ = cfg_.stop.time_limit
                        ? std::optional(t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                 std::chrono::duration<double>(*cfg_.stop.time_limit)))
                        : std::nullopt;
        if (p_.propagate_all() == PropResult::Failed) {
            ++res_.stats.fails;
        } else {
            frontier_.push(Node{});
            while (!frontier_.empty() && !stopped_) {
                if (limit_hit()) {
                    res_.termination = Termination::Limit;
                    break;
                }
                Node nd = frontier_.top();
                frontier_.pop();
                if (!replay(nd)) continue;
                int var = depth(nd) < depth_bound_ ? choose_var() : -1;
                if (var < 0)
                    solve_subproblem(nd);
                else
                    expand(nd, var);
            }
            if (stopped_)
                res_.termination = hit_limit_in_dfs_ ? Termination::Limit : Termination::Criterion;
        }
        restore_to(0);
        res_.stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return std::move(res_);
    }

private:
    static int depth(const Node& nd) { return static_cast<int>(nd.labels.size()); }

    bool limit_hit() const {
        if (cfg_.stop.node_limit && res_.stats.nodes_expanded >= *cfg_.stop.node_limit) return true;
        if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) return true;
        return false;
    }

    // Rebuilds problem state for a node: restores to the longest common
    // prefix with the currently applied path, then re-applies the remaining
    // steps. Re-propagation may fail if the incumbent improved since the node
    // was probed; such nodes are dead and dropped.
    bool replay(const Node& nd) {
        std::vector<std::shared_ptr<const PathStep>> steps(nd.labels.size());
        std::shared_ptr<const PathStep> s = nd.tail;
        for (size_t i = steps.size(); i-- > 0; s = s->parent) steps[i] = s;
        size_t lcp = 0;
        while (lcp < steps.size() && lcp < applied_.size() && steps[lcp] == applied_[lcp]) ++lcp;
        restore_to(lcp);
        for (size_t i = lcp; i < steps.size(); ++i) {
            if (!apply_step(steps[i])) {
                ++res_.stats.fails;
                return false;
            }
        }
        return true;
    }

    bool apply_step(const std::shared_ptr<const PathStep>& step) {
        int lvl = p_.save_state();
        bool dead = false;
        std::vector<int> drop;
        p_.dom(step->var).for_each([&](int v) {
            if (std::find(step->cell.begin(), step->cell.end(), v) == step->cell.end()) drop.push_back(v);
        });
        for (int v : drop)
            if (!p_.remove(step->var, v)) {
                dead = true;
                break;
            }
        std::array<int, 1> changed{step->var};
        if (dead || p_.propagate(changed) == PropResult::Failed) {
            p_.restore_state(lvl);
            return false;
        }
        applied_.push_back(step);
        levels_.push_back(lvl);
        on_path_[static_cast<size_t>(step->var)] = 1;
        return true;
    }

    void restore_to(size_t k) {
        if (applied_.size() > k) {
            p_.restore_state(levels_[k]);
            for (size_t i = k; i < applied_.size(); ++i) on_path_[static_cast<size_t>(applied_[i]->var)] = 0;
            applied_.resize(k);
            levels_.resize(k);
        }
    }

    // Generation phase: unassigned variables not yet partitioned on this path.
    int choose_var() const {
        int best = -1, best_size = 0;
        for (int x = 0; x < p_.num_vars(); ++x) {
            if (on_path_[static_cast<size_t>(x)] || p_.dom(x).is_assigned()) continue;
            if (cfg_.var_order == VarOrder::InputOrder) return x;
            if (best < 0 || p_.dom(x).size() < best_size) {
                best = x;
                best_size = p_.dom(x).size();
            }
        }
        return best;
    }

    void expand(const Node& nd, int var) {
        ++res_.stats.nodes_expanded;
        DomainPartition part = part_(eval_(p_, var));
        assert(part.cells.size() <= 256 && "branch label exceeds uint8");
        auto parent_tail = nd.tail;
        for (size_t r = 0; r < part.cells.size(); ++r) {
            if (part.cells[r].empty()) continue; // skipped; later cells keep their rank index
            auto step = std::make_shared<const PathStep>(PathStep{parent_tail, var, part.cells[r]});
            if (!apply_step(step)) {
                ++res_.stats.fails;
                continue;
            }
            Node child;
            child.tail = step;
            child.labels = nd.labels;
            child.labels.push_back(static_cast<uint8_t>(r));
            child.disc = nd.disc + static_cast<int>(r);
            child.max_label = std::max(nd.max_label, static_cast<int>(r));
            frontier_.push(std::move(child));
            restore_to(applied_.size() - 1);
        }
    }

    void solve_subproblem(const Node& nd) {
        dfs_label(nd);
    }

    // Standard labelling: single-value branching, best rank first.
    // Returns true when the search must stop (solution accepted or limits).
    bool dfs_label(const Node& nd) {
        if (limit_hit()) {
            stopped_ = true;
            hit_limit_in_dfs_ = true;
            return true;
        }
        int var = -1, best_size = 0;
        for (int x = 0; x < p_.num_vars(); ++x) {
            if (p_.dom(x).is_assigned()) continue;
            if (cfg_.var_order == VarOrder::InputOrder) {
                var = x;
                break;
            }
            if (var < 0 || p_.dom(x).size() < best_size) {
                var = x;
                best_size = p_.dom(x).size();
            }
        }
        if (var < 0) return visit_leaf(nd);
        ++res_.stats.nodes_expanded;
        for (const RankedValue& rv : eval_(p_, var)) {
            int lvl = p_.save_state();
            std::array<int, 1> changed{var};
            if (p_.assign(var, rv.value) == PropResult::Failed ||
                p_.propagate(changed) == PropResult::Failed) {
                ++res_.stats.fails;
                p_.restore_state(lvl);
                continue;
            }
            if (dfs_label(nd)) return true;
            p_.restore_state(lvl);
        }
        return false;
    }

    bool visit_leaf(const Node& nd) {
        ++res_.stats.leaves_visited;
        std::vector<int> assignment(static_cast<size_t>(p_.num_vars()));
        for (int x = 0; x < p_.num_vars(); ++x) assignment[static_cast<size_t>(x)] = p_.dom(x).value();
        if (cfg_.on_leaf)
            cfg_.on_leaf(LeafInfo{assignment, nd.labels, nd.disc, nd.max_label});

        std::optional<long long> value;
        if (cfg_.objective) {
            value = cfg_.objective(assignment);
            if (cfg_.incumbent && (!cfg_.incumbent->best || *value < *cfg_.incumbent->best))
                cfg_.incumbent->best = *value;
            if (!res_.objective_value || *value < *res_.objective_value)
                record(nd, assignment, value);
        } else if (!res_.solution) {
            record(nd, assignment, value);
        }

        switch (cfg_.stop.kind) {
        case StopKind::FirstSolution:
            stopped_ = true;
            return true;
        case StopKind::OptimumFound:
            if (value && *value == cfg_.stop.optimum) {
                record(nd, assignment, value);
                stopped_ = true;
                return true;
            }
            return false;
        case StopKind::Exhausted:
            return false;
        }
        return false;
    }

    void record(const Node& nd, const std::vector<int>& assignment, std::optional<long long> value) {
        res_.solution = assignment;
        res_.objective_value = value;
        res_.stats.solution_discrepancy = nd.disc;
    }

    Problem& p_;
    const SearchConfig& cfg_;
    Evaluator eval_;
    Partitioner part_;
    int depth_bound_;

    std::priority_queue<Node, std::vector<Node>, KeyGreater> frontier_;
    std::vector<std::shared_ptr<const PathStep>> applied_;
    std::vector<int> levels_;
    std::vector<char> on_path_;

    SearchResult res_;
    bool stopped_ = false;
    bool hit_limit_in_dfs_ = false;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
};

} // namespace

SearchResult dbs_solve(Problem& p, const SearchConfig& cfg) {
    return Search(p, cfg).run();
}

SearchResult ib_solve(Problem& p, const std::vector<int>& cutoffs, SearchConfig cfg) {
    SearchResult total;
    cfg.selector = Selector::DFS;
    Partitioner base = cfg.partitioner ? cfg.partitioner : singleton_partitioner;
    std::optional<double> time_budget = cfg.stop.time_limit;
    std::optional<long long> node_budget = cfg.stop.node_limit;
    auto t0 = std::chrono::steady_clock::now();
    for (int c : cutoffs) {
        if (time_budget) {
            double left = *time_budget -
                          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (left <= 0.0) {
                total.termination = Termination::Limit;
                break;
            }
            cfg.stop.time_limit = left;
        }
        if (node_budget) {
            long long left = *node_budget - total.stats.nodes_expanded;
            if (left <= 0) {
                total.termination = Termination::Limit;
                break;
            }
            cfg.stop.node_limit = left;
        }
        cfg.partitioner = [c, &base](const RankedValues& ranked) {
            RankedValues head(ranked.begin(),
                              ranked.begin() + std::min(ranked.size(), static_cast<size_t>(c)));
            return base(head);
        };
        SearchResult r = dbs_solve(p, cfg);
        total.stats.fails += r.stats.fails;
        total.stats.nodes_expanded += r.stats.nodes_expanded;
        total.stats.leaves_visited += r.stats.leaves_visited;
        total.termination = r.termination;
        if (r.solution) {
            bool better = !total.solution ||
                          (r.objective_value && total.objective_value &&
                           *r.objective_value < *total.objective_value);
            if (better) {
                total.solution = std::move(r.solution);
                total.objective_value = r.objective_value;
                total.stats.solution_discrepancy = r.stats.solution_discrepancy;
            }
        }
        if (cfg.stop.kind == StopKind::FirstSolution && total.solution) break;
        if (cfg.stop.kind == StopKind::OptimumFound && total.objective_value &&
            *total.objective_value == cfg.stop.optimum)
            break;
    }
    total.stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return total;
}

} // namespace dbsearch
