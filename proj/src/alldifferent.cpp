#include <algorithm>
#include <cassert>

#include "dbsearch/propagators.hpp"

namespace dbsearch {

AlldifferentGAC::AlldifferentGAC(std::vector<int> scope, int value_lo, int value_hi)
    : scope_(std::move(scope)), lo_(value_lo), nv_(value_hi - value_lo + 1) {
    assert(!scope_.empty() && nv_ >= 1);
    match_var_.assign(scope_.size(), -1);
    match_val_.assign(static_cast<size_t>(nv_), -1);
    visited_val_.assign(static_cast<size_t>(nv_), 0);
}

bool AlldifferentGAC::augment(const Problem& p, int var) {
    // Kuhn DFS over alternating paths from an unmatched variable.
    bool found = false;
    p.dom(scope_[static_cast<size_t>(var)]).for_each([&](int value) {
        if (found) return;
        int v = value - lo_;
        if (visited_val_[static_cast<size_t>(v)]) return;
        visited_val_[static_cast<size_t>(v)] = 1;
        if (match_val_[static_cast<size_t>(v)] == -1 || augment(p, match_val_[static_cast<size_t>(v)])) {
            match_var_[static_cast<size_t>(var)] = v;
            match_val_[static_cast<size_t>(v)] = var;
            found = true;
        }
    });
    return found;
}

PropResult AlldifferentGAC::propagate(Problem& p) {
    size_t m = scope_.size();
    if (seen_epoch_ != p.restore_epoch()) {
        // domains may have grown back: the cached matching is stale
        std::fill(match_var_.begin(), match_var_.end(), -1);
        std::fill(match_val_.begin(), match_val_.end(), -1);
        seen_epoch_ = p.restore_epoch();
    }
    for (size_t i = 0; i < m; ++i) {
        int v = match_var_[i];
        if (v != -1 && !p.dom(scope_[i]).contains(lo_ + v)) {
            match_var_[i] = -1;
            match_val_[static_cast<size_t>(v)] = -1;
        }
    }
    for (size_t i = 0; i < m; ++i) {
        if (match_var_[i] != -1) continue;
        std::fill(visited_val_.begin(), visited_val_.end(), 0);
        if (!augment(p, static_cast<int>(i))) return PropResult::Failed;
    }

    // Residual orientation: matched edge var -> value, other edges value -> var.
    // An unmatched edge (x,v) survives iff x and v share an SCC or v is
    // reachable from a free value along alternating paths.
    size_t nodes = m + static_cast<size_t>(nv_);
    comp_.assign(nodes, -1);
    index_.assign(nodes, -1);
    low_.assign(nodes, 0);
    on_stack_.assign(nodes, 0);
    tstack_.clear();
    int next_index = 0, next_comp = 0;

    // Iterative Tarjan; node ids: vars [0, m), values [m, m + nv).
    struct Frame {
        size_t node;
        int child_pos;
    };
    std::vector<Frame> stack;
    std::vector<std::vector<int>> out(nodes);
    for (size_t i = 0; i < m; ++i) {
        out[i].push_back(static_cast<int>(m) + match_var_[i]);
        p.dom(scope_[i]).for_each([&](int value) {
            int v = value - lo_;
            if (v != match_var_[i]) out[m + static_cast<size_t>(v)].push_back(static_cast<int>(i));
        });
    }
    for (size_t root = 0; root < nodes; ++root) {
        if (index_[root] != -1) continue;
        stack.push_back({root, 0});
        while (!stack.empty()) {
            auto& fr = stack.back();
            size_t u = fr.node;
            if (fr.child_pos == 0) {
                index_[u] = low_[u] = next_index++;
                tstack_.push_back(static_cast<int>(u));
                on_stack_[u] = 1;
            }
            if (fr.child_pos < static_cast<int>(out[u].size())) {
                size_t w = static_cast<size_t>(out[u][static_cast<size_t>(fr.child_pos++)]);
                if (index_[w] == -1) {
                    stack.push_back({w, 0});
                } else if (on_stack_[w]) {
                    low_[u] = std::min(low_[u], index_[w]);
                }
            } else {
                if (low_[u] == index_[u]) {
                    while (true) {
                        size_t w = static_cast<size_t>(tstack_.back());
                        tstack_.pop_back();
                        on_stack_[w] = 0;
                        comp_[w] = next_comp;
                        if (w == u) break;
                    }
                    ++next_comp;
                }
                stack.pop_back();
                if (!stack.empty()) low_[stack.back().node] = std::min(low_[stack.back().node], low_[u]);
            }
        }
    }

    // BFS from free values following the same orientation.
    val_reachable_.assign(static_cast<size_t>(nv_), 0);
    std::vector<char> var_reached(m, 0);
    std::vector<int> bfs;
    for (int v = 0; v < nv_; ++v)
        if (match_val_[static_cast<size_t>(v)] == -1) {
            val_reachable_[static_cast<size_t>(v)] = 1;
            bfs.push_back(static_cast<int>(m) + v);
        }
    while (!bfs.empty()) {
        int u = bfs.back();
        bfs.pop_back();
        for (int w : out[static_cast<size_t>(u)]) {
            bool is_val = w >= static_cast<int>(m);
            auto& mark = is_val ? val_reachable_[static_cast<size_t>(w - static_cast<int>(m))]
                                : var_reached[static_cast<size_t>(w)];
            if (!mark) {
                mark = 1;
                bfs.push_back(w);
            }
        }
    }

    for (size_t i = 0; i < m; ++i) {
        std::vector<int> to_remove;
        p.dom(scope_[i]).for_each([&](int value) {
            int v = value - lo_;
            if (v == match_var_[i]) return;
            if (comp_[i] == comp_[m + static_cast<size_t>(v)]) return;
            if (val_reachable_[static_cast<size_t>(v)]) return;
            to_remove.push_back(value);
        });
        for (int value : to_remove)
            if (!p.remove(scope_[i], value)) return PropResult::Failed;
    }
    return PropResult::Consistent;
}

} // namespace dbsearch
