#include "dbsearch/propagators.hpp"

namespace dbsearch {

PropResult NoSubtour::propagate(Problem& p) {
    int n = static_cast<int>(scope_.size());
    std::vector<int> succ(static_cast<size_t>(n), -1);
    std::vector<int> indeg(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        const Domain& d = p.dom(scope_[static_cast<size_t>(i)]);
        if (d.is_assigned()) {
            succ[static_cast<size_t>(i)] = d.value();
            ++indeg[static_cast<size_t>(d.value())];
        }
    }

    // Maximal paths start at assigned nodes without an incoming assigned arc.
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<int> path;
    for (int s = 0; s < n; ++s) {
        if (succ[static_cast<size_t>(s)] == -1 || indeg[static_cast<size_t>(s)] != 0) continue;
        path.clear();
        int e = s;
        while (succ[static_cast<size_t>(e)] != -1) {
            seen[static_cast<size_t>(e)] = 1;
            path.push_back(e);
            e = succ[static_cast<size_t>(e)];
            if (static_cast<int>(path.size()) > n) return PropResult::Failed; // cycle downstream
        }
        seen[static_cast<size_t>(e)] = 1;
        path.push_back(e);
        int len = static_cast<int>(path.size()) - 1;
        // next[e] back into the path closes a cycle through its tail; only
        // the tour-closing arc (back to s once the path covers everything)
        // stays legal.
        for (size_t pos = 0; pos < path.size(); ++pos) {
            if (pos == 0 && len == n - 1) continue;
            if (!p.remove(scope_[static_cast<size_t>(e)], path[pos])) return PropResult::Failed;
        }
    }

    // Whatever assigned nodes remain lie on cycles; only a full tour is legal.
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<size_t>(s)] || succ[static_cast<size_t>(s)] == -1) continue;
        int u = s, len = 0;
        do {
            seen[static_cast<size_t>(u)] = 1;
            u = succ[static_cast<size_t>(u)];
            ++len;
        } while (u != s && len <= n);
        if (len < n) return PropResult::Failed;
    }
    return PropResult::Consistent;
}

} // namespace dbsearch
