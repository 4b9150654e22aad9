#include "dbsearch/ranking.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace dbsearch {

static RankedValues sorted_best_first(RankedValues rv) {
    std::sort(rv.begin(), rv.end(), [](const RankedValue& a, const RankedValue& b) {
        if (a.rank != b.rank) return a.rank > b.rank;
        return a.value < b.value;
    });
    return rv;
}

RankedValues rank_reduced_cost(const Domain& dom, const std::function<long long(int)>& reduced_cost) {
    RankedValues rv;
    rv.reserve(static_cast<size_t>(dom.size()));
    dom.for_each([&](int v) { rv.push_back({v, -static_cast<double>(reduced_cost(v))}); });
    return sorted_best_first(std::move(rv));
}

RankedValues rank_occurrence(const Domain& dom, const std::vector<int>& occurrences) {
    RankedValues rv;
    rv.reserve(static_cast<size_t>(dom.size()));
    dom.for_each([&](int v) {
        assert(v >= 0 && v < static_cast<int>(occurrences.size()));
        rv.push_back({v, static_cast<double>(occurrences[static_cast<size_t>(v)])});
    });
    return sorted_best_first(std::move(rv));
}

DomainPartition partition_plateau(const RankedValues& ranked, double epsilon) {
    DomainPartition part;
    for (size_t i = 0; i < ranked.size(); ++i) {
        if (i == 0 || ranked[i - 1].rank - ranked[i].rank > epsilon) part.cells.emplace_back();
        part.cells.back().push_back(ranked[i].value);
    }
    return part;
}

DomainPartition partition_star(const RankedValues& ranked, const std::vector<int>& cutoffs) {
    DomainPartition part;
    size_t prev = 0;
    for (int c : cutoffs) {
        size_t end = std::min(ranked.size(), static_cast<size_t>(c));
        if (end <= prev) break;
        auto& cell = part.cells.emplace_back();
        for (size_t i = prev; i < end; ++i) cell.push_back(ranked[i].value);
        prev = end;
    }
    if (prev < ranked.size()) {
        auto& cell = part.cells.emplace_back();
        for (size_t i = prev; i < ranked.size(); ++i) cell.push_back(ranked[i].value);
    }
    return part;
}

DomainPartition partition_percentile(const RankedValues& ranked, const std::vector<double>& fractions) {
    DomainPartition part;
    size_t n = ranked.size(), taken = 0;
    for (size_t f = 0; f < fractions.size() && taken < n; ++f) {
        size_t want = f + 1 == fractions.size()
                          ? n - taken
                          : std::min(n - taken, static_cast<size_t>(std::ceil(fractions[f] * static_cast<double>(n))));
        if (want == 0) continue;
        auto& cell = part.cells.emplace_back();
        for (size_t i = taken; i < taken + want; ++i) cell.push_back(ranked[i].value);
        taken += want;
    }
    return part;
}

} // namespace dbsearch
