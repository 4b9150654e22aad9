#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dbsearch {

// Partial latin square of a given order; grid values 1..n, 0 marks a hole.
struct PlsInstance {
    int order = 0;
    std::vector<std::vector<int>> grid;
    int holes = 0;
    bool balanced = false;
};

// Text format: first line the order, then order lines of order integers.
PlsInstance parse_pls(const std::string& path);
void emit_pls(const PlsInstance& inst, const std::string& path);

// Punches holes into a randomized complete latin square, so every instance
// is completable. balanced: per-row and per-column hole counts differ by at
// most 1. Deterministic per seed.
PlsInstance generate_pls(int order, int holes, bool balanced, uint64_t seed);

// True when filled is a complete latin square extending inst (cell values as
// row-major vector, all 1..n).
bool verify_pls_solution(const PlsInstance& inst, const std::vector<int>& filled);

} // namespace dbsearch
