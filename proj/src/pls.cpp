#include "dbsearch/pls.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dbsearch {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

std::vector<std::vector<int>> random_latin_square(int n, std::mt19937_64& rng) {
    std::vector<int> rows(static_cast<size_t>(n)), cols(static_cast<size_t>(n)),
        syms(static_cast<size_t>(n));
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::iota(syms.begin(), syms.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    std::shuffle(syms.begin(), syms.end(), rng);
    std::vector<std::vector<int>> g(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            size_t r = static_cast<size_t>(rows[static_cast<size_t>(i)]);
            size_t c = static_cast<size_t>(cols[static_cast<size_t>(j)]);
            g[r][c] = syms[static_cast<size_t>((i + j) % n)] + 1;
        }
    return g;
}

// A random walk over intercalate flips: whenever the four corners of a 2x2
// subrectangle form the pattern a b / b a, swapping them yields another
// latin square. Mixes the cyclic structure away.
void randomize(std::vector<std::vector<int>>& g, std::mt19937_64& rng) {
    int n = static_cast<int>(g.size());
    if (n < 2) return;
    std::uniform_int_distribution<int> pick(0, n - 1);
    long long attempts = static_cast<long long>(n) * n * n;
    for (long long it = 0; it < attempts; ++it) {
        int r1 = pick(rng), r2 = pick(rng), c1 = pick(rng), c2 = pick(rng);
        if (r1 == r2 || c1 == c2) continue;
        int a = g[static_cast<size_t>(r1)][static_cast<size_t>(c1)];
        int b = g[static_cast<size_t>(r1)][static_cast<size_t>(c2)];
        if (a == b) continue;
        if (g[static_cast<size_t>(r2)][static_cast<size_t>(c2)] != a ||
            g[static_cast<size_t>(r2)][static_cast<size_t>(c1)] != b)
            continue;
        g[static_cast<size_t>(r1)][static_cast<size_t>(c1)] = b;
        g[static_cast<size_t>(r1)][static_cast<size_t>(c2)] = a;
        g[static_cast<size_t>(r2)][static_cast<size_t>(c1)] = a;
        g[static_cast<size_t>(r2)][static_cast<size_t>(c2)] = b;
    }
}

} // namespace

PlsInstance parse_pls(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    PlsInstance inst;
    if (!(in >> inst.order) || inst.order <= 0) fail(path, "expected a positive order on line 1");
    int n = inst.order;
    inst.grid.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            int v;
            if (!(in >> v))
                fail(path, "row " + std::to_string(r + 1) + ": expected " + std::to_string(n) +
                               " cell values");
            if (v < 0 || v > n)
                fail(path, "cell (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                               "): value " + std::to_string(v) + " outside 0.." + std::to_string(n));
            inst.grid[static_cast<size_t>(r)][static_cast<size_t>(c)] = v;
            if (v == 0) ++inst.holes;
        }
    for (int r = 0; r < n; ++r) {
        std::vector<int> seen(static_cast<size_t>(n) + 1, 0);
        for (int c = 0; c < n; ++c) {
            int v = inst.grid[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (v == 0) continue;
            if (seen[static_cast<size_t>(v)])
                fail(path, "row " + std::to_string(r + 1) + ": duplicate value " +
                               std::to_string(v) + " at column " + std::to_string(c + 1));
            seen[static_cast<size_t>(v)] = 1;
        }
    }
    for (int c = 0; c < n; ++c) {
        std::vector<int> seen(static_cast<size_t>(n) + 1, 0);
        for (int r = 0; r < n; ++r) {
            int v = inst.grid[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (v == 0) continue;
            if (seen[static_cast<size_t>(v)])
                fail(path, "column " + std::to_string(c + 1) + ": duplicate value " +
                               std::to_string(v) + " at row " + std::to_string(r + 1));
            seen[static_cast<size_t>(v)] = 1;
        }
    }
    return inst;
}

void emit_pls(const PlsInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    out << inst.order << "\n";
    for (const std::vector<int>& row : inst.grid) {
        for (size_t c = 0; c < row.size(); ++c) out << row[c] << (c + 1 == row.size() ? "\n" : " ");
    }
}

PlsInstance generate_pls(int order, int holes, bool balanced, uint64_t seed) {
    if (order < 1) throw std::invalid_argument("order must be positive");
    if (holes < 0 || holes > order * order)
        throw std::invalid_argument("hole count outside 0..order^2");
    std::mt19937_64 rng(seed);
    PlsInstance inst;
    inst.order = order;
    inst.holes = holes;
    inst.balanced = balanced;
    inst.grid = random_latin_square(order, rng);
    randomize(inst.grid, rng);

    int n = order;
    if (balanced) {
        // Hole positions follow the value classes of an auxiliary latin
        // square: each full class punches one cell per row and per column,
        // the remainder comes from a partial class, so counts differ by <=1.
        std::vector<std::vector<int>> h = random_latin_square(n, rng);
        int full = holes / n, rem = holes % n;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (h[static_cast<size_t>(r)][static_cast<size_t>(c)] <= full)
                    inst.grid[static_cast<size_t>(r)][static_cast<size_t>(c)] = 0;
        if (rem > 0) {
            std::vector<std::pair<int, int>> cls;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    if (h[static_cast<size_t>(r)][static_cast<size_t>(c)] == full + 1)
                        cls.push_back({r, c});
            std::shuffle(cls.begin(), cls.end(), rng);
            for (int i = 0; i < rem; ++i)
                inst.grid[static_cast<size_t>(cls[static_cast<size_t>(i)].first)]
                         [static_cast<size_t>(cls[static_cast<size_t>(i)].second)] = 0;
        }
    } else {
        std::vector<int> cells(static_cast<size_t>(n) * static_cast<size_t>(n));
        std::iota(cells.begin(), cells.end(), 0);
        std::shuffle(cells.begin(), cells.end(), rng);
        for (int i = 0; i < holes; ++i) {
            int cell = cells[static_cast<size_t>(i)];
            inst.grid[static_cast<size_t>(cell / n)][static_cast<size_t>(cell % n)] = 0;
        }
    }
    return inst;
}

bool verify_pls_solution(const PlsInstance& inst, const std::vector<int>& filled) {
    int n = inst.order;
    if (static_cast<int>(filled.size()) != n * n) return false;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            int pre = inst.grid[static_cast<size_t>(r)][static_cast<size_t>(c)];
            int v = filled[static_cast<size_t>(r * n + c)];
            if (v < 1 || v > n) return false;
            if (pre != 0 && pre != v) return false;
        }
    for (int r = 0; r < n; ++r) {
        std::vector<int> seen(static_cast<size_t>(n) + 1, 0);
        for (int c = 0; c < n; ++c)
            if (seen[static_cast<size_t>(filled[static_cast<size_t>(r * n + c)])]++) return false;
    }
    for (int c = 0; c < n; ++c) {
        std::vector<int> seen(static_cast<size_t>(n) + 1, 0);
        for (int r = 0; r < n; ++r)
            if (seen[static_cast<size_t>(filled[static_cast<size_t>(r * n + c)])]++) return false;
    }
    return true;
}

} // namespace dbsearch
