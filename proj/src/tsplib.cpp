#include "dbsearch/tsplib.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dbsearch {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t z = s.find_last_not_of(" \t\r\n");
    return s.substr(a, z - a + 1);
}

// Pulls whitespace-separated integers out of consecutive lines, remembering
// the current line number for error reporting.
class NumberReader {
public:
    NumberReader(const std::vector<std::string>& lines, size_t next_line, const std::string& path)
        : lines_(lines), line_(next_line), path_(path) {}

    long long next(const char* what) {
        for (;;) {
            if (cur_ >> tok_) {
                char* end = nullptr;
                long long v = std::strtoll(tok_.c_str(), &end, 10);
                if (end == tok_.c_str() || *end != '\0')
                    fail(path_, static_cast<int>(line_), std::string("expected ") + what +
                                                             ", got \"" + tok_ + "\"");
                return v;
            }
            if (line_ >= lines_.size())
                fail(path_, static_cast<int>(lines_.size()), std::string("unexpected end of ") + what);
            cur_ = std::istringstream(lines_[line_++]);
        }
    }

    size_t line() const { return line_; }

private:
    const std::vector<std::string>& lines_;
    size_t line_;
    std::string path_;
    std::istringstream cur_;
    std::string tok_;
};

} // namespace

TspInstance parse_tsplib(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);

    TspInstance inst;
    std::string format;
    bool explicit_weights = false;
    bool have_matrix = false;

    for (size_t i = 0; i < lines.size();) {
        std::string line = trim(lines[i]);
        int lineno = static_cast<int>(i) + 1;
        std::string key = line, value;
        size_t colon = line.find(':');
        if (colon != std::string::npos) {
            key = trim(line.substr(0, colon));
            value = trim(line.substr(colon + 1));
        }
        ++i;
        if (key.empty() || key == "COMMENT" || key == "NODE_COORD_TYPE" ||
            key == "DISPLAY_DATA_TYPE")
            continue;
        if (key == "EOF") break;
        if (key == "NAME") {
            inst.name = value;
        } else if (key == "TYPE") {
            if (value != "TSP") fail(path, lineno, "unsupported TYPE \"" + value + "\"");
        } else if (key == "DIMENSION") {
            inst.n = std::atoi(value.c_str());
            if (inst.n <= 0) fail(path, lineno, "bad DIMENSION \"" + value + "\"");
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (value != "EXPLICIT")
                fail(path, lineno, "unsupported EDGE_WEIGHT_TYPE \"" + value + "\"");
            explicit_weights = true;
        } else if (key == "EDGE_WEIGHT_FORMAT") {
            format = value;
        } else if (key == "EDGE_WEIGHT_SECTION") {
            if (inst.n <= 0) fail(path, lineno, "EDGE_WEIGHT_SECTION before DIMENSION");
            if (!explicit_weights)
                fail(path, lineno, "EDGE_WEIGHT_SECTION without EDGE_WEIGHT_TYPE EXPLICIT");
            int n = inst.n;
            inst.dist.assign(static_cast<size_t>(n),
                             std::vector<long long>(static_cast<size_t>(n), 0));
            NumberReader nums(lines, i, path);
            auto set = [&](int r, int c, long long v) {
                inst.dist[static_cast<size_t>(r)][static_cast<size_t>(c)] = v;
                inst.dist[static_cast<size_t>(c)][static_cast<size_t>(r)] = v;
            };
            if (format == "FULL_MATRIX") {
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) {
                        long long v = nums.next("edge weight");
                        if (c >= r) set(r, c, v);
                    }
            } else if (format == "LOWER_DIAG_ROW") {
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c <= r; ++c) set(r, c, nums.next("edge weight"));
            } else if (format == "UPPER_ROW") {
                for (int r = 0; r < n; ++r)
                    for (int c = r + 1; c < n; ++c) set(r, c, nums.next("edge weight"));
            } else if (format == "UPPER_DIAG_ROW") {
                for (int r = 0; r < n; ++r)
                    for (int c = r; c < n; ++c) set(r, c, nums.next("edge weight"));
            } else {
                fail(path, lineno, "unsupported EDGE_WEIGHT_FORMAT \"" + format + "\"");
            }
            have_matrix = true;
            i = nums.line();
        } else if (key == "DISPLAY_DATA_SECTION") {
            while (i < lines.size()) {
                std::string t = trim(lines[i]);
                if (!t.empty() && (std::isalpha(static_cast<unsigned char>(t[0])) != 0)) break;
                ++i;
            }
        } else {
            fail(path, lineno, "unsupported keyword \"" + key + "\"");
        }
    }
    if (!have_matrix)
        fail(path, static_cast<int>(lines.size()), "missing EDGE_WEIGHT_SECTION");
    return inst;
}

void emit_tsplib(const TspInstance& inst, const std::string& path, EdgeWeightFormat format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    const char* fmt = nullptr;
    switch (format) {
    case EdgeWeightFormat::FullMatrix: fmt = "FULL_MATRIX"; break;
    case EdgeWeightFormat::LowerDiagRow: fmt = "LOWER_DIAG_ROW"; break;
    case EdgeWeightFormat::UpperRow: fmt = "UPPER_ROW"; break;
    case EdgeWeightFormat::UpperDiagRow: fmt = "UPPER_DIAG_ROW"; break;
    }
    out << "NAME: " << inst.name << "\n";
    out << "TYPE: TSP\n";
    out << "DIMENSION: " << inst.n << "\n";
    out << "EDGE_WEIGHT_TYPE: EXPLICIT\n";
    out << "EDGE_WEIGHT_FORMAT: " << fmt << "\n";
    out << "EDGE_WEIGHT_SECTION\n";
    int n = inst.n;
    auto w = [&](int r, int c) {
        return r == c ? 0LL : inst.dist[static_cast<size_t>(r)][static_cast<size_t>(c)];
    };
    for (int r = 0; r < n; ++r) {
        int lo = 0, hi = n - 1;
        switch (format) {
        case EdgeWeightFormat::FullMatrix: break;
        case EdgeWeightFormat::LowerDiagRow: hi = r; break;
        case EdgeWeightFormat::UpperRow: lo = r + 1; break;
        case EdgeWeightFormat::UpperDiagRow: lo = r; break;
        }
        for (int c = lo; c <= hi; ++c) out << w(r, c) << (c == hi ? "\n" : " ");
        if (lo > hi) out << "\n";
    }
    out << "EOF\n";
}

long long held_karp(const TspInstance& inst) {
    int n = inst.n;
    if (n > 20) throw std::length_error("held_karp limited to 20 cities");
    if (n < 2) return 0;
    const long long inf = std::numeric_limits<long long>::max() / 4;
    auto d = [&](int a, int b) { return inst.dist[static_cast<size_t>(a)][static_cast<size_t>(b)]; };
    // dp[mask*m + j]: shortest path from city 0 through set mask (over
    // cities 1..n-1) ending at city j+1.
    int m = n - 1;
    std::vector<long long> dp((1ULL << m) * static_cast<size_t>(m), inf);
    for (int j = 0; j < m; ++j) dp[(1ULL << j) * static_cast<size_t>(m) + static_cast<size_t>(j)] = d(0, j + 1);
    for (unsigned mask = 1; mask < (1U << m); ++mask) {
        long long* row = dp.data() + static_cast<size_t>(mask) * static_cast<size_t>(m);
        for (int j = 0; j < m; ++j) {
            if (!(mask & (1U << j)) || row[j] >= inf) continue;
            for (int k = 0; k < m; ++k) {
                if (mask & (1U << k)) continue;
                long long& slot = dp[(static_cast<size_t>(mask) | (1ULL << k)) * static_cast<size_t>(m) + static_cast<size_t>(k)];
                long long cand = row[j] + d(j + 1, k + 1);
                if (cand < slot) slot = cand;
            }
        }
    }
    long long best = inf;
    unsigned full = (1U << m) - 1;
    for (int j = 0; j < m; ++j) {
        long long v = dp[static_cast<size_t>(full) * static_cast<size_t>(m) + static_cast<size_t>(j)];
        if (v < inf) best = std::min(best, v + d(j + 1, 0));
    }
    return best;
}

bool verify_tour(const TspInstance& inst, const std::vector<int>& next, long long expected_length) {
    int n = inst.n;
    if (static_cast<int>(next.size()) != n) return false;
    std::vector<char> seen(static_cast<size_t>(n), 0);
    long long len = 0;
    int city = 0;
    for (int step = 0; step < n; ++step) {
        if (seen[static_cast<size_t>(city)]) return false;
        seen[static_cast<size_t>(city)] = 1;
        int succ = next[static_cast<size_t>(city)];
        if (succ < 0 || succ >= n || succ == city) return false;
        len += inst.dist[static_cast<size_t>(city)][static_cast<size_t>(succ)];
        city = succ;
    }
    return city == 0 && len == expected_length;
}

} // namespace dbsearch
