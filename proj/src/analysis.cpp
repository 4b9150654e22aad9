#include "dbsearch/analysis.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dbsearch/ranking.hpp"

namespace dbsearch {

namespace {

struct Kahan {
    double sum = 0.0, carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

unsigned long long ipow(unsigned long long base, int exp) {
    unsigned long long r = 1;
    for (int i = 0; i < exp; ++i) {
        assert(base == 0 || r <= ~0ULL / (base ? base : 1));
        r *= base;
    }
    return r;
}

unsigned long long multinomial(int n, const std::vector<int>& counts) {
    unsigned long long r = 1;
    int rem = n;
    for (int c : counts) {
        for (int i = 1; i <= c; ++i) {
            r = r * static_cast<unsigned long long>(rem - c + i) / static_cast<unsigned long long>(i);
        }
        rem -= c;
    }
    assert(rem == 0);
    return r;
}

double head_sum(const ProbabilityModel& m, int c) {
    Kahan k;
    for (int i = 0; i < c; ++i) k.add(m.p[static_cast<size_t>(i)]);
    return k.sum;
}

} // namespace

bool validate_model(const ProbabilityModel& m, double tol) {
    if (m.b < 1 || m.n < 1 || static_cast<int>(m.p.size()) != m.b) return false;
    Kahan k;
    for (size_t j = 0; j < m.p.size(); ++j) {
        if (m.p[j] < 0.0) return false;
        if (j > 0 && m.p[j] > m.p[j - 1] + tol) return false;
        k.add(m.p[j]);
    }
    return std::abs(k.sum - 1.0) <= tol;
}

PartitionSet enumerate_partitions(int k, int n, int b) {
    assert(0 <= k && k <= n * (b - 1));
    PartitionSet out;
    out.k = k;
    std::vector<int> counts(static_cast<size_t>(b), 0);
    // Choose how many parts take each label value t, largest first, so that
    // remaining labels can still absorb the remaining sum.
    auto rec = [&](auto&& self, int t, int parts_left, int sum_left) -> void {
        if (t < 0) {
            if (parts_left == 0 && sum_left == 0)
                out.entries.push_back({counts, multinomial(n, counts)});
            return;
        }
        if (sum_left > parts_left * t) return;
        int max_ct = t > 0 ? std::min(parts_left, sum_left / t) : parts_left;
        int min_ct = t > 0 ? 0 : parts_left;
        for (int ct = min_ct; ct <= max_ct; ++ct) {
            counts[static_cast<size_t>(t)] = ct;
            self(self, t - 1, parts_left - ct, sum_left - ct * t);
        }
        counts[static_cast<size_t>(t)] = 0;
    };
    rec(rec, b - 1, n, k);
    return out;
}

SuccessPoint prob_dbs(int c, const ProbabilityModel& m) {
    assert(1 <= c && c <= m.b);
    return {ipow(static_cast<unsigned long long>(c), m.n), std::pow(head_sum(m, c), m.n)};
}

SuccessPoint prob_lds(int k, const ProbabilityModel& m) {
    PartitionSet ps = enumerate_partitions(k, m.n, m.b);
    Kahan mass;
    unsigned long long leaves = 0;
    for (const CompositionClass& cc : ps.entries) {
        double term = static_cast<double>(cc.multiplicity);
        for (int t = 0; t < m.b; ++t)
            for (int i = 0; i < cc.counts[static_cast<size_t>(t)]; ++i)
                term *= m.p[static_cast<size_t>(t)];
        mass.add(term);
        leaves += cc.multiplicity;
    }
    return {leaves, mass.sum};
}

std::vector<unsigned long long> lds_wave_leaves(int b, int n) {
    std::vector<unsigned long long> ways(static_cast<size_t>(n * (b - 1)) + 1, 0);
    ways[0] = 1;
    for (int d = 0; d < n; ++d) {
        std::vector<unsigned long long> next(ways.size(), 0);
        for (size_t s = 0; s < ways.size(); ++s) {
            if (ways[s] == 0) continue;
            for (int t = 0; t < b && s + static_cast<size_t>(t) < next.size(); ++t)
                next[s + static_cast<size_t>(t)] += ways[s];
        }
        ways.swap(next);
    }
    return ways;
}

namespace {

std::vector<SuccessPoint> dbs2_with_lds_curve(const ProbabilityModel& m) {
    std::vector<double> cell_mass;
    std::vector<int> cell_size;
    for (int j = 0; j < m.b; j += 2) {
        if (j + 1 < m.b) {
            cell_mass.push_back(m.p[static_cast<size_t>(j)] + m.p[static_cast<size_t>(j) + 1]);
            cell_size.push_back(2);
        } else {
            cell_mass.push_back(m.p[static_cast<size_t>(j)]);
            cell_size.push_back(1);
        }
    }
    int cells = static_cast<int>(cell_mass.size());
    unsigned long long total = ipow(static_cast<unsigned long long>(cells), m.n);
    if (total > (1ULL << 22)) throw std::length_error("subproblem tree too large");

    std::vector<std::vector<uint8_t>> tuples;
    tuples.reserve(total);
    std::vector<uint8_t> cur(static_cast<size_t>(m.n), 0);
    for (unsigned long long i = 0; i < total; ++i) {
        tuples.push_back(cur);
        for (int d = m.n - 1; d >= 0; --d) {
            if (++cur[static_cast<size_t>(d)] < cells) break;
            cur[static_cast<size_t>(d)] = 0;
        }
    }
    std::stable_sort(tuples.begin(), tuples.end(),
                     [](const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
                         int da = 0, db = 0;
                         for (uint8_t x : a) da += x;
                         for (uint8_t x : b) db += x;
                         if (da != db) return da < db;
                         return a < b;
                     });

    std::vector<SuccessPoint> curve;
    curve.reserve(tuples.size());
    Kahan mass;
    unsigned long long leaves = 0;
    for (const std::vector<uint8_t>& t : tuples) {
        double pm = 1.0;
        unsigned long long pl = 1;
        for (uint8_t c : t) {
            pm *= cell_mass[c];
            pl *= static_cast<unsigned long long>(cell_size[c]);
        }
        mass.add(pm);
        leaves += pl;
        curve.push_back({leaves, mass.sum});
    }
    return curve;
}

} // namespace

std::vector<SuccessPoint> cumulative_success(Schedule schedule, const ProbabilityModel& m) {
    std::vector<SuccessPoint> curve;
    switch (schedule) {
    case Schedule::LDS: {
        Kahan mass;
        unsigned long long leaves = 0;
        for (int k = 0; k <= m.n * (m.b - 1); ++k) {
            SuccessPoint wave = prob_lds(k, m);
            mass.add(wave.probability);
            leaves += wave.leaves;
            curve.push_back({leaves, mass.sum});
        }
        break;
    }
    case Schedule::DBS:
        for (int c = 1; c <= m.b; ++c) curve.push_back(prob_dbs(c, m));
        break;
    case Schedule::DBS2WithLDS:
        curve = dbs2_with_lds_curve(m);
        break;
    }
    return curve;
}

std::vector<SuccessPoint> brute_force_success(const std::vector<std::vector<int>>& visitation_order,
                                              const ProbabilityModel& m) {
    if (ipow(static_cast<unsigned long long>(m.b), m.n) > 1000000ULL)
        throw std::length_error("tree too large for leaf enumeration");
    std::vector<SuccessPoint> curve;
    curve.reserve(visitation_order.size());
    Kahan mass;
    for (size_t i = 0; i < visitation_order.size(); ++i) {
        double leaf = 1.0;
        for (int v : visitation_order[i]) leaf *= m.p[static_cast<size_t>(v)];
        mass.add(leaf);
        curve.push_back({i + 1, mass.sum});
    }
    return curve;
}

std::vector<std::vector<int>> engine_leaf_order(int b, int n, Selector selector,
                                                Partitioner partitioner) {
    if (ipow(static_cast<unsigned long long>(b), n) > 1000000ULL)
        throw std::length_error("tree too large for leaf enumeration");
    Problem p;
    for (int i = 0; i < n; ++i) p.add_variable(0, b - 1);
    std::vector<std::vector<int>> order;
    SearchConfig cfg;
    cfg.var_order = VarOrder::InputOrder;
    cfg.selector = selector;
    cfg.partitioner = std::move(partitioner);
    cfg.stop.kind = StopKind::Exhausted;
    cfg.on_leaf = [&order](const LeafInfo& leaf) { order.push_back(leaf.assignment); };
    dbs_solve(p, cfg);
    return order;
}

TheoremCheck check_theorem2(const ProbabilityModel& m, int c, int k) {
    TheoremCheck out;
    int plateau = 1;
    while (plateau < m.b && m.p[static_cast<size_t>(plateau)] == m.p[0]) ++plateau;
    out.precondition_ok = validate_model(m) && 1 <= c && c <= plateau && 0 <= k &&
                          k <= m.n * (m.b - 1);
    SuccessPoint dbs = prob_dbs(c, m);
    out.dbs_side = dbs.probability / static_cast<double>(dbs.leaves);
    Kahan mass;
    unsigned long long leaves = 0;
    for (int j = 0; j <= k; ++j) {
        SuccessPoint wave = prob_lds(j, m);
        mass.add(wave.probability);
        leaves += wave.leaves;
    }
    out.lds_side = mass.sum / static_cast<double>(leaves);
    out.equality_expected = k < c;
    out.holds = out.dbs_side >= out.lds_side - 1e-12;
    return out;
}

TheoremCheck check_theorem3(const ProbabilityModel& m, int c, int k) {
    TheoremCheck out;
    bool strict = true;
    for (int j = 1; j < m.b; ++j)
        if (m.p[static_cast<size_t>(j)] >= m.p[static_cast<size_t>(j) - 1]) strict = false;
    bool cond = c == m.b || std::pow(m.p[0], m.n - 1) * m.p[static_cast<size_t>(c)] <
                                std::pow(m.p[static_cast<size_t>(c) - 1], m.n);
    SuccessPoint dbs = prob_dbs(c, m);
    Kahan mass;
    unsigned long long leaves = 0;
    for (int j = 0; j <= k; ++j) {
        SuccessPoint wave = prob_lds(j, m);
        mass.add(wave.probability);
        leaves += wave.leaves;
    }
    out.precondition_ok = validate_model(m) && strict && cond && leaves <= dbs.leaves;
    out.dbs_side = dbs.probability;
    out.lds_side = mass.sum;
    // For n = 1 the two trees coincide on value prefixes, so equality holds
    // exactly when k = c-1; the stated pairs (1,0), (b-1,n(b-1)-1) and
    // (b,n(b-1)) are its instances. For n > 1 the middle pair exceeds the
    // leaf budget (b^n - 1 > (b-1)^n) and the admissible equalities are the
    // outer pairs.
    if (m.n == 1)
        out.equality_expected = k == c - 1;
    else
        out.equality_expected = (c == 1 && k == 0) || (c == m.b && k == m.n * (m.b - 1));
    out.holds = out.dbs_side >= out.lds_side - 1e-12;
    return out;
}

ProbabilityModel make_distribution(const DistributionSpec& spec, int b, int n) {
    if (b < 1) throw std::invalid_argument("branch width must be positive");
    std::vector<double> w(static_cast<size_t>(b));
    for (int j = 1; j <= b; ++j) {
        double x = 0.0;
        switch (spec.family) {
        case Family::Linear:
            x = static_cast<double>(b - j + 1);
            break;
        case Family::Poisson: {
            x = std::exp(-spec.lambda);
            for (int i = 1; i < j; ++i) x *= spec.lambda / i;
            break;
        }
        case Family::Binomial: {
            double nc = 1.0;
            for (int i = 1; i < j; ++i) nc = nc * (b - i) / i;
            x = nc * std::pow(spec.q, j - 1) * std::pow(1.0 - spec.q, b - j);
            break;
        }
        }
        w[static_cast<size_t>(j - 1)] = x;
    }
    std::sort(w.begin(), w.end(), std::greater<>());
    if (spec.plateaus) {
        auto [count, size] = *spec.plateaus;
        if (count < 1 || size < 1 || count * size != b)
            throw std::invalid_argument("plateau layout must cover all branches");
        for (int g = 0; g < count; ++g) {
            double avg = 0.0;
            for (int i = 0; i < size; ++i) avg += w[static_cast<size_t>(g * size + i)];
            avg /= size;
            for (int i = 0; i < size; ++i) w[static_cast<size_t>(g * size + i)] = avg;
        }
    }
    Kahan total;
    for (double x : w) total.add(x);
    if (!(total.sum > 0.0)) throw std::invalid_argument("distribution has no mass");
    for (double& x : w) x /= total.sum;
    return {b, n, std::move(w)};
}

namespace {

ProbabilityModel theorem2_model(int b, int n, int plateau) {
    std::vector<double> w(static_cast<size_t>(b));
    for (int j = 0; j < b; ++j)
        w[static_cast<size_t>(j)] = j < plateau ? 1.0 : 0.5 * std::pow(0.8, j - plateau);
    double s = 0.0;
    for (double x : w) s += x;
    for (double& x : w) x /= s;
    return {b, n, std::move(w)};
}

ProbabilityModel theorem3_model(int b, int n, int c) {
    std::vector<double> w(static_cast<size_t>(b));
    for (int j = 0; j < c; ++j) w[static_cast<size_t>(j)] = 1.0 - j * 1e-3;
    if (c < b) {
        double head = w[static_cast<size_t>(c) - 1];
        double cap = 0.5 * head * std::pow(head / w[0], n - 1);
        for (int j = c; j < b; ++j) w[static_cast<size_t>(j)] = cap * std::pow(0.5, j - c);
    }
    double s = 0.0;
    for (double x : w) s += x;
    for (double& x : w) x /= s;
    return {b, n, std::move(w)};
}

bool verify_theorem1(std::ostringstream& log) {
    const int b = 4, n = 3;
    const std::vector<int> cutoffs{1, 2, 4};

    struct Leaf {
        std::vector<int> assignment;
        int max_label;
        int discrepancy;
    };
    std::vector<Leaf> dbs_leaves;
    {
        Problem p;
        for (int i = 0; i < n; ++i) p.add_variable(0, b - 1);
        SearchConfig cfg;
        cfg.var_order = VarOrder::InputOrder;
        cfg.selector = Selector::LDSPreference;
        cfg.partitioner = [&cutoffs](const RankedValues& rv) { return partition_star(rv, cutoffs); };
        cfg.stop.kind = StopKind::Exhausted;
        cfg.on_leaf = [&dbs_leaves](const LeafInfo& leaf) {
            dbs_leaves.push_back({leaf.assignment, leaf.gen_max_label, leaf.gen_discrepancy});
        };
        dbs_solve(p, cfg);
    }

    std::vector<std::set<std::vector<int>>> ib_sets;
    long long ib_total = 0;
    for (int c : cutoffs) {
        Problem p;
        for (int i = 0; i < n; ++i) p.add_variable(0, b - 1);
        std::set<std::vector<int>> leaves;
        SearchConfig cfg;
        cfg.var_order = VarOrder::InputOrder;
        cfg.stop.kind = StopKind::Exhausted;
        cfg.on_leaf = [&leaves](const LeafInfo& leaf) { leaves.insert(leaf.assignment); };
        SearchResult r = ib_solve(p, {c}, cfg);
        ib_total += r.stats.leaves_visited;
        ib_sets.push_back(std::move(leaves));
    }

    bool ok = dbs_leaves.size() == ipow(b, n);
    for (size_t t = 0; t < cutoffs.size(); ++t) {
        std::set<std::vector<int>> group;
        int kmin = n * (b - 1), kmax = 0;
        for (const Leaf& l : dbs_leaves) {
            if (l.max_label != static_cast<int>(t)) continue;
            group.insert(l.assignment);
            kmin = std::min(kmin, l.discrepancy);
            kmax = std::max(kmax, l.discrepancy);
        }
        std::set<std::vector<int>> expect = ib_sets[t];
        if (t > 0)
            for (const std::vector<int>& a : ib_sets[t - 1]) expect.erase(a);
        if (group != expect) {
            ok = false;
            log << "theorem 1: group t=" << t << " has " << group.size() << " leaves, expected "
                << expect.size() << "\n";
        }
        if (t > 0 && !group.empty() &&
            (kmin < static_cast<int>(t) || kmax > static_cast<int>(t) * n)) {
            ok = false;
            log << "theorem 1: group t=" << t << " discrepancies [" << kmin << "," << kmax
                << "] outside [t, t*n]\n";
        }
    }
    if (static_cast<long long>(dbs_leaves.size()) >= ib_total) {
        ok = false;
        log << "theorem 1: DBS generated " << dbs_leaves.size() << " leaves, IB " << ib_total
            << "\n";
    }
    log << "theorem 1: DBS leaves " << dbs_leaves.size() << " vs IB " << ib_total
        << (ok ? " (groups match)" : "") << "\n";
    return ok;
}

} // namespace

TheoremReport verify_theorems(int max_b, int max_n) {
    TheoremReport rep;
    std::ostringstream log;
    bool ok = verify_theorem1(log);
    ++rep.checks;

    long long t2 = 0, t3 = 0, t3_eq = 0;
    for (int b = 2; b <= max_b; ++b) {
        for (int n = 1; n <= max_n; ++n) {
            for (int plateau = 1; plateau <= b; ++plateau) {
                ProbabilityModel m = theorem2_model(b, n, plateau);
                for (int c = 1; c <= plateau; ++c) {
                    for (int k = 0; k <= n * (b - 1); ++k) {
                        TheoremCheck chk = check_theorem2(m, c, k);
                        ++t2;
                        if (!chk.precondition_ok || !chk.holds) {
                            ok = false;
                            log << "theorem 2 fails at b=" << b << " n=" << n << " c=" << c
                                << " k=" << k << ": " << chk.dbs_side << " vs " << chk.lds_side
                                << "\n";
                        }
                        if (chk.equality_expected &&
                            std::abs(chk.dbs_side - chk.lds_side) > 1e-12) {
                            ok = false;
                            log << "theorem 2 equality violated at b=" << b << " n=" << n
                                << " c=" << c << " k=" << k << "\n";
                        }
                    }
                }
            }
            for (int c = 1; c <= b; ++c) {
                ProbabilityModel m = theorem3_model(b, n, c);
                for (int k = 0; k <= n * (b - 1); ++k) {
                    TheoremCheck chk = check_theorem3(m, c, k);
                    if (!chk.precondition_ok) continue; // leaf budget exceeded
                    ++t3;
                    double gap = chk.dbs_side - chk.lds_side;
                    if (!chk.holds) {
                        ok = false;
                        log << "theorem 3 fails at b=" << b << " n=" << n << " c=" << c
                            << " k=" << k << ": " << chk.dbs_side << " vs " << chk.lds_side
                            << "\n";
                    }
                    if (chk.equality_expected) {
                        ++t3_eq;
                        if (std::abs(gap) > 1e-12) {
                            ok = false;
                            log << "theorem 3 equality violated at b=" << b << " n=" << n
                                << " c=" << c << " k=" << k << " gap=" << gap << "\n";
                        }
                    } else if (gap <= 1e-12) {
                        ok = false;
                        log << "theorem 3 unexpected equality at b=" << b << " n=" << n
                            << " c=" << c << " k=" << k << "\n";
                    }
                }
            }
        }
    }
    rep.checks += t2 + t3;
    log << "theorem 2: " << t2 << " grid points\n";
    log << "theorem 3: " << t3 << " admissible grid points, " << t3_eq
        << " equality points (the stated pair (b-1, n(b-1)-1) is budget-admissible only at n=1; "
           "for n>1 its LDS tree has b^n-1 leaves, exceeding (b-1)^n)\n";
    rep.ok = ok;
    rep.details = log.str();
    return rep;
}

} // namespace dbsearch
