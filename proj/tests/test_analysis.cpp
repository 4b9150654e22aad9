#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "dbsearch/analysis.hpp"

using namespace dbsearch;

namespace {

ProbabilityModel example_model() { return {3, 2, {0.5, 0.3, 0.2}}; }

ProbabilityModel random_model(int b, int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> w(static_cast<size_t>(b));
    for (double& x : w) x = u(rng);
    std::sort(w.begin(), w.end(), std::greater<>());
    double s = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= s;
    return {b, n, std::move(w)};
}

std::vector<std::vector<int>> all_tuples(int b, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<size_t>(n), 0);
    while (true) {
        out.push_back(cur);
        int i = n - 1;
        while (i >= 0 && cur[static_cast<size_t>(i)] == b - 1) cur[static_cast<size_t>(i--)] = 0;
        if (i < 0) return out;
        ++cur[static_cast<size_t>(i)];
    }
}

double tuple_mass(const std::vector<int>& t, const ProbabilityModel& m) {
    double x = 1.0;
    for (int v : t) x *= m.p[static_cast<size_t>(v)];
    return x;
}

} // namespace

TEST_CASE("model validation") {
    CHECK(validate_model(example_model()));
    CHECK(validate_model({2, 1, {0.5, 0.5}}));
    CHECK_FALSE(validate_model({3, 2, {0.3, 0.5, 0.2}})); // increasing
    CHECK_FALSE(validate_model({3, 2, {0.5, 0.3, 0.1}})); // sums to 0.9
    CHECK_FALSE(validate_model({3, 2, {0.7, 0.3}}));      // wrong arity
    CHECK_FALSE(validate_model({2, 0, {0.5, 0.5}}));
}

TEST_CASE("worked probability example") {
    ProbabilityModel m = example_model();

    SuccessPoint dbs2 = prob_dbs(2, m);
    CHECK(dbs2.leaves == 4);
    CHECK(dbs2.probability == doctest::Approx(0.64).epsilon(1e-12));

    SuccessPoint dbs1 = prob_dbs(1, m);
    CHECK(dbs1.leaves == 1);
    CHECK(dbs1.probability == doctest::Approx(0.25).epsilon(1e-12));

    SuccessPoint full = prob_dbs(3, m);
    CHECK(full.leaves == 9);
    CHECK(full.probability == doctest::Approx(1.0).epsilon(1e-12));

    SuccessPoint w0 = prob_lds(0, m);
    CHECK(w0.leaves == 1);
    CHECK(w0.probability == doctest::Approx(0.25).epsilon(1e-12));

    SuccessPoint w1 = prob_lds(1, m);
    CHECK(w1.leaves == 2);
    CHECK(w1.probability == doctest::Approx(0.30).epsilon(1e-12));
}

TEST_CASE("discrepancy waves partition the leaf set and the mass") {
    for (auto [b, n] : {std::pair{2, 5}, {3, 3}, {4, 2}}) {
        std::mt19937 rng(static_cast<unsigned>(100 * b + n));
        ProbabilityModel m = random_model(b, n, rng);
        std::vector<unsigned long long> waves = lds_wave_leaves(b, n);
        unsigned long long total = 0;
        double mass = 0.0;
        for (int k = 0; k <= n * (b - 1); ++k) {
            SuccessPoint w = prob_lds(k, m);
            CHECK(w.leaves == waves[static_cast<size_t>(k)]);
            total += w.leaves;
            mass += w.probability;
        }
        unsigned long long bn = 1;
        for (int i = 0; i < n; ++i) bn *= static_cast<unsigned long long>(b);
        CHECK(total == bn);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(lds_wave_leaves(2, 4) == std::vector<unsigned long long>{1, 4, 6, 4, 1});
}

TEST_CASE("composition classes: counts, multiplicities, coverage") {
    PartitionSet zero = enumerate_partitions(0, 4, 3);
    REQUIRE(zero.entries.size() == 1);
    CHECK(zero.entries[0].multiplicity == 1);
    CHECK(zero.entries[0].counts == std::vector<int>{4, 0, 0});

    PartitionSet one = enumerate_partitions(1, 4, 3);
    REQUIRE(one.entries.size() == 1);
    CHECK(one.entries[0].multiplicity == 4);

    // k=2, n=2, b=3: compositions (0,2), (1,1), (2,0) fold into two classes
    PartitionSet two = enumerate_partitions(2, 2, 3);
    REQUIRE(two.entries.size() == 2);
    unsigned long long mu = 0;
    for (const auto& e : two.entries) mu += e.multiplicity;
    CHECK(mu == 3);

    // class multiplicities must reproduce the wave sizes
    for (auto [b, n] : {std::pair{3, 4}, {5, 3}}) {
        std::vector<unsigned long long> waves = lds_wave_leaves(b, n);
        for (int k = 0; k <= n * (b - 1); ++k) {
            unsigned long long total = 0;
            for (const auto& e : enumerate_partitions(k, n, b).entries) total += e.multiplicity;
            CHECK(total == waves[static_cast<size_t>(k)]);
        }
    }
}

TEST_CASE("closed forms agree with exhaustive tuple enumeration") {
    std::mt19937 rng(7);
    for (int round = 0; round < 20; ++round) {
        int b = 2 + static_cast<int>(rng() % 3);
        int n = 2 + static_cast<int>(rng() % 3);
        ProbabilityModel m = random_model(b, n, rng);
        REQUIRE(validate_model(m));
        std::vector<std::vector<int>> tuples = all_tuples(b, n);
        for (int c = 1; c <= b; ++c) {
            double mass = 0.0;
            unsigned long long leaves = 0;
            for (const auto& t : tuples) {
                if (*std::max_element(t.begin(), t.end()) < c) {
                    mass += tuple_mass(t, m);
                    ++leaves;
                }
            }
            SuccessPoint sp = prob_dbs(c, m);
            CHECK(sp.leaves == leaves);
            CHECK(std::abs(sp.probability - mass) <= 1e-12);
        }
        for (int k = 0; k <= n * (b - 1); ++k) {
            double mass = 0.0;
            unsigned long long leaves = 0;
            for (const auto& t : tuples) {
                if (std::accumulate(t.begin(), t.end(), 0) == k) {
                    mass += tuple_mass(t, m);
                    ++leaves;
                }
            }
            SuccessPoint sp = prob_lds(k, m);
            CHECK(sp.leaves == leaves);
            CHECK(std::abs(sp.probability - mass) <= 1e-12);
        }
    }
}

TEST_CASE("cumulative curves match the engine's actual visitation order") {
    std::mt19937 rng(11);
    for (auto [b, n] : {std::pair{3, 3}, {4, 3}, {4, 2}}) {
        ProbabilityModel m = random_model(b, n, rng);
        std::vector<SuccessPoint> bf =
            brute_force_success(engine_leaf_order(b, n, Selector::LDS), m);
        for (const SuccessPoint& pt : cumulative_success(Schedule::LDS, m)) {
            REQUIRE(pt.leaves >= 1);
            REQUIRE(pt.leaves <= bf.size());
            CHECK(std::abs(bf[static_cast<size_t>(pt.leaves) - 1].probability - pt.probability) <=
                  1e-12);
        }
    }
}

TEST_CASE("paired-cell decomposition curve matches the engine") {
    std::mt19937 rng(13);
    Partitioner pairs = [](const RankedValues& rv) {
        DomainPartition part;
        for (size_t i = 0; i < rv.size(); i += 2) {
            std::vector<int> cell{rv[i].value};
            if (i + 1 < rv.size()) cell.push_back(rv[i + 1].value);
            part.cells.push_back(std::move(cell));
        }
        return part;
    };
    for (auto [b, n] : {std::pair{4, 3}, {6, 2}, {3, 3}}) {
        ProbabilityModel m = random_model(b, n, rng);
        std::vector<SuccessPoint> bf =
            brute_force_success(engine_leaf_order(b, n, Selector::LDS, pairs), m);
        std::vector<SuccessPoint> curve = cumulative_success(Schedule::DBS2WithLDS, m);
        REQUIRE(!curve.empty());
        CHECK(curve.back().leaves == bf.size());
        for (const SuccessPoint& pt : curve)
            CHECK(std::abs(bf[static_cast<size_t>(pt.leaves) - 1].probability - pt.probability) <=
                  1e-12);
    }
}

TEST_CASE("uniform branching makes every curve linear in the leaves") {
    int b = 4, n = 3;
    ProbabilityModel m{b, n, std::vector<double>(4, 0.25)};
    double total = 64.0;
    for (Schedule s : {Schedule::LDS, Schedule::DBS, Schedule::DBS2WithLDS}) {
        std::vector<SuccessPoint> curve = cumulative_success(s, m);
        REQUIRE(!curve.empty());
        for (const SuccessPoint& pt : curve)
            CHECK(pt.probability ==
                  doctest::Approx(static_cast<double>(pt.leaves) / total).epsilon(1e-12));
        CHECK(curve.back().probability == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("distribution families") {
    ProbabilityModel lin = make_distribution({Family::Linear, {}, 2.0, 0.35}, 4, 3);
    CHECK(lin.b == 4);
    CHECK(lin.n == 3);
    REQUIRE(lin.p.size() == 4);
    CHECK(lin.p[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(lin.p[1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(lin.p[2] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(lin.p[3] == doctest::Approx(0.1).epsilon(1e-15));

    DistributionSpec plat{Family::Linear, std::pair{2, 2}, 2.0, 0.35};
    ProbabilityModel lp = make_distribution(plat, 4);
    CHECK(lp.p[0] == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(lp.p[1] == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(lp.p[2] == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(lp.p[3] == doctest::Approx(0.15).epsilon(1e-15));

    for (Family f : {Family::Poisson, Family::Binomial}) {
        ProbabilityModel m = make_distribution({f, {}, 2.0, 0.35}, 8, 2);
        CHECK(validate_model(m));
        CHECK(m.p[0] > m.p[7]);
    }

    CHECK_THROWS_AS(make_distribution({Family::Linear, std::pair{3, 2}, 2.0, 0.35}, 4),
                    std::invalid_argument);
}

TEST_CASE("mean-success comparison on plateau models") {
    // p has a leading plateau of size 2: both branch subsets of size <= 2
    // carry equal per-leaf mass, so decomposition can only win
    ProbabilityModel m{4, 2, {0.3, 0.3, 0.25, 0.15}};
    REQUIRE(validate_model(m));
    for (int c = 1; c <= 2; ++c) {
        for (int k = 0; k <= 6; ++k) {
            TheoremCheck chk = check_theorem2(m, c, k);
            CHECK(chk.precondition_ok);
            CHECK(chk.holds);
        }
    }
    // uniform model: equality whenever k < c
    ProbabilityModel u{3, 2, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    TheoremCheck eq = check_theorem2(u, 2, 1);
    CHECK(eq.precondition_ok);
    CHECK(eq.holds);
    CHECK(eq.equality_expected);
    CHECK(eq.dbs_side == doctest::Approx(eq.lds_side).epsilon(1e-12));

    TheoremCheck bad = check_theorem2(m, 3, 1); // c beyond the plateau
    CHECK_FALSE(bad.precondition_ok);
}

TEST_CASE("equal-budget comparison on strictly decreasing models") {
    ProbabilityModel m{4, 2, {0.4, 0.3, 0.2, 0.1}};
    REQUIRE(validate_model(m));

    TheoremCheck mid = check_theorem3(m, 2, 1); // 3 leaves vs 4
    CHECK(mid.precondition_ok);
    CHECK(mid.holds);
    CHECK(mid.dbs_side == doctest::Approx(0.49).epsilon(1e-12));
    CHECK(mid.lds_side == doctest::Approx(0.40).epsilon(1e-12));
    CHECK_FALSE(mid.equality_expected);

    TheoremCheck low = check_theorem3(m, 1, 0);
    CHECK(low.precondition_ok);
    CHECK(low.holds);
    CHECK(low.equality_expected);
    CHECK(low.dbs_side == doctest::Approx(low.lds_side).epsilon(1e-12));

    TheoremCheck high = check_theorem3(m, 4, 6);
    CHECK(high.precondition_ok);
    CHECK(high.holds);
    CHECK(high.equality_expected);
    CHECK(high.dbs_side == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(high.lds_side == doctest::Approx(1.0).epsilon(1e-12));

    ProbabilityModel uniform{3, 2, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    CHECK_FALSE(check_theorem3(uniform, 2, 1).precondition_ok);
}

TEST_CASE("theorem sweep over a small grid") {
    TheoremReport rep = verify_theorems(4, 3);
    CHECK(rep.ok);
    CHECK(rep.checks > 0);
    CHECK(!rep.details.empty());
}
