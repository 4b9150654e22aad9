#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "dbsearch/problem.hpp"
#include "dbsearch/propagators.hpp"

using namespace dbsearch;

namespace {

struct SuccessorModel {
    Problem p;
    std::vector<int> next;

    bool set(int var, int val) {
        return p.assign(var, val) == PropResult::Consistent &&
               p.propagate_all() == PropResult::Consistent;
    }
};

SuccessorModel make_model(int n, bool with_alldiff) {
    SuccessorModel m;
    for (int i = 0; i < n; ++i) {
        m.next.push_back(m.p.add_variable(0, n - 1));
        m.p.remove(i, i);
    }
    if (with_alldiff)
        m.p.add_constraint(std::make_unique<AlldifferentGAC>(m.next, 0, n - 1));
    m.p.add_constraint(std::make_unique<NoSubtour>(m.next));
    return m;
}

bool is_single_cycle(const std::vector<int>& next) {
    int n = static_cast<int>(next.size());
    std::vector<char> seen(static_cast<size_t>(n), 0);
    int at = 0, steps = 0;
    while (!seen[static_cast<size_t>(at)]) {
        seen[static_cast<size_t>(at)] = 1;
        at = next[static_cast<size_t>(at)];
        ++steps;
    }
    return at == 0 && steps == n;
}

} // namespace

TEST_CASE("a growing path bans re-entry until the last arc") {
    SuccessorModel m = make_model(5, false);
    REQUIRE(m.p.propagate_all() == PropResult::Consistent);
    REQUIRE(m.set(0, 1));
    REQUIRE(m.set(1, 2));
    REQUIRE(m.set(2, 3));
    // 0->1->2->3 has length 3 < 4: any successor of 3 inside the path would
    // close a short cycle
    CHECK(m.p.dom(3).values() == std::vector<int>{4});
}

TEST_CASE("closing a short cycle by direct assignment fails") {
    SuccessorModel m = make_model(4, false);
    REQUIRE(m.p.propagate_all() == PropResult::Consistent);
    REQUIRE(m.set(0, 1));
    CHECK_FALSE(m.set(1, 0));
}

TEST_CASE("the full Hamiltonian cycle is accepted") {
    SuccessorModel m = make_model(4, true);
    REQUIRE(m.p.propagate_all() == PropResult::Consistent);
    REQUIRE(m.set(0, 2));
    REQUIRE(m.set(2, 1));
    REQUIRE(m.set(1, 3));
    CHECK(m.p.dom(3).value() == 0);
}

TEST_CASE("random complete assignments accepted iff single Hamiltonian cycle") {
    std::mt19937 rng(99);
    int accepted = 0, rejected = 0;
    for (int round = 0; round < 120; ++round) {
        int n = 3 + static_cast<int>(rng() % 6); // n <= 8
        std::vector<int> perm(static_cast<size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        bool self_loop = false;
        for (int i = 0; i < n; ++i)
            if (perm[static_cast<size_t>(i)] == i) self_loop = true;
        if (self_loop) continue; // those arcs are removed at model build

        SuccessorModel m = make_model(n, true);
        REQUIRE(m.p.propagate_all() == PropResult::Consistent);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = m.set(i, perm[static_cast<size_t>(i)]);
        if (is_single_cycle(perm)) {
            CHECK(ok);
            ++accepted;
        } else {
            CHECK_FALSE(ok);
            ++rejected;
        }
    }
    CHECK(accepted > 0);
    CHECK(rejected > 0);
}
