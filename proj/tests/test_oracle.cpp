#include <catch2/catch.hpp>

#include <random>

#include "sgsm/oracle.hpp"

using namespace sgsm::oracle;

namespace {

// 12-entry array (leading zero) whose candidate pairs are the nested set
// {(1,2),(3,4),(1,6),(1,8),(9,10),(9,11),(9,12)}
const std::vector<int64_t> kNestedCandidates = {0, 5, -2, 1, -3, 5, -4, 5, -4, 1, 1, 1};

}  // namespace

TEST_CASE("naive_rmaxssq examples") {
    std::vector<int64_t> a = {4, -1, 2, -6, 3};
    auto r = naive_rmaxssq(a, 1, 5);
    REQUIRE_FALSE(r.empty);
    CHECK(r.lo == 1);
    CHECK(r.hi == 3);

    auto tie = naive_rmaxssq({1, -2, 1}, 1, 3);
    REQUIRE_FALSE(tie.empty);
    CHECK(tie.lo == 3);
    CHECK(tie.hi == 3);

    CHECK(naive_rmaxssq({-1}, 1, 1).empty);
    CHECK_THROWS_AS(naive_rmaxssq(a, 3, 2), std::out_of_range);
}

TEST_CASE("naive_rmq examples") {
    CHECK(naive_rmq({3, 1, 3}, 1, 3, true) == 3);
    CHECK(naive_rmq({5}, 1, 1, false) == 1);
    CHECK(naive_rmq({2, 2, 2}, 1, 3, false) == 3);
}

TEST_CASE("naive_kcover examples") {
    std::vector<int64_t> a = {4, -1, 2, -6, 3};
    CHECK(naive_kcover(a, 2) == 8);
    CHECK(naive_kcover(a, 3) == 9);
    CHECK(naive_kcover({-3, -1, -2}, 1) == 0);
    CHECK(naive_kcover({-3, -1, -2}, 3) == 0);
}

TEST_CASE("naive_arrays on the running example") {
    auto r = naive_arrays({0, 4, -1, 2, -6, 3});
    CHECK(r.leftvis == std::vector<size_t>{0, 0, 0, 2, 0, 4, 4});
    CHECK(r.p == std::vector<size_t>{0, 1, 1, 3, 1, 5, 5});
    CHECK(r.d == std::vector<int64_t>{0, 0, 4, 0, 5, 0, 3});
    CHECK(r.q == std::vector<size_t>{0, 0, 0, 0, 0, 0, 1});
}

TEST_CASE("naive_arrays left sibling branch example") {
    auto r = naive_arrays({0, 10, -2, 5, -9, 2});
    CHECK(r.q[6] == 3);
    CHECK(r.p == std::vector<size_t>{0, 1, 1, 3, 1, 5, 5});
}

TEST_CASE("naive_arrays on all-non-positive input") {
    auto r = naive_arrays({0, -2, 0, -1});
    for (size_t i = 1; i <= 4; ++i) {
        CHECK(r.p[i] == i);
        CHECK(r.d[i] == 0);
        CHECK(r.q[i] == 0);
    }
}

TEST_CASE("nested candidate array reproduces its candidate set") {
    auto r = naive_arrays(kNestedCandidates);
    std::vector<std::pair<size_t, size_t>> candidates;
    for (size_t i = 1; i < r.p.size(); ++i)
        if (r.p[i] < i) candidates.emplace_back(r.p[i], i);
    std::vector<std::pair<size_t, size_t>> want = {{1, 2}, {3, 4},  {1, 6}, {1, 8},
                                                   {9, 10}, {9, 11}, {9, 12}};
    CHECK(candidates == want);
}

TEST_CASE("whole-array query matches the candidate-score characterization") {
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<int64_t> val(-20, 20);
    for (int it = 0; it < 2000; ++it) {
        size_t n = 1 + rng() % 48;
        std::vector<int64_t> a(n);
        a[0] = 0;
        for (size_t i = 1; i < n; ++i) a[i] = val(rng);
        auto arrs = naive_arrays(a);
        size_t x = naive_rmq(std::vector<int64_t>(arrs.d.begin() + 1, arrs.d.end()), 1, n, true);
        size_t t = arrs.p[x];
        auto ans = naive_rmaxssq(a, 1, n);
        if (t == x) {
            REQUIRE(ans.empty);
        } else {
            REQUIRE_FALSE(ans.empty);
            REQUIRE(ans.lo == t + 1);
            REQUIRE(ans.hi == x);
        }
    }
}
