#include <catch2/catch.hpp>

#include <random>

#include "sgsm/mss_enum.hpp"

using namespace sgsm;

namespace {

RMaxSSQIndex make(const std::vector<int64_t>& user) {
    return RMaxSSQIndex::build(std::span<const int64_t>(user.data(), user.size()));
}

std::vector<int64_t> range_set(int64_t lo, int64_t hi) {
    std::vector<int64_t> v;
    for (int64_t x = lo; x <= hi; ++x) v.push_back(x);
    return v;
}

// structural sanity: labels inside the construction range, flavors in
// the right slots, restricted drops anchored at their range start
void check_structure(const MssTree* t, size_t lo, size_t hi, MssTree::Flavor flavor) {
    if (!t) return;
    REQUIRE(t->flavor == flavor);
    if (!t->has_label) {
        REQUIRE(flavor == MssTree::kGeneral);
        REQUIRE_FALSE(t->left);
        REQUIRE_FALSE(t->middle);
        REQUIRE_FALSE(t->right);
        return;
    }
    REQUIRE(t->lo >= lo);
    REQUIRE(t->hi <= hi);
    REQUIRE(t->lo <= t->hi);
    if (flavor == MssTree::kGeneral) {
        if (t->lo == t->hi) {
            REQUIRE(lo == hi);
            return;
        }
        check_structure(t->left.get(), lo, t->lo - 1, MssTree::kGeneral);
        check_structure(t->middle.get(), t->lo, t->hi - 1, MssTree::kRestricted);
        check_structure(t->right.get(), t->hi + 1, hi, MssTree::kGeneral);
        if (t->middle && t->middle->has_label) {
            REQUIRE(t->middle->lo == t->lo);      // anchored at the dropped position
            REQUIRE(t->middle->lo != t->lo + 1);  // never one past it
        }
    } else {
        REQUIRE(t->lo == lo);
        check_structure(t->left.get(), lo, t->hi - 1, MssTree::kRestricted);
        check_structure(t->right.get(), t->hi + 1, hi, MssTree::kGeneral);
    }
}

}  // namespace

TEST_CASE("count tables match the frozen prefix") {
    auto tab = count_tables(8);
    std::vector<long> t_want = {1, 1, 2, 4, 10}, m_want = {0, 1, 1, 2, 5};
    for (size_t i = 0; i <= 4; ++i) {
        CHECK(tab.t[i] == t_want[i]);
        CHECK(tab.m[i] == m_want[i]);
    }
}

TEST_CASE("both recurrence routes agree") {
    auto fast = count_tables(50);
    auto direct = count_tables_direct(50);
    for (size_t i = 0; i <= 50; ++i) {
        REQUIRE(fast.t[i] == direct.t[i]);
        REQUIRE(fast.m[i] == direct.m[i]);
    }
}

TEST_CASE("closed-form series coefficients equal the counts") {
    auto tab = count_tables(64);
    auto series = closed_form_series(64);
    for (size_t i = 0; i <= 64; ++i) REQUIRE(series[i] == tab.t[i]);
}

TEST_CASE("growth estimate approaches the binary growth rate") {
    CHECK(growth_estimate(100) == Approx(1.89113).margin(0.05));
    CHECK_THROWS_AS(growth_estimate(50), std::invalid_argument);
}

TEST_CASE("extraction of the running example") {
    auto idx = make({4, -1, 2, -6, 3});
    auto tree = extract_mss_tree(idx);
    REQUIRE(tree);
    REQUIRE(tree->has_label);
    CHECK(tree->lo == 1);
    CHECK(tree->hi == 4);
    check_structure(tree.get(), 1, idx.internal_size(), MssTree::kGeneral);
}

TEST_CASE("extraction base cases") {
    auto idx = make({5});
    auto single = extract_mss_tree(idx, 1, 1, MssTree::kGeneral);
    REQUIRE(single);
    REQUIRE(single->has_label);
    CHECK(single->lo == 1);
    CHECK(single->hi == 1);
    CHECK(extract_mss_tree(idx, 1, 1, MssTree::kRestricted) == nullptr);
    auto allneg = make({-2, -4});
    auto empty_drop = extract_mss_tree(allneg);
    REQUIRE(empty_drop);
    CHECK_FALSE(empty_drop->has_label);
}

TEST_CASE("index and oracle extractions coincide on random arrays") {
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<int64_t> val(-5, 5);
    for (int it = 0; it < 2000; ++it) {
        size_t n = 1 + rng() % 24;
        std::vector<int64_t> user(n);
        for (auto& x : user) x = val(rng);
        auto idx = make(user);
        auto via_index = extract_mss_tree(idx);

        std::vector<int64_t> internal(user);
        internal.insert(internal.begin(), 0);
        auto q = [&](size_t lo, size_t hi) {
            auto r = oracle::naive_rmaxssq(internal, lo, hi);
            return SegmentAnswer{r.empty, r.lo, r.hi};
        };
        auto via_oracle = sgsm::detail::extract_general(q, 1, internal.size());
        REQUIRE(canonical_string(via_index.get()) == canonical_string(via_oracle.get()));
        check_structure(via_index.get(), 1, idx.internal_size(), MssTree::kGeneral);
    }
}

TEST_CASE("distinct tree counts at small lengths") {
    auto v33 = range_set(-3, 3);
    CHECK(count_distinct_trees(2, v33) == 2);
    CHECK(count_distinct_trees(3, v33) == 4);
    CHECK(count_distinct_trees(4, v33) == 10);
    CHECK_THROWS_AS(count_distinct_trees(8, v33), std::invalid_argument);
    CHECK_THROWS_AS(count_distinct_trees(3, std::vector<int64_t>{}), std::invalid_argument);
}

TEST_CASE("distinct tree counts never exceed the recurrence") {
    auto tab = count_tables(6);
    for (auto& vs : {range_set(-2, 2), range_set(-1, 1), range_set(-3, 3)}) {
        for (size_t n = 1; n <= 5; ++n) {
            size_t got = count_distinct_trees(n, vs);
            REQUIRE(mpz_class(got) <= tab.t[n]);
        }
    }
    REQUIRE(mpz_class(count_distinct_trees(6, range_set(-2, 2))) <= tab.t[6]);
}
