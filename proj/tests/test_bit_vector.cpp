#include <catch2/catch.hpp>

#include <random>

#include "sgsm/bit_vector.hpp"

using sgsm::BitBuilder;
using sgsm::BitVector;

namespace {

BitVector from_string(const std::string& s) {
    BitBuilder b;
    for (char c : s) b.push_back(c == '1');
    return BitVector(std::move(b));
}

// 1-based inclusive rank, matching the paper-style convention used in tests
size_t rank_1based(const BitVector& bv, bool b, size_t pos) { return bv.rank(b, pos); }

}  // namespace

TEST_CASE("rank on fixed vectors") {
    auto zeros = from_string("000000");
    CHECK(rank_1based(zeros, 1, 6) == 0);

    auto v = from_string("101101");
    CHECK(rank_1based(v, 1, 4) == 3);
    CHECK(rank_1based(v, 0, 6) == 2);
    CHECK(v.rank1(0) == 0);
    CHECK_THROWS_AS(v.rank(1, 7), std::out_of_range);
}

TEST_CASE("select on fixed vectors") {
    auto ones = from_string("111");
    CHECK(ones.select1(2) == 1);  // 1-based answer 2

    auto v = from_string("101101");
    CHECK(v.select1(3) == 3);  // 1-based answer 4
    CHECK(v.select0(2) == 4);  // 1-based answer 5
    CHECK_THROWS_AS(v.select1(5), std::out_of_range);
    CHECK_THROWS_AS(v.select0(3), std::out_of_range);
    CHECK_THROWS_AS(v.select1(0), std::out_of_range);
}

TEST_CASE("rank/select agree with linear-scan oracle") {
    std::mt19937_64 rng(12345);
    int checked = 0;
    for (int it = 0; it < 10000; ++it) {
        size_t len = 1 + rng() % 2048;
        double density = std::uniform_real_distribution<>(0.01, 0.99)(rng);
        BitBuilder bb(len);
        std::vector<bool> bits(len);
        for (size_t i = 0; i < len; ++i) {
            bits[i] = std::bernoulli_distribution(density)(rng);
            bb.push_back(bits[i]);
        }
        BitVector bv(std::move(bb));

        std::vector<size_t> pref(len + 1, 0);
        std::vector<size_t> ones_at, zeros_at;
        for (size_t i = 0; i < len; ++i) {
            pref[i + 1] = pref[i] + bits[i];
            (bits[i] ? ones_at : zeros_at).push_back(i);
        }
        bool ok = true;
        for (size_t pos = 0; pos <= len; ++pos) {
            ok &= bv.rank1(pos) == pref[pos];
            ok &= bv.rank0(pos) == pos - pref[pos];
        }
        for (size_t k = 1; k <= ones_at.size(); ++k) ok &= bv.select1(k) == ones_at[k - 1];
        for (size_t k = 1; k <= zeros_at.size(); ++k) ok &= bv.select0(k) == zeros_at[k - 1];
        if (!ok) {
            CAPTURE(it, len, density);
            REQUIRE(ok);
        }
        checked++;
    }
    REQUIRE(checked == 10000);
}

TEST_CASE("select-of-rank lands at or before the queried position") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 200; ++it) {
        size_t len = 1 + rng() % 512;
        BitBuilder bb;
        for (size_t i = 0; i < len; ++i) bb.push_back(rng() & 1);
        BitVector bv(std::move(bb));
        for (size_t p = 0; p < len; ++p) {
            bool b = bv.bit(p);
            size_t r = bv.rank(b, p + 1);
            REQUIRE(bv.select(b, r) == p);
        }
    }
}

TEST_CASE("aux tables stay below half the raw bits") {
    size_t m = size_t(1) << 20;
    std::mt19937_64 rng(7);
    BitBuilder bb(m);
    for (size_t i = 0; i < m; ++i) bb.push_back(rng() & 1);
    BitVector bv(std::move(bb));
    REQUIRE(bv.aux_bits() <= m / 2);
    REQUIRE(bv.size() == m);
}
