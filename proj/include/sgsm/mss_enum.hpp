#pragma once

#include <gmpxx.h>

#include <cmath>
#include <memory>
#include <set>
#include <string>

#include "index.hpp"
#include "oracle.hpp"

namespace sgsm {

/*
 * Counting and extraction of the decomposition trees induced by
 * maximum-sum segment queries: a general tree recurses left of, inside
 * (restricted, over the shrunk drop) and right of the drop of each
 * query answer. T(n) counts general trees, M(n) restricted trees.
 */
struct MssCountTable {
    std::vector<mpz_class> t, m;  // T(0..N), M(0..N)

    size_t limit() const { return t.size() - 1; }
};

// simplified single-sum recurrences
inline MssCountTable count_tables(size_t N) {
    MssCountTable tab;
    tab.t.assign(N + 1, 0);
    tab.m.assign(N + 1, 0);
    tab.t[0] = 1;
    if (N >= 1) {
        tab.t[1] = 1;
        tab.m[1] = 1;
    }
    for (size_t n = 2; n <= N; ++n) {
        for (size_t i = 1; i <= n - 1; ++i)
            mpz_addmul(tab.m[n].get_mpz_t(), tab.m[i].get_mpz_t(), tab.t[n - 1 - i].get_mpz_t());
        tab.t[n] = 1;
        for (size_t j = 2; j <= n; ++j)
            mpz_addmul(tab.t[n].get_mpz_t(), tab.t[n - j].get_mpz_t(), tab.m[j].get_mpz_t());
    }
    return tab;
}

// the original double/triple-sum recurrences, kept as a second route
inline MssCountTable count_tables_direct(size_t N) {
    MssCountTable tab;
    tab.t.assign(N + 1, 0);
    tab.m.assign(N + 1, 0);
    tab.t[0] = 1;
    if (N >= 1) tab.m[1] = 1;
    for (size_t n = 1; n <= N; ++n) {
        if (n >= 2)
            for (size_t i = 2; i <= n; ++i)
                mpz_addmul(tab.m[n].get_mpz_t(), tab.m[i - 1].get_mpz_t(),
                           tab.t[n - i].get_mpz_t());
        tab.t[n] = 1;
        mpz_class prod;
        for (size_t j = 2; j <= n; ++j)
            for (size_t i = 1; i <= j - 1; ++i) {
                prod = tab.t[i - 1] * tab.m[j - i];
                mpz_addmul(tab.t[n].get_mpz_t(), prod.get_mpz_t(), tab.t[n - j].get_mpz_t());
            }
    }
    return tab;
}

inline double log2_mpz(const mpz_class& v) {
    signed long exp;
    double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log2(mant) + double(exp);
}

// log2(T(N) / T(N-1)); approaches the binary growth rate of the count
inline double growth_estimate(const MssCountTable& tab) {
    size_t N = tab.limit();
    if (N < 100) throw std::invalid_argument("growth_estimate: table too short");
    return log2_mpz(tab.t[N]) - log2_mpz(tab.t[N - 1]);
}

inline double growth_estimate(size_t N) { return growth_estimate(count_tables(N)); }

// Coefficients 0..N of (1 - sqrt(1 - 4x(1 - x^2))) / (2x(1 - x^2)),
// expanded with exact rational arithmetic on truncated power series.
inline std::vector<mpz_class> closed_form_series(size_t N) {
    size_t len = N + 2;
    std::vector<mpq_class> p(len, 0), r(len, 0);
    p[0] = 1;
    if (len > 1) p[1] = -4;
    if (len > 3) p[3] = 4;
    r[0] = 1;
    for (size_t n = 1; n < len; ++n) {
        mpq_class acc = p[n];
        for (size_t i = 1; i < n; ++i) acc -= r[i] * r[n - i];
        r[n] = acc / 2;
    }
    // numerator (1 - r) has no constant term; divide by x, then by 2(1 - x^2)
    std::vector<mpq_class> s(len - 1);
    for (size_t k = 0; k + 1 < len; ++k) s[k] = -r[k + 1];
    std::vector<mpq_class> q(N + 1);
    for (size_t k = 0; k <= N; ++k) {
        mpq_class acc = s[k];
        if (k >= 2) acc += 2 * q[k - 2];
        q[k] = acc / 2;
    }
    std::vector<mpz_class> out(N + 1);
    for (size_t k = 0; k <= N; ++k) {
        q[k].canonicalize();
        if (q[k].get_den() != 1)
            throw std::logic_error("closed-form series produced a non-integer coefficient");
        out[k] = q[k].get_num();
    }
    return out;
}

struct MssTree {
    enum Flavor : uint8_t { kGeneral, kRestricted };

    Flavor flavor = kGeneral;
    bool has_label = false;  // false encodes the empty drop
    size_t lo = 0, hi = 0;
    std::unique_ptr<MssTree> left, middle, right;
};

namespace detail {

template <class QueryFn>
std::unique_ptr<MssTree> extract_restricted(const QueryFn& q, size_t lo, size_t hi);

template <class QueryFn>
std::unique_ptr<MssTree> extract_general(const QueryFn& q, size_t lo, size_t hi) {
    if (lo > hi) return nullptr;
    auto node = std::make_unique<MssTree>();
    node->flavor = MssTree::kGeneral;
    if (lo == hi) {
        node->has_label = true;
        node->lo = node->hi = lo;
        return node;
    }
    SegmentAnswer ans = q(lo, hi);
    if (ans.empty) return node;  // empty drop
    size_t i = ans.lo - 1, j = ans.hi;
    node->has_label = true;
    node->lo = i;
    node->hi = j;
    node->left = extract_general(q, lo, i - 1);
    node->middle = extract_restricted(q, i, j - 1);
    node->right = extract_general(q, j + 1, hi);
    return node;
}

template <class QueryFn>
std::unique_ptr<MssTree> extract_restricted(const QueryFn& q, size_t lo, size_t hi) {
    if (lo >= hi) return nullptr;  // length <= 1 is the empty tree
    auto node = std::make_unique<MssTree>();
    node->flavor = MssTree::kRestricted;
    node->has_label = true;
    if (lo + 1 == hi) {
        node->lo = lo;
        node->hi = hi;
        return node;
    }
    SegmentAnswer ans = q(lo, hi);
    assert(!ans.empty && ans.lo == lo + 1);  // the range starts at its own minimum
    size_t j = ans.hi;
    node->lo = ans.lo - 1;
    node->hi = j;
    node->left = extract_restricted(q, lo, j - 1);
    node->right = extract_general(q, j + 1, hi);
    return node;
}

inline void canonical_string(const MssTree* t, std::string& out) {
    if (!t) {
        out += '-';
        return;
    }
    out += t->flavor == MssTree::kGeneral ? 'G' : 'R';
    if (t->has_label) {
        out += '[';
        out += std::to_string(t->lo);
        out += ',';
        out += std::to_string(t->hi);
        out += ']';
    } else {
        out += '0';
    }
    out += '(';
    canonical_string(t->left.get(), out);
    if (t->flavor == MssTree::kGeneral) {
        out += ')';
        out += '(';
        canonical_string(t->middle.get(), out);
    }
    out += ')';
    out += '(';
    canonical_string(t->right.get(), out);
    out += ')';
}

}  // namespace detail

inline std::string canonical_string(const MssTree* t) {
    std::string out;
    detail::canonical_string(t, out);
    return out;
}

// extraction over internal coordinates of a built index
inline std::unique_ptr<MssTree> extract_mss_tree(const RMaxSSQIndex& idx, size_t lo, size_t hi,
                                                 MssTree::Flavor flavor) {
    auto q = [&](size_t a, size_t b) { return idx.query_internal(a, b); };
    return flavor == MssTree::kGeneral ? detail::extract_general(q, lo, hi)
                                       : detail::extract_restricted(q, lo, hi);
}

inline std::unique_ptr<MssTree> extract_mss_tree(const RMaxSSQIndex& idx) {
    return extract_mss_tree(idx, 1, idx.internal_size(), MssTree::kGeneral);
}

// Enumerates every length-n array with a leading zero and remaining
// entries drawn from value_set, extracts each tree with the
// brute-force query, and counts the distinct shapes.
inline size_t count_distinct_trees(size_t n, std::span<const int64_t> value_set) {
    if (n < 1) throw std::invalid_argument("count_distinct_trees: n must be positive");
    if (n > 7) throw std::invalid_argument("count_distinct_trees: n is limited to 7");
    if (value_set.empty()) throw std::invalid_argument("count_distinct_trees: empty value set");
    std::vector<int64_t> a(n, 0);
    std::set<std::string> shapes;
    auto q = [&](size_t lo, size_t hi) {
        auto r = oracle::naive_rmaxssq(a, lo, hi);
        return SegmentAnswer{r.empty, r.lo, r.hi};
    };
    size_t total = 1;
    for (size_t i = 1; i < n; ++i) total *= value_set.size();
    for (size_t code = 0; code < total; ++code) {
        size_t c = code;
        for (size_t i = 1; i < n; ++i) {
            a[i] = value_set[c % value_set.size()];
            c /= value_set.size();
        }
        auto tree = detail::extract_general(q, 1, n);
        shapes.insert(canonical_string(tree.get()));
    }
    return shapes.size();
}

}  // namespace sgsm
