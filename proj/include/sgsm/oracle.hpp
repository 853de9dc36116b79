#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

// Brute-force reference implementations, evaluated straight from the
// definitions. Deliberately self-contained: nothing here touches the
// succinct structures, so these can serve as ground truth for them.
namespace sgsm::oracle {

struct NaiveSegment {
    bool empty = true;
    size_t lo = 0, hi = 0;  // 1-based when !empty

    bool operator==(const NaiveSegment& o) const {
        return empty == o.empty && (empty || (lo == o.lo && hi == o.hi));
    }
};

// tie order among fully-trimmed segments: larger sum, then larger
// right endpoint (the rightmost one), then shorter
inline bool segment_better(int64_t sum_a, size_t lo_a, size_t hi_a, int64_t sum_b, size_t lo_b,
                           size_t hi_b) {
    if (sum_a != sum_b) return sum_a > sum_b;
    if (hi_a != hi_b) return hi_a > hi_b;
    return hi_a - lo_a < hi_b - lo_b;
}

inline NaiveSegment naive_rmaxssq(const std::vector<int64_t>& a, size_t i, size_t j) {
    size_t n = a.size();
    if (i < 1 || i > j || j > n) throw std::out_of_range("naive_rmaxssq: bad range");
    std::vector<int64_t> c(n + 1, 0);
    for (size_t k = 1; k <= n; ++k) c[k] = c[k - 1] + a[k - 1];
    NaiveSegment best;
    int64_t best_sum = 0;
    for (size_t lo = i; lo <= j; ++lo)
        for (size_t hi = lo; hi <= j; ++hi) {
            int64_t s = c[hi] - c[lo - 1];
            if (s <= 0) continue;
            // skip ranges a trimmed twin represents: a zero-sum proper
            // prefix or suffix means a shorter range with the same sum
            bool trimmed = true;
            for (size_t k = lo; k < hi && trimmed; ++k) {
                if (c[k] == c[lo - 1] || c[k] == c[hi]) trimmed = false;
            }
            if (!trimmed) continue;
            if (best.empty || segment_better(s, lo, hi, best_sum, best.lo, best.hi)) {
                best = {false, lo, hi};
                best_sum = s;
            }
        }
    return best;
}

// index of the rightmost max (maximize) or min in b[i..j], 1-based
inline size_t naive_rmq(const std::vector<int64_t>& b, size_t i, size_t j, bool maximize) {
    if (i < 1 || i > j || j > b.size()) throw std::out_of_range("naive_rmq: bad range");
    size_t best = i;
    for (size_t k = i + 1; k <= j; ++k) {
        if (maximize ? b[k - 1] >= b[best - 1] : b[k - 1] <= b[best - 1]) best = k;
    }
    return best;
}

// best total of at most k disjoint segments, for every k in [0, n]
inline std::vector<int64_t> naive_kcover_all(const std::vector<int64_t>& a) {
    size_t n = a.size();
    constexpr int64_t kNegInf = INT64_MIN / 4;
    std::vector<int64_t> scores(n + 1, 0);
    std::vector<int64_t> f(n + 1, 0), g(n + 1, kNegInf), pf(n + 1, 0);
    for (size_t k = 1; k <= n; ++k) {
        g[0] = kNegInf;
        f[0] = 0;
        for (size_t i = 1; i <= n; ++i) {
            g[i] = std::max(g[i - 1], pf[i - 1]) + a[i - 1];
            f[i] = std::max(f[i - 1], g[i]);
        }
        scores[k] = f[n];
        pf = f;
    }
    return scores;
}

inline int64_t naive_kcover(const std::vector<int64_t>& a, size_t k) {
    if (k < 1) throw std::out_of_range("naive_kcover: k must be positive");
    auto all = naive_kcover_all(a);
    return all[std::min(k, a.size())];
}

struct NaiveArrays {
    // 1-based arrays; index 0 unused
    std::vector<size_t> leftvis, p, q;
    std::vector<int64_t> d;
};

// literal-definition evaluation of Left-Vis, Left-Min, candidate scores
// and left siblings on the array as given (quadratic / cubic scans)
inline NaiveArrays naive_arrays(const std::vector<int64_t>& a) {
    size_t n = a.size();
    std::vector<int64_t> c(n + 1, 0);
    for (size_t k = 1; k <= n; ++k) c[k] = c[k - 1] + a[k - 1];
    NaiveArrays r;
    r.leftvis.assign(n + 1, 0);
    r.p.assign(n + 1, 0);
    r.q.assign(n + 1, 0);
    r.d.assign(n + 1, 0);
    for (size_t i = 1; i <= n; ++i) {
        for (size_t j = 1; j < i; ++j)
            if (c[j] >= c[i]) r.leftvis[i] = j;
        size_t pm = r.leftvis[i] + 1;
        for (size_t j = pm; j <= i; ++j)
            if (c[j] <= c[pm]) pm = j;
        r.p[i] = pm;
        r.d[i] = pm < i ? c[i] - c[pm] : 0;
        if (r.d[i] > 0) {
            for (size_t l = 1; l + 1 <= r.p[i]; ++l)
                for (size_t lp = l + 1; lp <= r.p[i]; ++lp)
                    if (c[lp] - c[l] > r.d[i]) {
                        r.q[i] = std::max(r.q[i], l);
                        break;
                    }
        }
    }
    return r;
}

}  // namespace sgsm::oracle
