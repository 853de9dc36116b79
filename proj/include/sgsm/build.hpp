#pragma once

#include <span>

#include "one_page_graph.hpp"
#include "rmq.hpp"

namespace sgsm {

/*
 * Construction pipeline for the query index: cumulative sums, left
 * visible regions, left minima, candidate scores, left siblings and
 * the edge lists of the candidate and left-sibling graphs.
 *
 * All arrays are 1-based over the internal coordinates: position 1 is
 * a zero sentinel, position i+1 holds user value i.
 */

struct PreparedArray {
    std::vector<int64_t> a;  // index 0 unused, a[1] = 0

    size_t internal_size() const { return a.size() - 1; }
    size_t user_size() const { return a.size() - 2; }
};

inline PreparedArray prepare(std::span<const int64_t> user_values) {
    if (user_values.empty()) throw std::invalid_argument("prepare: empty input");
    PreparedArray pa;
    pa.a.resize(user_values.size() + 2);
    pa.a[0] = 0;
    pa.a[1] = 0;
    int64_t sum = 0;
    for (size_t i = 0; i < user_values.size(); ++i) {
        if (__builtin_add_overflow(sum, user_values[i], &sum))
            throw std::overflow_error("prepare: prefix sum exceeds the 64-bit signed range");
        pa.a[i + 2] = user_values[i];
    }
    return pa;
}

struct CumulativeSums {
    std::vector<int64_t> c;  // c[0] = 0, c[i] = a[1] + ... + a[i]

    size_t internal_size() const { return c.size() - 1; }
};

inline CumulativeSums cumulative(const PreparedArray& pa) {
    CumulativeSums cs;
    size_t n = pa.internal_size();
    cs.c.resize(n + 1);
    cs.c[0] = 0;
    for (size_t i = 1; i <= n; ++i) cs.c[i] = cs.c[i - 1] + pa.a[i];
    return cs;
}

// nearest j < i with c[j] >= c[i], else 0; single monotone-stack pass
inline std::vector<uint32_t> left_vis_all(const CumulativeSums& cs) {
    const auto& c = cs.c;
    size_t n = cs.internal_size();
    std::vector<uint32_t> leftvis(n + 1, 0);
    std::vector<uint32_t> stack;
    stack.reserve(64);
    for (uint32_t i = 1; i <= n; ++i) {
        while (!stack.empty() && c[stack.back()] < c[i]) stack.pop_back();
        leftvis[i] = stack.empty() ? 0 : stack.back();
        stack.push_back(i);
    }
    return leftvis;
}

// the range-minimum encoding spans c[0..n] as elements 1..n+1
inline RmqEncoding cumulative_min_encoding(const CumulativeSums& cs) {
    return RmqEncoding(std::span<const int64_t>(cs.c.data(), cs.c.size()), RmqMode::kMin);
}

// p[i]: rightmost minimum of c over [leftvis[i]+1, i]
inline std::vector<uint32_t> left_min_all(const CumulativeSums& cs,
                                          const std::vector<uint32_t>& leftvis,
                                          const RmqEncoding& rmin_c) {
    size_t n = cs.internal_size();
    std::vector<uint32_t> p(n + 1, 0);
    for (size_t i = 1; i <= n; ++i)
        p[i] = uint32_t(rmin_c.query(leftvis[i] + 2, i + 1) - 1);
    return p;
}

// d[i] = sum of the candidate ending at i, zero for non-candidates
inline std::vector<int64_t> candidate_scores(const CumulativeSums& cs,
                                             const std::vector<uint32_t>& p) {
    size_t n = cs.internal_size();
    std::vector<int64_t> d(n + 1, 0);
    for (size_t i = 1; i <= n; ++i) d[i] = p[i] < i ? cs.c[i] - cs.c[p[i]] : 0;
    return d;
}

struct BuildStats {
    uint64_t staircase_ops = 0;  // pushes + pops + deletes across all stacks
};

/*
 * Left siblings in one left-to-right pass.
 *
 * The falling staircase of c partitions [1, i] into ranges; each range
 * carries its rising staircase as a linked chain of surviving
 * positions (position-decreasing from the head). A second, strictly
 * falling staircase over the range spans locates the rightmost earlier
 * range whose span beats d[i]; scanning that chain from its head and
 * deleting every rejected element keeps the whole pass amortized
 * linear. Rejections are permanent: a rejected element always has a
 * later, smaller element in every future merged range.
 */
inline std::vector<uint32_t> q_array(const CumulativeSums& cs, const std::vector<uint32_t>& p,
                                     const std::vector<int64_t>& d, BuildStats* stats = nullptr) {
    const auto& c = cs.c;
    size_t n = cs.internal_size();
    std::vector<uint32_t> q(n + 1, 0);

    struct ChainNode {
        uint32_t pos;
        int32_t next;
    };
    struct Range {
        uint32_t end;
        int32_t head, tail;
        int64_t c_min;
    };
    struct SpanEntry {
        int64_t span;
        uint32_t f_height;  // 1-based slot in the falling staircase
    };
    std::vector<ChainNode> nodes;
    nodes.reserve(n);
    std::vector<Range> falling;
    std::vector<SpanEntry> spans;
    uint64_t ops = 0;

    for (uint32_t i = 1; i <= n; ++i) {
        int32_t node = int32_t(nodes.size());
        nodes.push_back({i, -1});
        ++ops;
        int32_t tail = node;
        int64_t cmin = c[i];
        while (!falling.empty() && c[falling.back().end] < c[i]) {
            const Range& r = falling.back();
            nodes[size_t(tail)].next = r.head;
            tail = r.tail;
            cmin = std::min(cmin, r.c_min);
            falling.pop_back();
            ++ops;
        }
        while (!spans.empty() && spans.back().f_height > falling.size()) {
            spans.pop_back();
            ++ops;
        }
        falling.push_back({i, node, tail, cmin});
        ++ops;
        int64_t span = c[i] - cmin;
        while (!spans.empty() && spans.back().span <= span) {
            spans.pop_back();
            ++ops;
        }
        spans.push_back({span, uint32_t(falling.size())});
        ++ops;
        if (d[i] > 0 && spans.size() >= 2) {
            assert(span == d[i]);
            const SpanEntry& x = spans[spans.size() - 2];
            Range& r = falling[x.f_height - 1];
            // the true top of the staircase is the range end, fixed at
            // merge time, not the surviving chain head
            int64_t thr = c[r.end] - d[i];
            while (c[nodes[size_t(r.head)].pos] >= thr) {
                r.head = nodes[size_t(r.head)].next;
                ++ops;
            }
            q[i] = nodes[size_t(r.head)].pos;
        }
    }
    if (stats) stats->staircase_ops += ops;
    return q;
}

struct GraphEdges {
    std::vector<Edge> g, h;
};

namespace detail {

// counting sort by right endpoint, then stable by left endpoint
inline void sort_adjacency(size_t n, std::vector<Edge>& edges) {
    size_t m = edges.size();
    std::vector<Edge> tmp(m);
    std::vector<uint32_t> cnt(n + 2, 0);
    for (const Edge& e : edges) ++cnt[e.second + 1];
    for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
    for (const Edge& e : edges) tmp[cnt[e.second]++] = e;
    cnt.assign(n + 2, 0);
    for (const Edge& e : edges) ++cnt[e.first + 1];
    for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
    for (const Edge& e : tmp) edges[cnt[e.first]++] = e;
}

}  // namespace detail

// candidate edges (p[x], x) and left-sibling edges (q[x], p[x]) in
// adjacency-list order; both lists are checked for the nesting property
inline GraphEdges emit_graphs(const std::vector<uint32_t>& p, const std::vector<uint32_t>& q) {
    size_t n = p.size() - 1;
    GraphEdges ge;
    for (uint32_t x = 1; x <= n; ++x) {
        if (p[x] < x) ge.g.emplace_back(p[x], x);
        if (q[x] != 0) ge.h.emplace_back(q[x], p[x]);
    }
    detail::sort_adjacency(n, ge.g);
    detail::sort_adjacency(n, ge.h);
    OnePageGraph::validate(n, ge.g);
    OnePageGraph::validate(n, ge.h);
    return ge;
}

}  // namespace sgsm
