#pragma once

#include <span>
#include <string>
#include <utility>

#include "balanced_parens.hpp"
#include "pattern_marks.hpp"

namespace sgsm {

using Edge = std::pair<uint32_t, uint32_t>;

struct NestingViolation : std::invalid_argument {
    Edge first_edge, second_edge;

    NestingViolation(Edge a, Edge b)
        : std::invalid_argument("nesting violation between edges (" + std::to_string(a.first) +
                                "," + std::to_string(a.second) + ") and (" +
                                std::to_string(b.first) + "," + std::to_string(b.second) + ")"),
          first_edge(a),
          second_edge(b) {}
};

/*
 * Succinct one-page (nested) multigraph.
 *
 * Every vertex u contributes a pair "()" followed by S_u = )^x (^y,
 * where x counts edges from smaller labels and y edges to larger
 * labels. Matching parentheses pair up the two ends of each edge.
 * Vertex pairs and the first opening parenthesis of each S_u are
 * located through pattern-derived rank/select, so the graph costs
 * 2(n+m) raw bits plus counting tables.
 */
class OnePageGraph {
public:
    OnePageGraph() = default;

    OnePageGraph(size_t n, std::span<const Edge> edges) {
        std::vector<Edge> norm = normalize(n, edges);
        std::vector<uint32_t> push_order = validate_and_order(n, norm);
        BitBuilder bb(2 * (n + norm.size()));
        std::vector<uint32_t> in_deg(n + 1, 0);
        for (const Edge& e : norm) ++in_deg[e.second];
        std::vector<Edge> stack;
        size_t next = 0;
        for (uint32_t u = 1; u <= n; ++u) {
            bb.push_back(true);
            bb.push_back(false);
            for (uint32_t c = in_deg[u]; c-- > 0;) {
                assert(stack.back().second == u);
                stack.pop_back();
                bb.push_back(false);
            }
            while (next < push_order.size() && norm[push_order[next]].first == u) {
                stack.push_back(norm[push_order[next]]);
                bb.push_back(true);
                ++next;
            }
        }
        n_ = n;
        m_ = norm.size();
        bp_ = BalancedParens(BitVector(std::move(bb)));
        build_marks();
    }

    // rebuilds the navigation structures from a serialized shape
    explicit OnePageGraph(BalancedParens bp) : bp_(std::move(bp)) {
        build_marks();
        n_ = w1_.count();
        m_ = (bp_.size() - 2 * n_) / 2;
    }

    // throws NestingViolation / invalid_argument without building anything
    static void validate(size_t n, std::span<const Edge> edges) {
        std::vector<Edge> norm = normalize(n, edges);
        validate_and_order(n, norm);
    }

    size_t vertex_count() const { return n_; }
    size_t edge_count() const { return m_; }

    // the edge-parenthesis run of one vertex: closes in
    // [begin, first_open), opens in [first_open, end)
    struct VertexSpan {
        size_t begin, end, first_open;

        size_t degree() const { return end - begin; }
        size_t in_degree() const { return first_open - begin; }
        size_t out_degree() const { return end - first_open; }
    };

    VertexSpan span(size_t u) const {
        check_vertex(u);
        size_t b = su_begin(u), e = su_end(u);
        if (b == e) return {b, e, b};
        size_t before = w2_.rank(bp_.bits(), b);
        if (w2_.rank(bp_.bits(), e) == before) return {b, e, bp_.is_open(b) ? b : e};
        return {b, e, w2_.select(bp_.bits(), before + 1)};
    }

    size_t degree(size_t u) const {
        check_vertex(u);
        return su_end(u) - su_begin(u);
    }

    // edges from smaller-labelled vertices into u
    size_t in_degree(size_t u) const { return span(u).in_degree(); }

    // i-th neighbour of u in non-decreasing label order, 1-based i
    size_t neighbour(size_t u, size_t i) const { return neighbour(span(u), i); }

    size_t neighbour(const VertexSpan& sp, size_t i) const {
        if (i < 1 || i > sp.degree()) throw std::out_of_range("neighbour: rank out of range");
        size_t x = sp.in_degree();
        size_t pos = i <= x ? sp.begin + (x - i) : sp.begin + sp.degree() - (i - x);
        return owner(bp_.find_match(pos));
    }

    // Label of the single smaller neighbour, or 0 when u has no edge
    // to a smaller label. If the run is empty, the position after the
    // pair holds the next pair's '(' (or is past the end), so a close
    // there always belongs to S_u.
    size_t sole_smaller_neighbour(size_t u) const {
        check_vertex(u);
        size_t b = su_begin(u);
        if (b >= bp_.size() || bp_.is_open(b)) return 0;
        return owner(bp_.find_open(b));
    }

    // smallest i with neighbour(u, i) == v
    size_t order(size_t u, size_t v) const {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("order: self-loops are not represented");
        size_t b = su_begin(u);
        size_t x = in_degree(u), y = degree(u) - x;
        if (v < u) {
            // closes carry sources in non-increasing order
            size_t lo = 1, hi = x, last = 0;
            while (lo <= hi) {
                size_t mid = lo + (hi - lo) / 2;
                if (owner(bp_.find_open(b + mid - 1)) >= v) { last = mid; lo = mid + 1; }
                else hi = mid - 1;
            }
            if (last == 0 || owner(bp_.find_open(b + last - 1)) != v)
                throw std::out_of_range("order: no such edge");
            return x - last + 1;
        }
        // opens carry targets in non-increasing order
        size_t lo = 1, hi = y, last = 0;
        while (lo <= hi) {
            size_t mid = lo + (hi - lo) / 2;
            if (owner(bp_.find_close(b + x + mid - 1)) >= v) { last = mid; lo = mid + 1; }
            else hi = mid - 1;
        }
        if (last == 0 || owner(bp_.find_close(b + x + last - 1)) != v)
            throw std::out_of_range("order: no such edge");
        return x + (y - last + 1);
    }

    // rank among u's edges of the edge represented by the first close
    // of S_v. Constant time; meaningful when that close's open lies in
    // S_u, e.g. when v has exactly one edge to a smaller label.
    size_t order_by_first_close(size_t u, size_t v) const {
        size_t pos = su_begin(v);
        assert(!bp_.is_open(pos));
        size_t o = bp_.find_open(pos);
        assert(owner(o) == u);
        VertexSpan sp = span(u);
        size_t t = o - sp.first_open + 1;
        return sp.in_degree() + (sp.out_degree() - t + 1);
    }

    // order_by_first_close for a vertex u that has no edge to a
    // smaller label: the run S_u is all opens, so the rank follows
    // from the match position and the run's end alone
    size_t order_by_first_close_out_only(size_t u, size_t v) const {
        size_t pos = su_begin(v);
        assert(!bp_.is_open(pos));
        size_t o = bp_.find_open(pos);
        assert(owner(o) == u && in_degree(u) == 0);
        // the run's end is the next vertex pair after the matched open
        return w1_.next_mark(bp_.bits(), o + 1) - o;
    }

    // i-th close of S_u and the label across its match, or 0 when S_u
    // holds fewer than i closes; ownership of the probed position
    // substitutes for the run's end
    size_t close_neighbour(size_t u, size_t i) const {
        size_t b = su_begin(u);
        size_t q = b + i - 1;
        if (q >= bp_.size() || bp_.is_open(q) || owner(q) != u) return 0;
        return owner(bp_.find_open(q));
    }

    std::vector<Edge> decode_edges() const {
        std::vector<Edge> out;
        out.reserve(m_);
        for (size_t u = 1; u <= n_; ++u) {
            size_t b = su_begin(u), e = su_end(u);
            for (size_t p = b; p < e && !bp_.is_open(p); ++p)
                out.emplace_back(uint32_t(owner(bp_.find_open(p))), uint32_t(u));
        }
        return out;
    }

    const BalancedParens& parens() const { return bp_; }

    size_t size_in_bits() const {
        return bp_.size() + bp_.aux_bits() + w1_.aux_bits() + w2_.aux_bits();
    }

private:
    static std::vector<Edge> normalize(size_t n, std::span<const Edge> edges) {
        std::vector<Edge> norm;
        norm.reserve(edges.size());
        for (const Edge& e : edges) {
            if (e.first < 1 || e.second < 1 || e.first > n || e.second > n)
                throw std::invalid_argument("graph edge endpoint out of range");
            if (e.first == e.second) throw std::invalid_argument("graph edge is a self-loop");
            norm.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
        }
        return norm;
    }

    // counting sort by target then stable by source, reversed per source
    // so pushing in order puts the farthest target deepest; simulates the
    // paren emission to reject crossing edges
    static std::vector<uint32_t> validate_and_order(size_t n, const std::vector<Edge>& edges) {
        size_t m = edges.size();
        std::vector<uint32_t> by_target(m), out(m);
        std::vector<uint32_t> cnt(n + 2, 0);
        for (const Edge& e : edges) ++cnt[e.second + 1];
        for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
        for (uint32_t i = 0; i < m; ++i) by_target[cnt[edges[i].second]++] = i;
        cnt.assign(n + 2, 0);
        for (const Edge& e : edges) ++cnt[e.first + 1];
        for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
        for (uint32_t idx : by_target) out[cnt[edges[idx].first]++] = idx;
        for (size_t i = 0; i < m;) {
            size_t j = i;
            while (j < m && edges[out[j]].first == edges[out[i]].first) ++j;
            std::reverse(out.begin() + i, out.begin() + j);
            i = j;
        }
        std::vector<uint32_t> in_deg(n + 1, 0);
        for (const Edge& e : edges) ++in_deg[e.second];
        std::vector<Edge> stack;
        size_t next = 0;
        for (uint32_t u = 1; u <= n; ++u) {
            uint32_t closes = 0;
            while (!stack.empty() && stack.back().second == u) {
                stack.pop_back();
                ++closes;
            }
            if (closes != in_deg[u]) {
                // error path only: locate the buried edge
                for (const Edge& e : stack)
                    if (e.second == u) throw NestingViolation(stack.back(), e);
            }
            while (next < m && edges[out[next]].first == u) stack.push_back(edges[out[next++]]);
        }
        return out;
    }

    void build_marks() {
        w1_ = PatternRank(bp_.bits(), Pattern::kVertexPair);
        w2_ = PatternRank(bp_.bits(), Pattern::kFirstOpen);
    }

    void check_vertex(size_t u) const {
        if (u < 1 || u > n_) throw std::out_of_range("graph: vertex out of range");
    }

    size_t pair_pos(size_t u) const { return w1_.select(bp_.bits(), u); }
    size_t su_begin(size_t u) const { return pair_pos(u) + 2; }
    size_t su_end(size_t u) const { return u < n_ ? pair_pos(u + 1) : bp_.size(); }
    size_t owner(size_t pos) const { return w1_.rank(bp_.bits(), pos + 1); }

    BalancedParens bp_;
    PatternRank w1_, w2_;
    size_t n_ = 0, m_ = 0;
};

}  // namespace sgsm
