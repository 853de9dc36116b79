#pragma once

#include <deque>
#include <map>

#include "index.hpp"

namespace sgsm {

struct TreeNode {
    int64_t weight;      // score gain of applying this node's transformation
    uint32_t lo, hi;     // answer segment, internal absolute coordinates
    int32_t parent;      // -1 at the root
    uint32_t depth;
    uint8_t sign;        // parity of negations: 0 adds the segment, 1 removes it
};

/*
 * Transformation tree over the internal array (sentinel included).
 *
 * The root is the maximum-sum segment of the whole array; left/right
 * children recurse outside it and the middle child recurses over the
 * negated segment, so selecting a node either adds a fresh interval
 * or splits an existing one. Weights satisfy the max-heap property,
 * so the maximum k-cover is the set of k heaviest nodes (ties broken
 * towards the root, i.e. by construction order, which is breadth
 * first).
 */
class TransformationTree {
public:
    TransformationTree() = default;

    static TransformationTree build(std::span<const int64_t> user_values) {
        TransformationTree tree;
        tree.n_user_ = user_values.size();
        for (int64_t v : user_values)
            if (v == INT64_MIN) throw std::overflow_error("kcover: value negation overflows");
        std::vector<int64_t> negated(user_values.size());
        for (size_t i = 0; i < user_values.size(); ++i) negated[i] = -user_values[i];

        RMaxSSQIndex pos = RMaxSSQIndex::build(user_values);
        RMaxSSQIndex neg =
            RMaxSSQIndex::build(std::span<const int64_t>(negated.data(), negated.size()));
        PreparedArray pa = prepare(user_values);
        size_t n = pa.internal_size();
        std::vector<int64_t> c(n + 1, 0);
        for (size_t i = 1; i <= n; ++i) c[i] = c[i - 1] + pa.a[i];
        // rightmost zero at or before each position; zeros are zero-sum
        // segments on both signs
        std::vector<uint32_t> prev_zero(n + 1, 0);
        for (size_t i = 1; i <= n; ++i) prev_zero[i] = pa.a[i] == 0 ? uint32_t(i) : prev_zero[i - 1];

        struct Task {
            uint32_t lo, hi;
            int32_t parent;
            uint32_t depth;
            uint8_t sign;
        };
        std::deque<Task> queue;
        queue.push_back({1, uint32_t(n), -1, 0, 0});
        while (!queue.empty()) {
            Task t = queue.front();
            queue.pop_front();
            if (t.lo > t.hi) continue;
            SegmentAnswer ans =
                (t.sign ? neg : pos).query_internal(t.lo, t.hi);
            uint32_t lo, hi;
            int64_t weight;
            if (ans.empty) {
                // zero-sum segments only enter below a real node; an
                // array with no positive segment has an empty tree
                uint32_t z = t.parent >= 0 ? prev_zero[t.hi] : 0;
                if (z < t.lo) continue;
                lo = hi = z;
                weight = 0;
            } else {
                lo = uint32_t(ans.lo);
                hi = uint32_t(ans.hi);
                int64_t s = c[hi] - c[lo - 1];
                weight = t.sign ? -s : s;
            }
            int32_t id = int32_t(tree.nodes_.size());
            tree.nodes_.push_back({weight, lo, hi, t.parent, t.depth, t.sign});
            queue.push_back({t.lo, lo - 1, id, t.depth + 1, t.sign});
            if (hi > lo) queue.push_back({lo, hi, id, t.depth + 1, uint8_t(t.sign ^ 1)});
            queue.push_back({hi + 1, t.hi, id, t.depth + 1, t.sign});
        }
        return tree;
    }

    size_t node_count() const { return nodes_.size(); }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    size_t user_size() const { return n_user_; }

    // breadth-first construction makes smaller ids closer to the root,
    // so the selection order is weight descending, id ascending
    bool comes_before(uint32_t a, uint32_t b) const {
        if (nodes_[a].weight != nodes_[b].weight) return nodes_[a].weight > nodes_[b].weight;
        return a < b;
    }

private:
    std::vector<TreeNode> nodes_;
    size_t n_user_ = 0;
};

struct KCoverAnswer {
    size_t k_requested = 0;
    size_t k_achieved = 0;
    int64_t score = 0;
    std::vector<std::pair<size_t, size_t>> intervals;  // user 1-based, disjoint, by lo
};

namespace detail {

// deterministic median-of-medians selection: after the call the first
// k slots of [lo, hi) hold the k elements that come first under cmp
template <class Cmp>
void mom_select(std::vector<uint32_t>& a, size_t lo, size_t hi, size_t k, const Cmp& cmp,
                uint64_t& touched) {
    while (hi - lo > 1) {
        if (k <= lo || k >= hi) return;
        size_t len = hi - lo;
        if (len <= 20) {
            for (size_t i = lo + 1; i < hi; ++i)
                for (size_t j = i; j > lo && cmp(a[j], a[j - 1]); --j) {
                    std::swap(a[j], a[j - 1]);
                    ++touched;
                }
            return;
        }
        size_t g = 0;
        for (size_t i = lo; i < hi; i += 5) {
            size_t e = std::min(i + 5, hi);
            for (size_t x = i + 1; x < e; ++x)
                for (size_t y = x; y > i && cmp(a[y], a[y - 1]); --y) {
                    std::swap(a[y], a[y - 1]);
                    ++touched;
                }
            std::swap(a[lo + g], a[i + (e - i) / 2]);
            ++g;
        }
        mom_select(a, lo, lo + g, lo + g / 2, cmp, touched);
        uint32_t pivot = a[lo + g / 2];
        // three-way partition around the pivot
        size_t lt = lo, it = lo, gt = hi;
        while (it < gt) {
            ++touched;
            if (cmp(a[it], pivot)) std::swap(a[lt++], a[it++]);
            else if (cmp(pivot, a[it])) std::swap(a[it], a[--gt]);
            else ++it;
        }
        if (k < lt) hi = lt;
        else if (k >= gt) lo = gt;
        else return;
    }
}

template <class Cmp>
void top_k(std::vector<uint32_t>& a, size_t k, const Cmp& cmp, uint64_t& touched) {
    if (k == 0 || k >= a.size()) return;
    mom_select(a, 0, a.size(), k, cmp, touched);
}

}  // namespace detail

namespace detail {

inline KCoverAnswer assemble_cover(const TransformationTree& tree, size_t k_requested,
                                   std::vector<uint32_t> selected, uint64_t& touched) {
    std::sort(selected.begin(), selected.end());
    touched += selected.size();
    const auto& nodes = tree.nodes();
    KCoverAnswer ans;
    ans.k_requested = k_requested;
    std::map<size_t, size_t> by_lo;
    int64_t score = 0;
    for (uint32_t id : selected) {
        const TreeNode& nd = nodes[id];
        score += nd.weight;
        ++touched;
        if (nd.sign == 0) {
            by_lo.emplace(nd.lo, nd.hi);
        } else {
            auto it = by_lo.upper_bound(nd.lo);
            assert(it != by_lo.begin());
            --it;
            size_t a = it->first, b = it->second;
            assert(a <= nd.lo && nd.hi <= b);
            by_lo.erase(it);
            // zero-weight removals at an interval edge can leave an
            // empty side (or consume a zero-sum interval entirely)
            if (a < nd.lo) by_lo.emplace(a, nd.lo - 1);
            if (nd.hi < b) by_lo.emplace(nd.hi + 1, b);
        }
    }
    ans.score = score;
    for (auto [lo, hi] : by_lo) {
        if (lo == 1 && hi == 1) continue;  // the sentinel's own zero segment
        ans.intervals.emplace_back(lo - 1, hi - 1);
    }
    ans.k_achieved = ans.intervals.size();
    return ans;
}

}  // namespace detail

// maximum-score cover with at most k disjoint segments
inline KCoverAnswer max_kcover(const TransformationTree& tree, size_t k,
                               uint64_t* touched_out = nullptr) {
    if (k < 1) throw std::out_of_range("max_kcover: k must be positive");
    size_t cnt = std::min(k, tree.node_count());
    std::vector<uint32_t> ids(tree.node_count());
    for (uint32_t i = 0; i < ids.size(); ++i) ids[i] = i;
    uint64_t touched = ids.size();
    detail::top_k(ids, cnt, [&](uint32_t a, uint32_t b) { return tree.comes_before(a, b); },
                  touched);
    ids.resize(cnt);
    auto ans = detail::assemble_cover(tree, k, std::move(ids), touched);
    if (touched_out) *touched_out += touched;
    return ans;
}

/*
 * Nested top-2^i node sets. A single permutation is kept where every
 * prefix of size 2^i holds the 2^i best nodes, built by repeated
 * selection from the next level up (geometric total work). A query
 * for k selects within the prefix of size 2^(i+1) where 2^i <= k, so
 * it touches O(k) nodes.
 */
class MultiKIndex {
public:
    MultiKIndex() = default;

    static MultiKIndex preprocess(const TransformationTree& tree) {
        MultiKIndex mk;
        size_t n = tree.node_count();
        mk.ranking_.resize(n);
        for (uint32_t i = 0; i < n; ++i) mk.ranking_[i] = i;
        uint64_t touched = 0;
        auto cmp = [&](uint32_t a, uint32_t b) { return tree.comes_before(a, b); };
        if (n > 1) {
            size_t level = size_t(1) << (std::bit_width(n - 1));  // smallest power of two >= n
            for (level /= 2; level >= 1; level /= 2) {
                std::vector<uint32_t> prefix(mk.ranking_.begin(),
                                             mk.ranking_.begin() + std::min(2 * level, n));
                detail::top_k(prefix, level, cmp, touched);
                std::copy(prefix.begin(), prefix.end(), mk.ranking_.begin());
                if (level == 1) break;
            }
        }
        return mk;
    }

    size_t level_count() const {
        return ranking_.empty() ? 0 : size_t(std::bit_width(ranking_.size() - 1)) + 1;
    }

    // ids of the top-min(2^i, n) nodes
    std::span<const uint32_t> level(size_t i) const {
        size_t len = std::min(size_t(1) << i, ranking_.size());
        return std::span<const uint32_t>(ranking_.data(), len);
    }

    KCoverAnswer query_k(const TransformationTree& tree, size_t k,
                         uint64_t* touched_out = nullptr) const {
        if (k < 1) throw std::out_of_range("query_k: k must be positive");
        size_t cnt = std::min(k, tree.node_count());
        size_t pool = cnt == 0 ? 0 : std::min(size_t(2) << (std::bit_width(cnt) - 1),
                                              tree.node_count());
        std::vector<uint32_t> ids(ranking_.begin(), ranking_.begin() + pool);
        uint64_t touched = pool;
        detail::top_k(ids, cnt, [&](uint32_t a, uint32_t b) { return tree.comes_before(a, b); },
                      touched);
        ids.resize(cnt);
        auto ans = detail::assemble_cover(tree, k, std::move(ids), touched);
        if (touched_out) *touched_out += touched;
        return ans;
    }

private:
    std::vector<uint32_t> ranking_;
};

}  // namespace sgsm
