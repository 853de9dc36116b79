#pragma once

#include <span>

#include "balanced_parens.hpp"

namespace sgsm {

enum class RmqMode : uint8_t { kMax = 0, kMin = 1 };

/*
 * 2n-bit range maximum / minimum encoding.
 *
 * Stores only the shape of the source array's Cartesian tree, written
 * as balanced parentheses in inorder, so answers depend on the
 * relative order of values and never on the values themselves. Ties
 * resolve to the rightmost index: construction pops stack entries
 * that compare <= (max mode) or >= (min mode) against the incoming
 * value, and the query takes the rightmost minimal-excess position.
 */
class RmqEncoding {
public:
    RmqEncoding() = default;

    RmqEncoding(std::span<const int64_t> values, RmqMode mode) : n_(values.size()), mode_(mode) {
        if (n_ == 0) throw std::invalid_argument("rmq: empty input");
        BitBuilder bb(2 * n_);
        std::vector<int64_t> stack;
        stack.reserve(64);
        for (int64_t v : values) {
            if (mode == RmqMode::kMin) {
                while (!stack.empty() && stack.back() >= v) {
                    stack.pop_back();
                    bb.push_back(false);
                }
            } else {
                while (!stack.empty() && stack.back() <= v) {
                    stack.pop_back();
                    bb.push_back(false);
                }
            }
            bb.push_back(true);
            stack.push_back(v);
        }
        while (!stack.empty()) {
            stack.pop_back();
            bb.push_back(false);
        }
        bp_ = BalancedParens(BitVector(std::move(bb)));
    }

    RmqEncoding(BalancedParens shape, RmqMode mode)
        : bp_(std::move(shape)), n_(bp_.size() / 2), mode_(mode) {}

    size_t size() const { return n_; }
    RmqMode mode() const { return mode_; }

    // index (1-based) of the rightmost extremum in [i, j]
    size_t query(size_t i, size_t j) const {
        if (i < 1 || i > j || j > n_) throw std::out_of_range("rmq query: bad range");
        if (i == j) return i;
        size_t l = bp_.bits().select1(i);
        size_t r = bp_.bits().select1(j);
        // i answers iff nothing in (l, r] drops below i's own excess;
        // otherwise the rightmost minimum is the close preceding the
        // answer's open
        size_t m = bp_.min_excess_pos_rightmost(l + 1, r);
        if (bp_.excess(m) >= bp_.excess(l)) return i;
        return bp_.bits().rank1(m) + 1;
    }

    const BalancedParens& shape() const { return bp_; }
    size_t shape_bits() const { return bp_.size(); }
    size_t size_in_bits() const { return bp_.size() + bp_.aux_bits(); }

private:
    BalancedParens bp_;
    size_t n_ = 0;
    RmqMode mode_ = RmqMode::kMax;
};

}  // namespace sgsm
