#pragma once

#include <algorithm>
#include <limits>
#include <utility>

#include "bit_vector.hpp"

namespace sgsm {

namespace detail {

// Byte-granularity excess summaries; bit 0 of a byte is the earliest position.
struct ByteExcess {
    int8_t delta[256];
    int8_t min_prefix[256];    // min excess over the byte, relative to excess before it
    uint8_t min_rpos[256];     // rightmost in-byte offset attaining min_prefix
    int8_t max_suffix[256];    // max over t in [0,8] of the excess delta of bits [t,7]

    ByteExcess() {
        for (int b = 0; b < 256; ++b) {
            int e = 0, mn = 127, rp = 0;
            for (int k = 0; k < 8; ++k) {
                e += (b >> k & 1) ? 1 : -1;
                if (e <= mn) { mn = e; rp = k; }
            }
            delta[b] = int8_t(e);
            min_prefix[b] = int8_t(mn);
            min_rpos[b] = uint8_t(rp);
            int suf = 0, mx = 0;
            for (int k = 7; k >= 0; --k) {
                suf += (b >> k & 1) ? 1 : -1;
                mx = std::max(mx, suf);
            }
            max_suffix[b] = int8_t(mx);
        }
    }
};

inline const ByteExcess& byte_excess() {
    static const ByteExcess t;
    return t;
}

}  // namespace detail

/*
 * Balanced parenthesis sequence over a BitVector (1 = open).
 *
 * Supports matching-parenthesis navigation and range queries on the
 * excess profile. Each 2^9-bit block carries its start excess and
 * internal minimum (superblock-relative, one 32-bit record per
 * block), superblocks carry absolute values, and a sparse table over
 * superblock minima serves long-range searches, so every operation is
 * in-block byte scans plus a galloping superblock search.
 */
class BalancedParens {
public:
    static constexpr size_t kBlockBits = BitVector::kBlockBits;
    static constexpr size_t kSuperBits = 32768;
    static constexpr size_t kBlocksPerSuper = kSuperBits / kBlockBits;
    static constexpr size_t npos = ~size_t(0);

    BalancedParens() = default;

    explicit BalancedParens(BitVector bv) : bv_(std::move(bv)) { build_aux(); }

    size_t size() const { return bv_.size(); }
    const BitVector& bits() const { return bv_; }
    bool is_open(size_t p) const { return bv_.bit(p); }

    // excess after reading positions [0, p]
    int64_t excess(size_t p) const { return excess_before(p + 1); }

    // excess of the strict prefix [0, p)
    int64_t excess_before(size_t p) const {
        if (p == 0) return 0;
        size_t bl = p / kBlockBits;
        if (bl >= block_.size()) bl = block_.size() - 1;  // p at the very end
        const auto& lut = detail::byte_excess();
        int64_t e = block_start_excess(bl);
        size_t q = bl * kBlockBits;
        while (q + 8 <= p) {
            e += lut.delta[byte_at(q)];
            q += 8;
        }
        while (q < p) {
            e += bv_.bit(q) ? 1 : -1;
            ++q;
        }
        return e;
    }

    size_t find_close(size_t p) const {
        assert(is_open(p));
        int64_t target = excess_before(p);
        size_t q = fwd_le(p + 1, target);
        assert(q != npos);
        return q;
    }

    size_t find_open(size_t p) const {
        assert(!is_open(p));
        if (p == 0) return 0;  // only reachable on unbalanced input, guarded at build
        int64_t target = excess_before(p) - 1;
        ptrdiff_t r = bwd_le(p - 1, target);
        return size_t(r + 1);
    }

    size_t find_match(size_t p) const { return is_open(p) ? find_close(p) : find_open(p); }

    // Rightmost position in [l, r] whose excess is minimal over the
    // range. First pass establishes the minimum from the partial-block
    // scans and the block/superblock tables alone; the second pass
    // resolves the rightmost attaining position, scanning at most one
    // further block.
    size_t min_excess_pos_rightmost(size_t l, size_t r) const {
        assert(l <= r && r < size());
        size_t bl = l / kBlockBits, br = r / kBlockBits;
        if (bl == br) return scan_min_rightmost(bl, l, r, block_start_excess(bl)).second;
        size_t sbl = l / kSuperBits, sbr = r / kSuperBits;
        size_t tail_stop = std::max(bl + 1, sbr * kBlocksPerSuper);  // [tail_stop, br)
        size_t head_stop = std::min({(sbl + 1) * kBlocksPerSuper, block_.size(), br});  // (bl, head_stop)
        int64_t best = std::numeric_limits<int64_t>::max();
        {
            int64_t base = super_start_[sbr];
            for (size_t b = tail_stop; b < br; ++b)
                best = std::min<int64_t>(best, base + block_[b].start_rel + block_[b].min_rel);
        }
        if (sbl < sbr) {
            int64_t base = super_start_[sbl];
            for (size_t b = bl + 1; b < head_stop; ++b)
                best = std::min<int64_t>(best, base + block_[b].start_rel + block_[b].min_rel);
        }
        if (sbl + 1 < sbr) best = std::min(best, super_rmq(sbl + 1, sbr - 1).first);

        // the partial blocks only need scanning when their block-wide
        // minimum could reach the table minimum; ties prefer the tail
        int64_t tail_min = std::numeric_limits<int64_t>::max();
        size_t tail_pos = 0;
        bool tail_scanned = false;
        if (block_start_excess(br) + block_[br].min_rel <= best) {
            std::tie(tail_min, tail_pos) =
                scan_min_rightmost(br, br * kBlockBits, r, block_start_excess(br));
            tail_scanned = true;
            best = std::min(best, tail_min);
        }
        int64_t head_min = std::numeric_limits<int64_t>::max();
        size_t head_pos = 0;
        if (block_start_excess(bl) + block_[bl].min_rel < best) {
            std::tie(head_min, head_pos) =
                scan_min_rightmost(bl, l, bl * kBlockBits + kBlockBits - 1, block_start_excess(bl));
            best = std::min(best, head_min);
        }

        if (tail_scanned && tail_min == best) return tail_pos;
        {
            int64_t base = super_start_[sbr];
            for (size_t b = br; b-- > tail_stop;)
                if (base + block_[b].start_rel + block_[b].min_rel == best)
                    return scan_min_rightmost(b, b * kBlockBits, b * kBlockBits + kBlockBits - 1,
                                              base + block_[b].start_rel)
                        .second;
        }
        if (sbl + 1 < sbr) {
            auto [mn, sb] = super_rmq(sbl + 1, sbr - 1);
            if (mn == best) {
                int64_t base = super_start_[sb];
                size_t first_b = sb * kBlocksPerSuper;
                for (size_t b = first_b + kBlocksPerSuper; b-- > first_b;)
                    if (base + block_[b].start_rel + block_[b].min_rel == best)
                        return scan_min_rightmost(b, b * kBlockBits,
                                                  b * kBlockBits + kBlockBits - 1,
                                                  base + block_[b].start_rel)
                            .second;
            }
        }
        if (sbl < sbr) {
            int64_t base = super_start_[sbl];
            for (size_t b = head_stop; b-- > bl + 1;)
                if (base + block_[b].start_rel + block_[b].min_rel == best)
                    return scan_min_rightmost(b, b * kBlockBits, b * kBlockBits + kBlockBits - 1,
                                              base + block_[b].start_rel)
                        .second;
        }
        assert(head_min == best);
        return head_pos;
    }

    size_t aux_bits() const {
        size_t sparse = 0;
        for (const auto& lvl : sparse_) sparse += 64 * lvl.size();
        return bv_.aux_bits() + 32 * block_.size() + (32 + 64) * super_min_.size() + sparse;
    }

private:
    struct BlockRec {
        int16_t start_rel;  // block-start excess, superblock-relative
        int16_t min_rel;    // min excess inside the block, relative to its start
    };

    uint8_t byte_at(size_t p) const { return uint8_t(bv_.words()[p >> 6] >> (p & 63)); }

    int64_t block_start_excess(size_t b) const {
        return super_start_[b / kBlocksPerSuper] + block_[b].start_rel;
    }

    // rightmost-min excess scan over [from, to] inside block bl;
    // base_e is the excess before the block start
    std::pair<int64_t, size_t> scan_min_rightmost(size_t bl, size_t from, size_t to,
                                                  int64_t base_e) const {
        const auto& lut = detail::byte_excess();
        to = std::min(to, size() - 1);
        int64_t e = base_e;
        size_t p = bl * kBlockBits;
        while (p + 8 <= from) {
            e += lut.delta[byte_at(p)];
            p += 8;
        }
        while (p < from) {
            e += bv_.bit(p) ? 1 : -1;
            ++p;
        }
        int64_t best = std::numeric_limits<int64_t>::max();
        size_t pos = from;
        while (p <= to) {
            if ((p & 7) == 0 && p + 7 <= to) {
                uint8_t byte = byte_at(p);
                if (e + lut.min_prefix[byte] <= best) {
                    best = e + lut.min_prefix[byte];
                    pos = p + lut.min_rpos[byte];
                }
                e += lut.delta[byte];
                p += 8;
            } else {
                e += bv_.bit(p) ? 1 : -1;
                if (e <= best) { best = e; pos = p; }
                ++p;
            }
        }
        return {best, pos};
    }

    // first q >= from with excess(q) <= target, npos if none
    size_t fwd_le(size_t from, int64_t target) const {
        if (from >= size()) return npos;
        size_t bl = from / kBlockBits;
        if (block_start_excess(bl) + block_[bl].min_rel <= target) {
            size_t q = block_fwd_le(bl, from, target, block_start_excess(bl));
            if (q != npos) return q;
        }
        size_t sb = from / kSuperBits;
        {
            int64_t base = super_start_[sb];
            size_t sb_blocks_end = std::min((sb + 1) * kBlocksPerSuper, block_.size());
            for (size_t b = bl + 1; b < sb_blocks_end; ++b)
                if (base + block_[b].start_rel + block_[b].min_rel <= target)
                    return block_fwd_le(b, b * kBlockBits, target, base + block_[b].start_rel);
        }
        size_t sb2 = super_first_le(sb + 1, target);
        if (sb2 == npos) return npos;
        int64_t base = super_start_[sb2];
        size_t first_b = sb2 * kBlocksPerSuper;
        size_t last_b = std::min(first_b + kBlocksPerSuper, block_.size());
        for (size_t b = first_b; b < last_b; ++b)
            if (base + block_[b].start_rel + block_[b].min_rel <= target)
                return block_fwd_le(b, b * kBlockBits, target, base + block_[b].start_rel);
        return npos;
    }

    // last r <= upto with excess(r) <= target, -1 if none
    ptrdiff_t bwd_le(size_t upto, int64_t target) const {
        size_t bl = upto / kBlockBits;
        if (block_start_excess(bl) + block_[bl].min_rel <= target) {
            ptrdiff_t r = block_bwd_le(bl, upto, target, block_start_excess(bl));
            if (r >= 0) return r;
        }
        size_t sb = upto / kSuperBits;
        {
            int64_t base = super_start_[sb];
            size_t sb_blocks_begin = sb * kBlocksPerSuper;
            for (size_t b = bl; b-- > sb_blocks_begin;)
                if (base + block_[b].start_rel + block_[b].min_rel <= target)
                    return block_bwd_le(b, b * kBlockBits + kBlockBits - 1, target,
                                        base + block_[b].start_rel);
        }
        if (sb > 0) {
            size_t sb2 = super_last_le(sb - 1, target);
            if (sb2 != npos) {
                int64_t base = super_start_[sb2];
                size_t first_b = sb2 * kBlocksPerSuper;
                for (size_t b = first_b + kBlocksPerSuper; b-- > first_b;)
                    if (base + block_[b].start_rel + block_[b].min_rel <= target)
                        return block_bwd_le(b, b * kBlockBits + kBlockBits - 1, target,
                                            base + block_[b].start_rel);
            }
        }
        return -1;
    }

    size_t block_fwd_le(size_t b, size_t from, int64_t target, int64_t base_e) const {
        const auto& lut = detail::byte_excess();
        size_t end = std::min((b + 1) * kBlockBits, size());
        int64_t e = base_e;
        size_t p = b * kBlockBits;
        while (p + 8 <= from) {
            e += lut.delta[byte_at(p)];
            p += 8;
        }
        while (p < from) {
            e += bv_.bit(p) ? 1 : -1;
            ++p;
        }
        while (p < end) {
            if ((p & 7) == 0 && p + 8 <= end) {
                uint8_t byte = byte_at(p);
                if (e + lut.min_prefix[byte] <= target) {
                    for (;; ++p) {
                        e += bv_.bit(p) ? 1 : -1;
                        if (e <= target) return p;
                    }
                }
                e += lut.delta[byte];
                p += 8;
            } else {
                e += bv_.bit(p) ? 1 : -1;
                if (e <= target) return p;
                ++p;
            }
        }
        return npos;
    }

    ptrdiff_t block_bwd_le(size_t b, size_t upto, int64_t target, int64_t base_e) const {
        const auto& lut = detail::byte_excess();
        size_t begin = b * kBlockBits;
        // excess at upto from the block base; a whole-block scan ends
        // at the next block's tabulated start
        int64_t e;
        if (upto == begin + kBlockBits - 1 && b + 1 < block_.size()) {
            e = block_start_excess(b + 1);
        } else {
            e = base_e;
            size_t q = begin;
            while (q + 8 <= upto + 1) {
                e += lut.delta[byte_at(q)];
                q += 8;
            }
            while (q <= upto) {
                e += bv_.bit(q) ? 1 : -1;
                ++q;
            }
        }
        ptrdiff_t p = ptrdiff_t(upto);
        while (p >= ptrdiff_t(begin)) {
            if ((p & 7) == 7) {
                uint8_t byte = byte_at(size_t(p - 7));
                if (e - lut.max_suffix[byte] <= target) {
                    for (;; --p) {
                        if (e <= target) return p;
                        e -= bv_.bit(size_t(p)) ? 1 : -1;
                    }
                }
                e -= lut.delta[byte];
                p -= 8;
            } else {
                if (e <= target) return p;
                e -= bv_.bit(size_t(p)) ? 1 : -1;
                --p;
            }
        }
        return -1;
    }

    // (min, rightmost superblock index attaining it) over superblocks [lo, hi]
    std::pair<int64_t, size_t> super_rmq(size_t lo, size_t hi) const {
        assert(lo <= hi && hi < super_min_.size());
        size_t k = std::bit_width(hi - lo + 1) - 1;
        const auto& a = sparse_[k][lo];
        const auto& b = sparse_[k][hi - (size_t(1) << k) + 1];
        return b.first <= a.first ? std::pair<int64_t, size_t>{b.first, b.second}
                                  : std::pair<int64_t, size_t>{a.first, a.second};
    }

    // smallest superblock >= lo whose min is <= target; galloping
    // windows anchored at lo need one table line per doubling
    size_t super_first_le(size_t lo, int64_t target) const {
        size_t n = super_min_.size();
        if (lo >= n) return npos;
        size_t hit_len = 0;
        for (size_t k = 0;; ++k) {
            size_t len = size_t(1) << k;
            if (lo + len >= n || k >= sparse_.size()) {
                if (super_rmq(lo, n - 1).first > target) return npos;
                hit_len = n - lo;
                break;
            }
            if (sparse_[k][lo].first <= target) {
                hit_len = len;
                break;
            }
        }
        size_t pos = lo;
        for (size_t j = std::bit_width(hit_len); j-- > 0;) {
            size_t w = size_t(1) << j;
            if (pos + w <= lo + hit_len && pos + w <= n && sparse_[j][pos].first > target) pos += w;
        }
        return pos;
    }

    // largest superblock <= hi whose min is <= target
    size_t super_last_le(size_t hi, int64_t target) const {
        size_t n = super_min_.size();
        if (n == 0) return npos;
        hi = std::min(hi, n - 1);
        size_t hit_len = 0;
        for (size_t k = 0;; ++k) {
            size_t len = size_t(1) << k;
            if (len > hi || k >= sparse_.size()) {
                if (super_rmq(0, hi).first > target) return npos;
                hit_len = hi + 1;
                break;
            }
            if (sparse_[k][hi - len + 1].first <= target) {
                hit_len = len;
                break;
            }
        }
        size_t pos = hi;  // scan window [hi - hit_len + 1, hi] from the right
        for (size_t j = std::bit_width(hit_len); j-- > 0;) {
            size_t w = size_t(1) << j;
            if (pos + 1 >= w && hi - (pos + 1 - w) < hit_len &&
                sparse_[j][pos + 1 - w].first > target)
                pos -= w;
        }
        return pos;
    }

    void build_aux() {
        const auto& lut = detail::byte_excess();
        size_t n = bv_.size();
        size_t n_blocks = (n + kBlockBits - 1) / kBlockBits;
        size_t n_super = (n + kSuperBits - 1) / kSuperBits;
        block_.assign(n_blocks, {0, 0});
        super_min_.assign(n_super, std::numeric_limits<int32_t>::max());
        super_start_.assign(n_super, 0);
        int64_t e = 0, global_min = 0;
        for (size_t b = 0; b < n_blocks; ++b) {
            size_t sb = b / kBlocksPerSuper;
            if (b % kBlocksPerSuper == 0) super_start_[sb] = e;
            block_[b].start_rel = int16_t(e - super_start_[sb]);
            size_t begin = b * kBlockBits, end = std::min(begin + kBlockBits, n);
            int64_t start = e, mn = std::numeric_limits<int64_t>::max();
            size_t p = begin;
            while (p < end) {
                if ((p & 7) == 0 && p + 8 <= end) {
                    uint8_t byte = byte_at(p);
                    mn = std::min(mn, e + lut.min_prefix[byte]);
                    e += lut.delta[byte];
                    p += 8;
                } else {
                    e += bv_.bit(p) ? 1 : -1;
                    mn = std::min(mn, e);
                    ++p;
                }
            }
            block_[b].min_rel = int16_t(mn - start);
            global_min = std::min(global_min, mn);
            auto& sm = super_min_[sb];
            sm = int32_t(std::min<int64_t>(sm, mn));
        }
        if (n % 2 != 0 || e != 0 || global_min < 0)
            throw std::invalid_argument("balanced parens: sequence is not balanced");
        // sparse table over superblock minima, rightmost index on ties
        size_t levels = std::bit_width(n_super);
        sparse_.assign(levels, {});
        if (levels == 0) return;
        sparse_[0].resize(n_super);
        for (size_t i = 0; i < n_super; ++i) sparse_[0][i] = {super_min_[i], uint32_t(i)};
        for (size_t k = 1; k < levels; ++k) {
            size_t len = size_t(1) << k;
            sparse_[k].resize(n_super - len + 1);
            for (size_t i = 0; i + len <= n_super; ++i) {
                const auto& a = sparse_[k - 1][i];
                const auto& b = sparse_[k - 1][i + len / 2];
                sparse_[k][i] = b.first <= a.first ? b : a;
            }
        }
    }

    BitVector bv_;
    std::vector<BlockRec> block_;
    std::vector<int32_t> super_min_;
    std::vector<int64_t> super_start_;
    std::vector<std::vector<std::pair<int32_t, uint32_t>>> sparse_;
};

}  // namespace sgsm
