#pragma once

#include "bit_vector.hpp"

namespace sgsm {

// Marked positions derived from a parenthesis sequence. The marks are
// never materialized: queries recompute them word-by-word from the
// source bits, so only the counting table and select samples cost
// space.
enum class Pattern : uint8_t {
    kVertexPair,  // '(' directly followed by ')'
    kFirstOpen,   // '(' preceded by ')' and followed by '('
};

class PatternRank {
public:
    PatternRank() = default;

    PatternRank(const BitVector& src, Pattern pat) : pat_(pat), n_(src.size()) {
        size_t n_words = src.words().size();
        size_t n_blocks = n_ / BitVector::kBlockBits + 1;
        cum_.assign(n_blocks + 1, 0);
        size_t marks = 0;
        for (size_t bl = 0; bl < n_blocks; ++bl) {
            cum_[bl] = uint32_t(marks);
            size_t w0 = bl * BitVector::kWordsPerBlock;
            for (size_t w = w0; w < w0 + BitVector::kWordsPerBlock && w < n_words; ++w) {
                uint64_t m = pattern_word(src, w);
                size_t c = std::popcount(m);
                size_t t = (BitVector::kSelectSample - marks % BitVector::kSelectSample) %
                               BitVector::kSelectSample + 1;
                if (t <= c) sample_.push_back((w << 6) + BitVector::word_select(m, t));
                marks += c;
            }
        }
        cum_[n_blocks] = uint32_t(marks);
        marks_ = marks;
    }

    size_t count() const { return marks_; }

    // marks in [0, pos)
    size_t rank(const BitVector& src, size_t pos) const {
        assert(pos <= n_);
        size_t bl = pos / BitVector::kBlockBits;
        size_t r = cum_[bl];
        size_t w = bl * BitVector::kWordsPerBlock, wend = pos >> 6;
        for (; w < wend; ++w) r += std::popcount(pattern_word(src, w));
        if (pos & 63) r += std::popcount(pattern_word(src, wend) & ((uint64_t(1) << (pos & 63)) - 1));
        return r;
    }

    // 0-based position of the k-th (1-based) mark
    size_t select(const BitVector& src, size_t k) const {
        if (k == 0 || k > marks_) throw std::out_of_range("pattern select: rank not present");
        size_t bl = sample_[(k - 1) / BitVector::kSelectSample] / BitVector::kBlockBits;
        size_t last_bl = cum_.size() - 2;
        while (bl < last_bl && cum_[bl + 1] < k) ++bl;
        size_t rem = k - cum_[bl];
        size_t w = bl * BitVector::kWordsPerBlock;
        for (;; ++w) {
            size_t c = std::popcount(pattern_word(src, w));
            if (rem <= c) break;
            rem -= c;
        }
        return (w << 6) + BitVector::word_select(pattern_word(src, w), rem);
    }

    // first mark at a position >= from; scans nearby words and falls
    // back to rank+select when the next mark is far
    size_t next_mark(const BitVector& src, size_t from) const {
        size_t nw = src.words().size();
        size_t w = from >> 6;
        if (w < nw) {
            uint64_t m = pattern_word(src, w) & (~uint64_t(0) << (from & 63));
            for (size_t limit = std::min(nw, w + 8);;) {
                if (m) return (w << 6) + std::countr_zero(m);
                if (++w >= limit) break;
                m = pattern_word(src, w);
            }
        }
        size_t r = rank(src, std::min(from, n_));
        if (r >= marks_) throw std::out_of_range("pattern next_mark: no further mark");
        return select(src, r + 1);
    }

    size_t aux_bits() const { return 32 * cum_.size() + 64 * sample_.size(); }

private:
    uint64_t pattern_word(const BitVector& src, size_t w) const {
        const auto& words = src.words();
        uint64_t cur = words[w];
        uint64_t nxt = (w + 1 < words.size()) ? words[w + 1] : 0;
        uint64_t next_bit = (cur >> 1) | (nxt << 63);
        if (pat_ == Pattern::kVertexPair) return cur & ~next_bit;
        uint64_t prev_bit = (cur << 1) | (w > 0 ? words[w - 1] >> 63 : 0);
        uint64_t m = ~prev_bit & cur & next_bit;
        if (w == 0) m &= ~uint64_t(1);  // position 0 has no predecessor
        return m;
    }

    Pattern pat_ = Pattern::kVertexPair;
    size_t n_ = 0;
    size_t marks_ = 0;
    std::vector<uint32_t> cum_;  // absolute mark count at each block start
    std::vector<uint64_t> sample_;
};

}  // namespace sgsm
