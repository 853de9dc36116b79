#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sgsm {

// Appendable bit sequence used to stage the contents of a BitVector.
class BitBuilder {
public:
    BitBuilder() = default;
    explicit BitBuilder(size_t reserve_bits) { words_.reserve(reserve_bits / 64 + 1); }

    void push_back(bool b) {
        size_t w = n_ >> 6, off = n_ & 63;
        if (off == 0) words_.push_back(0);
        if (b) words_[w] |= uint64_t(1) << off;
        ++n_;
    }

    size_t size() const { return n_; }
    std::vector<uint64_t>&& take_words() { return std::move(words_); }

private:
    std::vector<uint64_t> words_;
    size_t n_ = 0;
};

/*
 * Static bit vector with rank/select for both bit values.
 *
 * One flat table of absolute one-counts per 2^9-bit block keeps rank
 * to a single table probe plus in-block popcounts. Select keeps the
 * position of every 4096th set/unset bit and scans block counts
 * forward from the sampled block. All auxiliary tables are derived
 * from the raw words and are rebuilt, never persisted.
 */
class BitVector {
public:
    static constexpr size_t kBlockBits = 512;
    static constexpr size_t kWordsPerBlock = kBlockBits / 64;
    static constexpr size_t kSelectSample = 4096;

    BitVector() = default;

    explicit BitVector(BitBuilder&& b) : words_(b.take_words()), n_(b.size()) {
        words_.resize(words_needed(n_));
        clear_tail();
        build_aux();
    }

    BitVector(std::vector<uint64_t> words, size_t n_bits) : words_(std::move(words)), n_(n_bits) {
        if (words_.size() < words_needed(n_))
            throw std::invalid_argument("bit vector: word payload too short");
        words_.resize(words_needed(n_));
        clear_tail();
        build_aux();
    }

    size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool bit(size_t i) const {
        assert(i < n_);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    // number of set bits in [0, pos)
    size_t rank1(size_t pos) const {
        assert(pos <= n_);
        size_t bl = pos / kBlockBits;
        size_t r = cum_[bl];
        size_t w = bl * kWordsPerBlock, wend = pos >> 6;
        for (; w < wend; ++w) r += std::popcount(words_[w]);
        if (pos & 63) r += std::popcount(words_[wend] & ((uint64_t(1) << (pos & 63)) - 1));
        return r;
    }

    size_t rank0(size_t pos) const { return pos - rank1(pos); }

    size_t rank(bool b, size_t pos) const {
        if (pos > n_) throw std::out_of_range("bit vector rank: position out of range");
        return b ? rank1(pos) : rank0(pos);
    }

    size_t count1() const { return ones_; }
    size_t count0() const { return n_ - ones_; }

    // 0-based position of the k-th (1-based) set bit
    size_t select1(size_t k) const {
        if (k == 0 || k > ones_) throw std::out_of_range("bit vector select1: rank not present");
        size_t bl = sample1_[(k - 1) / kSelectSample] / kBlockBits;
        size_t last_bl = cum_.size() - 2;
        while (bl < last_bl && cum_[bl + 1] < k) ++bl;
        size_t rem = k - cum_[bl];
        size_t w = bl * kWordsPerBlock;
        for (;; ++w) {
            size_t c = std::popcount(words_[w]);
            if (rem <= c) break;
            rem -= c;
        }
        return (w << 6) + word_select(words_[w], rem);
    }

    // 0-based position of the k-th (1-based) unset bit
    size_t select0(size_t k) const {
        if (k == 0 || k > count0()) throw std::out_of_range("bit vector select0: rank not present");
        size_t bl = sample0_[(k - 1) / kSelectSample] / kBlockBits;
        size_t last_bl = cum_.size() - 2;
        while (bl < last_bl && (bl + 1) * kBlockBits - cum_[bl + 1] < k) ++bl;
        size_t rem = k - (bl * kBlockBits - cum_[bl]);
        size_t w = bl * kWordsPerBlock;
        for (;; ++w) {
            uint64_t inv = ~words_[w];
            if ((w << 6) + 64 > n_) inv &= tail_mask();
            size_t c = std::popcount(inv);
            if (rem <= c) return (w << 6) + word_select(inv, rem);
            rem -= c;
        }
    }

    size_t select(bool b, size_t k) const { return b ? select1(k) : select0(k); }

    const std::vector<uint64_t>& words() const { return words_; }

    size_t aux_bits() const { return 32 * cum_.size() + 64 * (sample1_.size() + sample0_.size()); }

    bool operator==(const BitVector& o) const { return n_ == o.n_ && words_ == o.words_; }

    static unsigned word_select(uint64_t w, size_t k) {
        assert(k >= 1 && k <= (size_t)std::popcount(w));
        unsigned base = 0;
        while (true) {
            unsigned c = std::popcount(w & 0xff);
            if (k <= c) break;
            k -= c;
            w >>= 8;
            base += 8;
        }
        uint8_t b = w & 0xff;
        while (--k) b &= b - 1;
        return base + std::countr_zero((uint64_t)b);
    }

private:
    static size_t words_needed(size_t bits) { return bits / 64 + ((bits & 63) != 0); }

    uint64_t tail_mask() const {
        return (n_ & 63) ? (uint64_t(1) << (n_ & 63)) - 1 : ~uint64_t(0);
    }

    void clear_tail() {
        if (n_ & 63) words_.back() &= tail_mask();
    }

    void build_aux() {
        if (n_ >= (size_t(1) << 32)) throw std::invalid_argument("bit vector: too many bits");
        size_t n_blocks = n_ / kBlockBits + 1;
        cum_.assign(n_blocks + 1, 0);
        sample1_.clear();
        sample0_.clear();
        size_t ones = 0, zeros = 0;
        for (size_t bl = 0; bl < n_blocks; ++bl) {
            cum_[bl] = uint32_t(ones);
            size_t w0 = bl * kWordsPerBlock;
            for (size_t w = w0; w < w0 + kWordsPerBlock && (w << 6) < n_; ++w) {
                uint64_t valid = ((w << 6) + 64 > n_) ? tail_mask() : ~uint64_t(0);
                uint64_t v1 = words_[w] & valid;
                uint64_t v0 = ~words_[w] & valid;
                size_t c1 = std::popcount(v1), c0 = std::popcount(v0);
                // at most one sample lands in a 64-bit word
                size_t t = (kSelectSample - ones % kSelectSample) % kSelectSample + 1;
                if (t <= c1) sample1_.push_back((w << 6) + word_select(v1, t));
                t = (kSelectSample - zeros % kSelectSample) % kSelectSample + 1;
                if (t <= c0) sample0_.push_back((w << 6) + word_select(v0, t));
                ones += c1;
                zeros += c0;
            }
        }
        cum_[n_blocks] = uint32_t(ones);
        ones_ = ones;
    }

    std::vector<uint64_t> words_;
    size_t n_ = 0;
    size_t ones_ = 0;
    std::vector<uint32_t> cum_;  // absolute one-count at each block start
    std::vector<uint64_t> sample1_, sample0_;
};

}  // namespace sgsm
