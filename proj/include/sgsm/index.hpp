#pragma once

#include "build.hpp"

namespace sgsm {

struct SegmentAnswer {
    bool empty = true;
    size_t lo = 0, hi = 0;  // 1-based when !empty

    bool operator==(const SegmentAnswer& o) const {
        return empty == o.empty && (empty || (lo == o.lo && hi == o.hi));
    }
};

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline uint32_t crc32c(std::span<const uint8_t> bytes) {
    static const auto table = [] {
        std::array<uint32_t, 256> t{};
        for (uint32_t i = 0; i < 256; ++i) {
            uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c >> 1) ^ (c & 1 ? 0x82F63B78u : 0);
            t[i] = c;
        }
        return t;
    }();
    uint32_t crc = ~uint32_t(0);
    for (uint8_t b : bytes) crc = (crc >> 8) ^ table[(crc ^ b) & 0xff];
    return ~crc;
}

struct ByteWriter {
    std::vector<uint8_t> out;

    void u8(uint8_t v) { out.push_back(v); }
    void u32(uint32_t v) {
        for (int k = 0; k < 4; ++k) out.push_back(uint8_t(v >> (8 * k)));
    }
    void u64(uint64_t v) {
        for (int k = 0; k < 8; ++k) out.push_back(uint8_t(v >> (8 * k)));
    }
    void bits(const BitVector& bv) {
        u64(bv.size());
        size_t nbytes = (bv.size() + 7) / 8;
        for (size_t b = 0; b < nbytes; ++b) out.push_back(uint8_t(bv.words()[b / 8] >> (8 * (b % 8))));
    }
};

struct ByteReader {
    std::span<const uint8_t> in;
    size_t pos = 0;

    void need(size_t k) const {
        if (pos + k > in.size()) throw FormatError("index payload truncated");
    }
    uint8_t u8() {
        need(1);
        return in[pos++];
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int k = 0; k < 4; ++k) v |= uint32_t(in[pos++]) << (8 * k);
        return v;
    }
    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int k = 0; k < 8; ++k) v |= uint64_t(in[pos++]) << (8 * k);
        return v;
    }
    BitVector bits() {
        uint64_t nbits = u64();
        if (nbits > (uint64_t(1) << 40)) throw FormatError("index payload length implausible");
        size_t nbytes = size_t((nbits + 7) / 8);
        need(nbytes);
        std::vector<uint64_t> words(nbytes / 8 + 1, 0);
        for (size_t b = 0; b < nbytes; ++b) words[b / 8] |= uint64_t(in[pos + b]) << (8 * (b % 8));
        pos += nbytes;
        return BitVector(std::move(words), size_t(nbits));
    }
};

}  // namespace detail

/*
 * Encoding index for range maximum-sum segment queries.
 *
 * Holds range max/min encodings of the candidate-score and cumulative
 * arrays plus the candidate and left-sibling graphs; the numeric
 * arrays themselves are dropped after construction, so queries run
 * entirely on shape bits. The optional extra encoding over the input
 * array answers the largest-element fallback for all-non-positive
 * windows.
 *
 * Internal coordinates shift user positions by one to make room for a
 * leading zero sentinel.
 */
class RMaxSSQIndex {
public:
    static constexpr uint8_t kVersion = 1;
    static constexpr uint8_t kFlagNonEmptyVariant = 1;

    RMaxSSQIndex() = default;

    static RMaxSSQIndex build(std::span<const int64_t> user_values, bool with_nonempty = false,
                              BuildStats* stats = nullptr) {
        RMaxSSQIndex idx;
        PreparedArray pa = prepare(user_values);
        size_t n = pa.internal_size();
        CumulativeSums cs = cumulative(pa);
        idx.rmin_c_ = cumulative_min_encoding(cs);
        auto leftvis = left_vis_all(cs);
        auto p = left_min_all(cs, leftvis, idx.rmin_c_);
        auto d = candidate_scores(cs, p);
        auto q = q_array(cs, p, d, stats);
        GraphEdges ge = emit_graphs(p, q);
        idx.rmax_d_ = RmqEncoding(std::span<const int64_t>(d.data() + 1, n), RmqMode::kMax);
        idx.g_ = OnePageGraph(n, ge.g);
        idx.h_ = OnePageGraph(n, ge.h);
        if (with_nonempty) {
            idx.rmax_a_ = RmqEncoding(std::span<const int64_t>(pa.a.data() + 1, n), RmqMode::kMax);
            idx.has_a_ = true;
        }
        idx.n_user_ = pa.user_size();
        return idx;
    }

    size_t size() const { return n_user_; }
    size_t internal_size() const { return n_user_ + 1; }
    bool has_nonempty_variant() const { return has_a_; }

    // maximum-sum subrange of the user window [i, j]
    SegmentAnswer query(size_t i, size_t j) const {
        if (i < 1 || i > j || j > n_user_) throw std::out_of_range("query: bad range");
        SegmentAnswer ans = query_internal(i + 1, j + 1);
        if (!ans.empty) {
            --ans.lo;
            --ans.hi;
        }
        return ans;
    }

    // same query over internal coordinates (position 1 is the sentinel)
    SegmentAnswer query_internal(size_t i, size_t j) const {
        size_t n = internal_size();
        if (i < 1 || i > j || j > n) throw std::out_of_range("query: bad range");
        size_t x = rmax_d_.query(i, j);
        size_t px = left_min_internal(x);
        if (px == x) return {};
        if (px + 1 >= i) return {false, px + 1, x};
        if (x == j) return {false, rmin_c_.query(i, x), x};
        size_t y = rmax_d_.query(x + 1, j);
        size_t py = left_min_internal(y);
        if (py == y) return {false, rmin_c_.query(i, x), x};
        size_t qy = left_sib_of(y, py);
        // an undefined sibling decides without the cumulative minimum
        if (qy == 0) return {false, py + 1, y};
        // rightmost minimum of c over c-indices [i-1, x-1]
        size_t t = rmin_c_.query(i, x) - 1;
        if (qy >= t) return {false, t + 1, x};
        return {false, py + 1, y};
    }

    // Left-Min over internal coordinates, reconstructed from the
    // candidate graph: a candidate has exactly one edge to a smaller
    // label, a non-candidate answers itself
    size_t left_min_internal(size_t x) const {
        if (x < 1 || x > internal_size()) throw std::out_of_range("left_min: bad index");
        size_t v = g_.sole_smaller_neighbour(x);
        return v == 0 ? x : v;
    }

    // Left-Sib over internal coordinates; 0 when undefined. x must be a
    // candidate.
    size_t left_sib_internal(size_t x) const {
        size_t px = left_min_internal(x);
        if (px == x) throw std::invalid_argument("left_sib: not a candidate");
        return left_sib_of(x, px);
    }

    // window query that falls back to the rightmost largest element
    // when every number in the window is non-positive
    SegmentAnswer query_nonempty(size_t i, size_t j) const {
        if (!has_a_) throw std::logic_error("query_nonempty: index built without the fallback encoding");
        SegmentAnswer ans = query(i, j);
        if (!ans.empty) return ans;
        size_t k = rmax_a_.query(i + 1, j + 1) - 1;
        return {false, k, k};
    }

    struct ComponentBits {
        size_t rmax_d = 0, rmin_c = 0, graph_g = 0, graph_h = 0, rmax_a = 0;

        size_t total() const { return rmax_d + rmin_c + graph_g + graph_h + rmax_a; }
    };

    ComponentBits component_bits() const {
        ComponentBits cb;
        cb.rmax_d = rmax_d_.size_in_bits();
        cb.rmin_c = rmin_c_.size_in_bits();
        cb.graph_g = g_.size_in_bits();
        cb.graph_h = h_.size_in_bits();
        if (has_a_) cb.rmax_a = rmax_a_.size_in_bits();
        return cb;
    }

    size_t size_in_bits() const { return component_bits().total(); }

    std::vector<uint8_t> serialize() const {
        detail::ByteWriter w;
        w.u8('S');
        w.u8('G');
        w.u8('S');
        w.u8('M');
        w.u8(kVersion);
        w.u8(has_a_ ? kFlagNonEmptyVariant : 0);
        w.u64(n_user_);
        w.bits(rmax_d_.shape().bits());
        w.bits(rmin_c_.shape().bits());
        w.bits(g_.parens().bits());
        w.bits(h_.parens().bits());
        if (has_a_) w.bits(rmax_a_.shape().bits());
        w.u32(detail::crc32c(w.out));
        return std::move(w.out);
    }

    static RMaxSSQIndex deserialize(std::span<const uint8_t> bytes) {
        if (bytes.size() < 4 + 2 + 8 + 4) throw FormatError("index payload truncated");
        if (bytes[0] != 'S' || bytes[1] != 'G' || bytes[2] != 'S' || bytes[3] != 'M')
            throw FormatError("bad magic");
        uint32_t want = detail::crc32c(bytes.subspan(0, bytes.size() - 4));
        detail::ByteReader tail{bytes.subspan(bytes.size() - 4)};
        if (tail.u32() != want) throw FormatError("checksum mismatch");
        detail::ByteReader r{bytes.subspan(0, bytes.size() - 4)};
        r.pos = 4;
        uint8_t version = r.u8();
        if (version != kVersion)
            throw FormatError("unsupported version " + std::to_string(version));
        uint8_t flags = r.u8();
        if (flags & ~kFlagNonEmptyVariant) throw FormatError("unknown flags");
        RMaxSSQIndex idx;
        idx.n_user_ = size_t(r.u64());
        size_t n = idx.n_user_ + 1;
        try {
            idx.rmax_d_ = RmqEncoding(BalancedParens(r.bits()), RmqMode::kMax);
            idx.rmin_c_ = RmqEncoding(BalancedParens(r.bits()), RmqMode::kMin);
            idx.g_ = OnePageGraph(BalancedParens(r.bits()));
            idx.h_ = OnePageGraph(BalancedParens(r.bits()));
            if (flags & kFlagNonEmptyVariant) {
                idx.rmax_a_ = RmqEncoding(BalancedParens(r.bits()), RmqMode::kMax);
                idx.has_a_ = true;
            }
        } catch (const std::invalid_argument& e) {
            throw FormatError(std::string("corrupt component: ") + e.what());
        }
        if (r.pos != r.in.size()) throw FormatError("trailing bytes after payload");
        if (idx.rmax_d_.size() != n || idx.rmin_c_.size() != n + 1 || idx.g_.vertex_count() != n ||
            idx.h_.vertex_count() != n || (idx.has_a_ && idx.rmax_a_.size() != n))
            throw FormatError("component sizes disagree with the header");
        return idx;
    }

private:
    // Left-Sib of the candidate (px, x) through the two graphs. The
    // sibling edges entering px pair up with the first candidates at
    // px in reverse order, so the candidate's rank at px selects the
    // rank-th sibling close directly; when px carries fewer sibling
    // closes (it may also have sibling edges out to larger labels),
    // the position check reports the sibling as undefined. px is never
    // a candidate itself, so its candidate run is all opens.
    size_t left_sib_of(size_t x, size_t px) const {
        size_t ord = g_.order_by_first_close_out_only(px, x);
        return h_.close_neighbour(px, ord);
    }

    size_t n_user_ = 0;
    RmqEncoding rmax_d_;
    RmqEncoding rmin_c_;
    OnePageGraph g_, h_;
    bool has_a_ = false;
    RmqEncoding rmax_a_;
};

}  // namespace sgsm
