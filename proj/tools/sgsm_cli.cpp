// Batch front end: build and persist indexes, answer range queries,
// solve k-covers, count decomposition trees, benchmark, self-test.
//
// Exit codes: 0 success, 1 usage, 2 input/format, 3 overflow,
// 4 self-test mismatch.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

#include "sgsm/sgsm.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ns_between(Clock::time_point a, Clock::time_point b) {
    return double(std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
}

int64_t checked_scale(int64_t value, int64_t factor) {
    int64_t out;
    if (__builtin_mul_overflow(value, factor, &out))
        throw std::overflow_error("scaled value exceeds the 64-bit range");
    return out;
}

// one signed integer or fixed-point decimal; scale digits of fraction allowed
int64_t parse_scaled(const std::string& tok, int scale) {
    size_t at = 0;
    bool neg = false;
    if (at < tok.size() && (tok[at] == '+' || tok[at] == '-')) neg = tok[at++] == '-';
    if (at >= tok.size()) throw sgsm::FormatError("bad number: '" + tok + "'");
    int64_t ipart = 0;
    size_t digits = 0;
    while (at < tok.size() && tok[at] >= '0' && tok[at] <= '9') {
        if (__builtin_mul_overflow(ipart, 10, &ipart) ||
            __builtin_add_overflow(ipart, tok[at] - '0', &ipart))
            throw std::overflow_error("number too large: '" + tok + "'");
        ++at;
        ++digits;
    }
    int64_t fpart = 0;
    int fdigits = 0;
    if (at < tok.size() && tok[at] == '.') {
        ++at;
        while (at < tok.size() && tok[at] >= '0' && tok[at] <= '9') {
            if (fdigits >= scale)
                throw sgsm::FormatError("'" + tok + "' has more fraction digits than --scale allows");
            fpart = fpart * 10 + (tok[at] - '0');
            ++at;
            ++fdigits;
            ++digits;
        }
    }
    if (at != tok.size() || digits == 0) throw sgsm::FormatError("bad number: '" + tok + "'");
    int64_t factor = 1;
    for (int k = 0; k < scale; ++k) factor = checked_scale(factor, 10);
    int64_t ffactor = 1;
    for (int k = fdigits; k < scale; ++k) ffactor = checked_scale(ffactor, 10);
    int64_t value = checked_scale(ipart, factor);
    if (__builtin_add_overflow(value, checked_scale(fpart, ffactor), &value))
        throw std::overflow_error("number too large: '" + tok + "'");
    return neg ? -value : value;
}

std::vector<int64_t> read_values(const std::string& path, const std::string& format, int scale) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sgsm::FormatError("cannot open input file: " + path);
    std::vector<int64_t> values;
    if (format == "bin") {
        std::vector<char> raw((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
        if (raw.size() % 8 != 0)
            throw sgsm::FormatError("binary input is not a whole number of 64-bit values");
        for (size_t i = 0; i < raw.size(); i += 8) {
            uint64_t v = 0;
            for (int k = 0; k < 8; ++k) v |= uint64_t(uint8_t(raw[i + k])) << (8 * k);
            values.push_back(int64_t(v));
        }
        return values;
    }
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        values.push_back(parse_scaled(line.substr(start), scale));
    }
    return values;
}

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sgsm::FormatError("cannot open index file: " + path);
    return std::vector<uint8_t>((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::span<const uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw sgsm::FormatError("cannot open output file: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw sgsm::FormatError("write failed: " + path);
}

std::pair<size_t, size_t> parse_range(const std::string& s) {
    size_t colon = s.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= s.size())
        throw CLI::ValidationError("--range", "expected i:j");
    return {std::stoull(s.substr(0, colon)), std::stoull(s.substr(colon + 1))};
}

void print_answer(const sgsm::SegmentAnswer& ans) {
    if (ans.empty) std::cout << "empty\n";
    else std::cout << ans.lo << ' ' << ans.hi << '\n';
}

int run_selftest(size_t cases) {
    std::mt19937_64 rng(20240915);
    std::uniform_int_distribution<int64_t> val(-20, 20);
    size_t bad = 0;

    for (size_t it = 0; it < cases && bad == 0; ++it) {
        size_t n = 1 + rng() % 48;
        std::vector<int64_t> user(n);
        for (auto& x : user) x = val(rng);
        std::span<const int64_t> uspan(user.data(), user.size());

        std::vector<int64_t> internal(user);
        internal.insert(internal.begin(), 0);

        auto mx = sgsm::RmqEncoding(std::span<const int64_t>(internal.data(), internal.size()),
                                    sgsm::RmqMode::kMax);
        for (size_t t = 0; t < 50; ++t) {
            size_t i = 1 + rng() % internal.size(), j = 1 + rng() % internal.size();
            if (i > j) std::swap(i, j);
            if (mx.query(i, j) != sgsm::oracle::naive_rmq(internal, i, j, true)) ++bad;
        }

        auto pa = sgsm::prepare(uspan);
        auto cs = sgsm::cumulative(pa);
        auto rmin = sgsm::cumulative_min_encoding(cs);
        auto lv = sgsm::left_vis_all(cs);
        auto p = sgsm::left_min_all(cs, lv, rmin);
        auto d = sgsm::candidate_scores(cs, p);
        auto q = sgsm::q_array(cs, p, d);
        auto na = sgsm::oracle::naive_arrays(internal);
        for (size_t i = 1; i <= pa.internal_size(); ++i)
            if (lv[i] != na.leftvis[i] || p[i] != na.p[i] || d[i] != na.d[i] || q[i] != na.q[i])
                ++bad;

        auto idx = sgsm::RMaxSSQIndex::build(uspan);
        for (size_t i = 1; i <= n; ++i)
            for (size_t j = i; j <= n; ++j) {
                auto got = idx.query(i, j);
                auto want = sgsm::oracle::naive_rmaxssq(user, i, j);
                if (!(got.empty == want.empty &&
                      (got.empty || (got.lo == want.lo && got.hi == want.hi))))
                    ++bad;
            }

        auto tree = sgsm::TransformationTree::build(uspan);
        auto dp = sgsm::oracle::naive_kcover_all(user);
        for (size_t k = 1; k <= n; ++k)
            if (sgsm::max_kcover(tree, k).score != dp[k]) ++bad;

        auto bytes = idx.serialize();
        if (sgsm::RMaxSSQIndex::deserialize(bytes).serialize() != bytes) ++bad;
    }
    std::cout << (bad == 0 ? "selftest ok" : "selftest FAILED") << '\n';
    return bad == 0 ? 0 : 4;
}

int run_bench(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int64_t> val(-20, 20);
    std::vector<int64_t> user(n);
    for (auto& x : user) x = val(rng);
    sgsm::BuildStats stats;
    auto t0 = Clock::now();
    auto idx = sgsm::RMaxSSQIndex::build(std::span<const int64_t>(user.data(), user.size()),
                                         false, &stats);
    auto t1 = Clock::now();
    size_t queries = 100000;
    std::vector<std::pair<size_t, size_t>> ranges(queries);
    for (auto& r : ranges) {
        size_t i = 1 + rng() % n, j = 1 + rng() % n;
        if (i > j) std::swap(i, j);
        r = {i, j};
    }
    size_t sink = 0;
    auto t2 = Clock::now();
    for (auto [i, j] : ranges) {
        auto a = idx.query(i, j);
        sink += a.empty ? 0 : a.hi;
    }
    auto t3 = Clock::now();
    std::cout << "n=" << n << " bits_per_element=" << double(idx.size_in_bits()) / double(n)
              << " build_ns_per_element=" << ns_between(t0, t1) / double(n)
              << " query_ns=" << ns_between(t2, t3) / double(queries)
              << " staircase_ops_per_element=" << double(stats.staircase_ops) / double(n)
              << " check=" << sink % 10 << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"succinct range maximum-sum segment queries, k-covers and tree counting"};
    app.require_subcommand(1);

    std::string input, output, index_path, range_text, ranges_file, format = "text";
    int scale = 0;
    bool with_nonempty = false, nonempty = false, all_k = false, growth = false;
    size_t k_arg = 1, n_arg = 0, cases = 200;
    uint64_t seed = 1;

    CLI::App* build = app.add_subcommand("build", "build an index and write it to a file");
    build->add_option("--input", input, "input values file")->required();
    build->add_option("--format", format, "text|bin")->check(CLI::IsMember({"text", "bin"}));
    build->add_option("--scale", scale, "fixed-point decimal digits for text input")
        ->check(CLI::Range(0, 18));
    build->add_flag("--with-nonempty", with_nonempty,
                    "also store the fallback encoding for all-non-positive windows");
    build->add_option("--out", output, "output index file")->required();

    CLI::App* query = app.add_subcommand("query", "answer range queries against an index file");
    query->add_option("--index", index_path, "index file")->required();
    query->add_option("--range", range_text, "query range i:j (1-based, inclusive)");
    query->add_option("--ranges-file", ranges_file, "file with one i:j per line");
    query->add_flag("--nonempty", nonempty, "fall back to the largest element");

    CLI::App* kcover = app.add_subcommand("kcover", "maximum-score k disjoint segments");
    kcover->add_option("--input", input, "input values file")->required();
    kcover->add_option("--format", format, "text|bin")->check(CLI::IsMember({"text", "bin"}));
    kcover->add_option("--scale", scale, "fixed-point decimal digits for text input")
        ->check(CLI::Range(0, 18));
    kcover->add_option("--k", k_arg, "number of segments")->required();
    kcover->add_flag("--all-k", all_k, "report every k from 1 to n via the level index");

    CLI::App* count = app.add_subcommand("count-trees", "count decomposition trees");
    count->add_option("--n", n_arg, "array length")->required();
    count->add_flag("--growth", growth, "also print the growth estimate (needs --n >= 100)");

    CLI::App* bench = app.add_subcommand("bench", "build/query timings on a random array");
    bench->add_option("--n", n_arg, "array length")->required();
    bench->add_option("--seed", seed, "random seed");

    CLI::App* selftest = app.add_subcommand("selftest", "oracle equivalence suites");
    selftest->add_option("--cases", cases, "number of random cases");
    selftest->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (build->parsed()) {
            auto values = read_values(input, format, scale);
            auto idx = sgsm::RMaxSSQIndex::build(std::span<const int64_t>(values.data(),
                                                                          values.size()),
                                                 with_nonempty);
            auto bytes = idx.serialize();
            write_file(output, bytes);
            return 0;
        }
        if (query->parsed()) {
            if (range_text.empty() == ranges_file.empty()) {
                std::cerr << "query: exactly one of --range / --ranges-file is required\n";
                return 1;
            }
            auto bytes = read_file(index_path);
            auto idx = sgsm::RMaxSSQIndex::deserialize(bytes);
            auto answer_one = [&](size_t i, size_t j) {
                print_answer(nonempty ? idx.query_nonempty(i, j) : idx.query(i, j));
            };
            if (!range_text.empty()) {
                auto [i, j] = parse_range(range_text);
                answer_one(i, j);
            } else {
                std::ifstream in(ranges_file);
                if (!in) throw sgsm::FormatError("cannot open ranges file: " + ranges_file);
                std::string line;
                while (std::getline(in, line)) {
                    if (line.empty()) continue;
                    auto [i, j] = parse_range(line);
                    answer_one(i, j);
                }
            }
            return 0;
        }
        if (kcover->parsed()) {
            auto values = read_values(input, format, scale);
            auto tree =
                sgsm::TransformationTree::build(std::span<const int64_t>(values.data(),
                                                                         values.size()));
            if (all_k) {
                auto mk = sgsm::MultiKIndex::preprocess(tree);
                for (size_t k = 1; k <= values.size(); ++k) {
                    auto ans = mk.query_k(tree, k);
                    std::cout << "k=" << k << " score=" << ans.score;
                    for (auto [lo, hi] : ans.intervals) std::cout << ' ' << lo << ':' << hi;
                    std::cout << '\n';
                }
            } else {
                auto ans = sgsm::max_kcover(tree, k_arg);
                std::cout << "score=" << ans.score << '\n';
                for (auto [lo, hi] : ans.intervals) std::cout << lo << ' ' << hi << '\n';
            }
            return 0;
        }
        if (count->parsed()) {
            if (growth && n_arg < 100) {
                std::cerr << "count-trees: --growth needs --n >= 100\n";
                return 1;
            }
            auto tab = sgsm::count_tables(n_arg);
            std::cout << "T(" << n_arg << ")=" << tab.t[n_arg].get_str() << " M(" << n_arg
                      << ")=" << tab.m[n_arg].get_str() << '\n';
            if (growth) {
                std::cout.precision(6);
                std::cout << "growth=" << std::fixed << sgsm::growth_estimate(tab) << '\n';
            }
            return 0;
        }
        if (bench->parsed()) return run_bench(n_arg, seed);
        if (selftest->parsed()) return run_selftest(cases);
    } catch (const std::overflow_error& e) {
        std::cerr << "overflow: " << e.what() << '\n';
        return 3;
    } catch (const sgsm::FormatError& e) {
        std::cerr << "format: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
