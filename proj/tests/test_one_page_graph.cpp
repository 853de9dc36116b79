#include <catch2/catch.hpp>

#include <algorithm>
#include <map>
#include <random>

#include "sgsm/one_page_graph.hpp"

using sgsm::Edge;
using sgsm::NestingViolation;
using sgsm::OnePageGraph;

namespace {

OnePageGraph make(size_t n, std::vector<Edge> edges) {
    return OnePageGraph(n, std::span<const Edge>(edges.data(), edges.size()));
}

// nested candidate set from the worked example: seven edges over 12 vertices
const std::vector<Edge> kCandidateEdges = {{1, 2},  {3, 4},  {1, 6}, {1, 8},
                                           {9, 10}, {9, 11}, {9, 12}};

// random nested multigraph via a LIFO sweep
std::vector<Edge> random_nested(std::mt19937_64& rng, size_t n, size_t max_push) {
    std::vector<uint32_t> stack;
    std::vector<Edge> edges;
    for (uint32_t v = 1; v <= n; ++v) {
        size_t closes = v == n ? stack.size() : (stack.empty() ? 0 : rng() % (stack.size() + 1));
        for (size_t c = 0; c < closes; ++c) {
            edges.emplace_back(stack.back(), v);
            stack.pop_back();
        }
        if (v < n)
            for (size_t p = rng() % (max_push + 1); p-- > 0;) stack.push_back(v);
    }
    return edges;
}

}  // namespace

TEST_CASE("candidate graph navigation") {
    auto g = make(12, kCandidateEdges);
    CHECK(g.vertex_count() == 12);
    CHECK(g.edge_count() == 7);
    CHECK(g.degree(1) == 3);
    CHECK(g.degree(5) == 0);
    CHECK(g.degree(9) == 3);
    CHECK(g.neighbour(1, 2) == 6);
    CHECK(g.neighbour(2, 1) == 1);
    CHECK(g.neighbour(9, 3) == 12);
    CHECK(g.order(9, 11) == 2);
    CHECK(g.order(2, 1) == 1);
    for (size_t u = 1; u <= 12; ++u)
        for (size_t i = 2; i <= g.degree(u); ++i) REQUIRE(g.neighbour(u, i - 1) <= g.neighbour(u, i));
    CHECK(g.parens().size() == 2 * (12 + 7));
    CHECK_THROWS_AS(g.order(5, 6), std::out_of_range);
    CHECK_THROWS_AS(g.neighbour(1, 4), std::out_of_range);
    CHECK_THROWS_AS(g.degree(13), std::out_of_range);
}

TEST_CASE("empty graph") {
    auto g = make(3, {});
    for (size_t u = 1; u <= 3; ++u) CHECK(g.degree(u) == 0);
    CHECK(g.parens().size() == 6);
}

TEST_CASE("crossing edges are rejected with both edges named") {
    std::vector<Edge> bad = {{1, 3}, {2, 4}};
    try {
        make(4, bad);
        FAIL("expected NestingViolation");
    } catch (const NestingViolation& e) {
        std::vector<Edge> named = {e.first_edge, e.second_edge};
        std::sort(named.begin(), named.end());
        CHECK(named == bad);
    }
    CHECK_THROWS_AS(make(3, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(make(3, {{1, 4}}), std::invalid_argument);
    CHECK_NOTHROW(OnePageGraph::validate(4, std::vector<Edge>{{1, 4}, {2, 3}}));
    CHECK_THROWS_AS(OnePageGraph::validate(4, std::vector<Edge>{{1, 3}, {2, 4}}),
                    NestingViolation);
}

TEST_CASE("multigraph order returns the smallest rank") {
    auto g = make(3, {{1, 3}, {1, 3}});
    CHECK(g.degree(1) == 2);
    CHECK(g.degree(3) == 2);
    CHECK(g.order(1, 3) == 1);
    CHECK(g.order(3, 1) == 1);
    CHECK(g.neighbour(1, 1) == 3);
    CHECK(g.neighbour(1, 2) == 3);
}

TEST_CASE("random nested multigraphs agree with an adjacency-list oracle") {
    std::mt19937_64 rng(1234);
    for (int it = 0; it < 10000; ++it) {
        size_t n = 2 + rng() % 255;
        auto edges = random_nested(rng, n, 2);
        auto g = make(n, edges);
        REQUIRE(g.parens().size() == 2 * (n + edges.size()));

        std::vector<std::vector<uint32_t>> adj(n + 1);
        std::vector<size_t> indeg(n + 1, 0);
        for (const auto& [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
            indeg[v]++;
        }
        for (size_t u = 1; u <= n; ++u) std::sort(adj[u].begin(), adj[u].end());

        bool ok = true;
        for (size_t u = 1; u <= n; ++u) {
            ok &= g.degree(u) == adj[u].size();
            ok &= g.in_degree(u) == indeg[u];
            for (size_t i = 1; i <= adj[u].size(); ++i) ok &= g.neighbour(u, i) == adj[u][i - 1];
            if (!adj[u].empty()) {
                // order() on a few distinct neighbours
                for (size_t probe = 0; probe < std::min<size_t>(3, adj[u].size()); ++probe) {
                    uint32_t v = adj[u][rng() % adj[u].size()];
                    size_t idx = g.order(u, v);
                    ok &= g.neighbour(u, idx) == v;
                    ok &= idx == 1 || g.neighbour(u, idx - 1) != v;  // smallest rank
                }
            }
            if (!ok) break;
        }
        if (!ok) {
            CAPTURE(it, n, edges.size());
            REQUIRE(ok);
        }

        // round-trip: decode and rebuild reproduces the same bits
        auto decoded = g.decode_edges();
        auto g2 = make(n, decoded);
        REQUIRE(g2.parens().bits() == g.parens().bits());

        auto sorted_in = edges;
        std::sort(sorted_in.begin(), sorted_in.end());
        std::sort(decoded.begin(), decoded.end());
        REQUIRE(decoded == sorted_in);
    }
}
