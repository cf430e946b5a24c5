#include <gtest/gtest.h>

#include <cmath>

#include "hypertile/constructions.hpp"
#include "hypertile/experiments.hpp"
#include "hypertile/io.hpp"
#include "hypertile/oracles.hpp"
#include "hypertile/solver.hpp"

using namespace hypertile;

namespace {

std::int64_t choose(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0;
    std::int64_t out = 1;
    for (std::int64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

struct Point {
    std::uint32_t x;
    std::uint32_t y;
};

// Points of (Z_q^*)^2 row-major, for prime q only.
std::vector<Point> prime_points(std::uint32_t q) {
    std::vector<Point> out;
    for (std::uint32_t a = 1; a < q; ++a)
        for (std::uint32_t b = 1; b < q; ++b) out.push_back({a, b});
    return out;
}

bool identity(const Point& u, const Point& v, const Point& w, std::uint32_t q) {
    return (u.x * v.x % q * w.x + u.y * v.y % q * w.y) % q == 1;
}

}  // namespace

TEST(BConstruction, EdgeCountAndTypes) {
    for (int a = 0; a <= 12; ++a)
        for (int b = 0; b <= 12; ++b) {
            auto c = b_construction(a, b);
            EXPECT_EQ(static_cast<std::int64_t>(c.graph.size()), choose(a, 3) + a * choose(b, 2)) << a << "," << b;
            for (std::size_t i = 0; i < c.graph.size(); ++i) {
                const auto t = index_vector(c.part_map, c.graph.edge(i));
                EXPECT_TRUE(t[0] == 1 || t[0] == 3);
            }
        }
}

TEST(BConstruction, ExtremalCodegreePattern) {
    for (int n = 4; n <= 30; ++n) {
        const auto [a, b] = balanced_split(n);
        EXPECT_EQ(a + b, n);
        EXPECT_EQ(b % 2, 1) << n;
        EXPECT_LE(std::abs(a - b), 2);
        const auto d2 = static_cast<std::int64_t>(min_s_degree(b_construction(a, b).graph, 2));
        EXPECT_EQ(d2, expected_b_codegree(n)) << n;
        EXPECT_EQ(d2, c4_condition(n) - 1) << n;
    }
    EXPECT_EQ(balanced_split(12), std::make_pair(7, 5));
    EXPECT_EQ(balanced_split(13), std::make_pair(6, 7));
    EXPECT_EQ(balanced_split(14), std::make_pair(7, 7));
    EXPECT_EQ(balanced_split(15), std::make_pair(8, 7));
    EXPECT_THROW(balanced_split(3), Error);
}

TEST(DConstruction, Examples) {
    EXPECT_EQ(d_construction(2, 3, 3).graph.size(), 6u);
    EXPECT_EQ(d_construction(0, 5, 3).graph.size(), 0u);
    EXPECT_EQ(d_construction(3, 2, 2).graph.size(), 6u);
    auto d = d_construction(3, 4, 4);
    EXPECT_EQ(d.graph.size(), 3u * 4u);
    for (std::size_t i = 0; i < d.graph.size(); ++i) EXPECT_EQ(index_vector(d.part_map, d.graph.edge(i)), (TypeVector{1, 3}));
    EXPECT_THROW(d_construction(1, 1, 1), Error);
}

TEST(CompletePartite, Examples) {
    EXPECT_EQ(complete_k_partite({2, 2, 2}).graph.size(), 8u);
    EXPECT_EQ(complete_k_partite({1, 2, 3, 4}).graph.size(), 24u);
    EXPECT_EQ(complete_k_partite({1, 2, 3, 4}).graph.uniformity(), 4);
    EXPECT_THROW(complete_k_partite({2, 0, 2}), Error);
    EXPECT_THROW(complete_k_partite({2}), Error);
}

TEST(Kst, Examples) {
    auto c4 = k_st(3, 2, 2);
    EXPECT_EQ(c4.graph.order(), 6);
    EXPECT_EQ(c4.graph.size(), 4u);
    // K^3_{2,2} is the tight 3-uniform 4-cycle: every vertex has degree 2
    for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(degree(c4.graph, {v}), 2u);
    EXPECT_EQ(k_st(3, 1, 1).graph, single_edge());
    EXPECT_EQ(k_st(4, 3, 2).graph.order(), 9);
    EXPECT_EQ(k_st(4, 3, 2).graph.size(), 6u);
    EXPECT_THROW(k_st(3, 0, 1), Error);
}

TEST(Gq, MatchesPrimeFieldBruteForce) {
    for (std::uint32_t q : {3u, 5u, 7u}) {
        const auto pts = prime_points(q);
        const auto g = g_q(q).graph;
        ASSERT_EQ(g.order(), static_cast<int>(pts.size()));
        std::size_t count = 0;
        for (std::size_t u = 0; u < pts.size(); ++u)
            for (std::size_t v = u + 1; v < pts.size(); ++v)
                for (std::size_t w = v + 1; w < pts.size(); ++w) {
                    const bool edge = identity(pts[u], pts[v], pts[w], q);
                    count += edge ? 1 : 0;
                    EXPECT_EQ(g.has_edge(std::vector<Vertex>{static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Vertex>(w)}),
                              edge);
                }
        EXPECT_EQ(g.size(), count);
    }
}

TEST(Gq, GoldenEdgeCounts) {
    EXPECT_EQ(g_q(5).graph.size(), 105u);
    EXPECT_EQ(g_q(7).graph.size(), 990u);
    EXPECT_EQ(g_q(11).graph.size(), 14553u);
    EXPECT_EQ(g_q(9).graph.order(), 64);
}

TEST(Gq, GoldenFile) {
    const auto golden = parse_hg(std::string(HYPERTILE_TEST_DATA) + "/g_5.hg");
    EXPECT_EQ(golden, g_q(5).graph);
    EXPECT_EQ(g_q(5).graph, g_q(5).graph);
}

TEST(Gq, IsApexFree) {
    for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u}) {
        const auto g = g_q(q).graph;
        EXPECT_FALSE(contains_copy(g, k3_apex(2, 2)).has_value()) << q;
        EXPECT_FALSE(contains_copy_generic(g, k3_apex(2, 2)).has_value()) << q;
        // K^3(1,1,2) is everywhere, so the search itself is not vacuous
        EXPECT_TRUE(contains_copy(g, k3_apex(1, 2)).has_value()) << q;
    }
}

// The stated bound q-3 is not reached: the pairs {x, y} with both points on the
// line x1 y1 Z1 + x2 y2 Z2 = 1 lose both, leaving q-4.
TEST(Gq, CodegreeIsExactlyQMinusFour) {
    for (std::uint32_t q : {5u, 7u}) {
        const auto g = g_q(q).graph;
        EXPECT_EQ(min_s_degree(g, 2), oracle::min_s_degree(g, 2));
        EXPECT_EQ(min_s_degree(g, 2), q - 4) << q;
    }
    EXPECT_EQ(min_s_degree(g_q(11).graph, 2), 7u);
    // and every pair sees at most q-2 third vertices
    const auto g7 = g_q(7).graph;
    for (Vertex a = 0; a < g7.order(); ++a)
        for (Vertex b = a + 1; b < g7.order(); ++b) EXPECT_LE(degree(g7, {a, b}), 5u);
}

TEST(Hq, Structure) {
    for (std::uint32_t q : {3u, 5u}) {
        const auto h = h_q(q);
        const auto g = g_q(q).graph;
        const int side = (static_cast<int>(q) - 1) * (static_cast<int>(q) - 1);
        ASSERT_EQ(h.graph.order(), 2 * side);
        for (std::size_t i = 0; i < h.graph.size(); ++i) {
            auto e = h.graph.edge(i);
            EXPECT_LT(e[1], side);
            EXPECT_GE(e[2], side);
        }
        // each edge abc of G_q yields (a,b,c'), (a,c,b'), (b,c,a')
        for (const auto& e : g.edges()) {
            EXPECT_TRUE(h.graph.has_edge(std::vector<Vertex>{e[0], e[1], side + e[2]}));
            EXPECT_TRUE(h.graph.has_edge(std::vector<Vertex>{e[0], e[2], side + e[1]}));
            EXPECT_TRUE(h.graph.has_edge(std::vector<Vertex>{e[1], e[2], side + e[0]}));
        }
        EXPECT_FALSE(contains_copy(h.graph, k3_apex(2, 2)).has_value());
        EXPECT_FALSE(contains_copy_generic(h.graph, k3_apex(2, 2)).has_value());
    }
}

TEST(Hq, MatchesPrimeFieldBruteForce) {
    for (std::uint32_t q : {3u, 5u}) {
        const auto pts = prime_points(q);
        const auto side = static_cast<Vertex>(pts.size());
        std::size_t count = 0;
        const auto h = h_q(q).graph;
        for (Vertex u = 0; u < side; ++u)
            for (Vertex v = u + 1; v < side; ++v)
                for (Vertex w = 0; w < side; ++w) {
                    const bool edge = identity(pts[static_cast<std::size_t>(u)], pts[static_cast<std::size_t>(v)],
                                               pts[static_cast<std::size_t>(w)], q);
                    count += edge ? 1 : 0;
                    EXPECT_EQ(h.has_edge(std::vector<Vertex>{u, v, side + w}), edge);
                }
        EXPECT_EQ(h.size(), count);
    }
    EXPECT_EQ(h_q(3).graph.size(), 6u);
}

TEST(Proposition, SmallInstances) {
    const auto g = proposition_graph(7, 7, 5);
    EXPECT_EQ(g.graph.order(), 14);
    const auto hp = proposition_h_prime(7, 7, 5);
    EXPECT_FALSE(contains_copy(hp.graph, k3_apex(2, 2)).has_value());
    // H' edges all have type AAB, which B[A,B] never uses
    const auto b = b_construction(7, 7);
    EXPECT_EQ(g.graph.size(), b.graph.size() + hp.graph.size());
    for (std::size_t i = 0; i < hp.graph.size(); ++i) EXPECT_EQ(index_vector(hp.part_map, hp.graph.edge(i)), (TypeVector{2, 1}));

    SearchOptions exhaustive;
    exhaustive.divisibility_shortcut = false;
    auto outcome = has_perfect_tiling(proposition_graph(3, 3, 3).graph, k3(2), exhaustive);
    EXPECT_FALSE(outcome.certificate.has_value());
    EXPECT_EQ(outcome.reason, NoneReason::exhaustive);
}

TEST(Proposition, Errors) {
    EXPECT_THROW(proposition_graph(6, 7, 5), Error);
    EXPECT_THROW(proposition_graph(7, 8, 5), Error);
    EXPECT_THROW(proposition_graph(17, 7, 5), Error);  // (q-1)^2 = 16
    EXPECT_THROW(proposition_graph(7, 7, 6), Error);
}

TEST(Proposition, WindowFeasibilityIsExact) {
    for (std::int64_t n = 1; n <= 400; ++n)
        for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u}) {
            const double half = static_cast<double>(n) / 2.0;
            const double side = static_cast<double>((q - 1) * (q - 1));
            const double lo = half + 0.4 * std::sqrt(half);
            const double hi = half + 0.5 * std::sqrt(half);
            if (std::abs(side - lo) < 1e-9 || std::abs(side - hi) < 1e-9) continue;
            EXPECT_EQ(proposition_window_feasible(n, q), lo <= side && side <= hi) << n << " " << q;
        }
    // (q-1)^2 = 16 needs n/2 + 0.4 sqrt(n/2) <= 16 <= n/2 + 0.5 sqrt(n/2): no integer n works
    for (std::int64_t n = 1; n <= 60; ++n) EXPECT_FALSE(proposition_window_feasible(n, 5));
}

TEST(Constructions, MetadataNamesAndParts) {
    auto c = g_q(5);
    EXPECT_EQ(c.name, "g_q");
    EXPECT_EQ(c.part_map.size(), 1u);
    auto h = h_q(5);
    EXPECT_EQ(h.part_map.size(), 2u);
    EXPECT_EQ(h.part_map.part(1).size(), 16u);
    EXPECT_THROW(g_q(6), Error);
    EXPECT_THROW(h_q(32), Error);
}
