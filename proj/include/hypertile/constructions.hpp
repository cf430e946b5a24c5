#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "finite_field.hpp"
#include "hypergraph.hpp"
#include "rational.hpp"

namespace hypertile {

struct LabeledConstruction {
    Hypergraph graph;
    Partition part_map;
    std::string name;
    std::vector<std::pair<std::string, std::int64_t>> params;
};

namespace detail {

// Calls visit(subset) for every r-subset of `pool` in lexicographic order.
template <typename Visit>
void for_each_subset(const std::vector<Vertex>& pool, int r, Visit&& visit) {
    const int n = static_cast<int>(pool.size());
    if (r < 0 || r > n) return;
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::vector<Vertex> subset(static_cast<std::size_t>(r));
    while (true) {
        for (int i = 0; i < r; ++i) subset[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        visit(static_cast<const std::vector<Vertex>&>(subset));
        int i = r - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

inline std::vector<Vertex> iota_vertices(Vertex first, Vertex count) {
    std::vector<Vertex> v;
    for (Vertex i = 0; i < count; ++i) v.push_back(first + i);
    return v;
}

}  // namespace detail

// B[A,B]: A = {0..a-1}, B = {a..a+b-1}, edges are the triples meeting A in 1 or 3 vertices.
inline LabeledConstruction b_construction(int a, int b) {
    if (a < 0 || b < 0) throw Error("part sizes must be non-negative");
    const int n = a + b;
    std::vector<std::vector<Vertex>> edges;
    detail::for_each_subset(detail::iota_vertices(0, n), 3, [&](const std::vector<Vertex>& e) {
        int in_a = 0;
        for (Vertex v : e) in_a += v < a ? 1 : 0;
        if (in_a == 1 || in_a == 3) edges.push_back(e);
    });
    Partition parts(n, {VertexSet::range(0, a), VertexSet::range(a, n)}, true);
    return {Hypergraph(3, n, std::move(edges)), std::move(parts), "b", {{"a", a}, {"b", b}}};
}

// Part sizes (|A|, |B|) for the extremal B[A,B] on n vertices; |B| is odd.
inline std::pair<int, int> balanced_split(int n) {
    if (n < 4) throw Error("balanced_split needs n >= 4");
    switch (n % 4) {
        case 0: return {n / 2 + 1, n / 2 - 1};
        case 1: return {n / 2, n / 2 + 1};
        case 2: return {n / 2, n / 2};
        default: return {n / 2 + 1, n / 2};
    }
}

// D[X,Y]: k-graph whose edges meet X in one vertex and Y in k-1.
inline LabeledConstruction d_construction(int x, int y, int k) {
    if (k < 2) throw Error("uniformity must be at least 2");
    if (x < 0 || y < 0) throw Error("part sizes must be non-negative");
    const int n = x + y;
    std::vector<std::vector<Vertex>> edges;
    for (Vertex v = 0; v < x; ++v)
        detail::for_each_subset(detail::iota_vertices(x, y), k - 1, [&](const std::vector<Vertex>& rest) {
            std::vector<Vertex> e{v};
            e.insert(e.end(), rest.begin(), rest.end());
            edges.push_back(std::move(e));
        });
    Partition parts(n, {VertexSet::range(0, x), VertexSet::range(x, n)}, true);
    return {Hypergraph(k, n, std::move(edges)), std::move(parts), "d", {{"x", x}, {"y", y}, {"k", k}}};
}

// K^k(sizes): consecutive classes, one edge per transversal.
inline LabeledConstruction complete_k_partite(const std::vector<int>& sizes) {
    if (sizes.size() < 2) throw Error("complete k-partite graph needs k >= 2 classes");
    std::vector<VertexSet> parts;
    int n = 0;
    for (int s : sizes) {
        if (s < 1) throw Error("class sizes must be positive");
        parts.push_back(VertexSet::range(n, n + s));
        n += s;
    }
    const int k = static_cast<int>(sizes.size());
    std::vector<std::vector<Vertex>> edges;
    std::vector<Vertex> e(static_cast<std::size_t>(k));
    auto recurse = [&](auto&& self, int depth) -> void {
        if (depth == k) {
            edges.push_back(e);
            return;
        }
        for (Vertex v : parts[static_cast<std::size_t>(depth)]) {
            e[static_cast<std::size_t>(depth)] = v;
            self(self, depth + 1);
        }
    };
    recurse(recurse, 0);
    std::vector<std::pair<std::string, std::int64_t>> params{{"k", k}};
    for (std::size_t i = 0; i < sizes.size(); ++i) params.emplace_back("size" + std::to_string(i), sizes[i]);
    return {Hypergraph(k, n, std::move(edges)), Partition(n, std::move(parts)), "complete", std::move(params)};
}

// K^k_{s,t}: blocks X_1..X_t of size k-1 (vertices first), then Y of size s;
// edges X_i ∪ {y}.
inline LabeledConstruction k_st(int k, int s, int t) {
    if (k < 2) throw Error("uniformity must be at least 2");
    if (s < 1 || t < 1) throw Error("s and t must be positive");
    const int n = t * (k - 1) + s;
    std::vector<VertexSet> parts;
    for (int i = 0; i < t; ++i) parts.push_back(VertexSet::range(i * (k - 1), (i + 1) * (k - 1)));
    parts.push_back(VertexSet::range(t * (k - 1), n));
    std::vector<std::vector<Vertex>> edges;
    for (int i = 0; i < t; ++i)
        for (Vertex y : parts.back()) {
            std::vector<Vertex> e = parts[static_cast<std::size_t>(i)].values();
            e.push_back(y);
            edges.push_back(std::move(e));
        }
    return {Hypergraph(k, n, std::move(edges)), Partition(n, std::move(parts)), "kst", {{"k", k}, {"s", s}, {"t", t}}};
}

// Coordinates of the vertices of G_q: vertex (i-1)(q-1) + (j-1) is (x_i, x_j),
// where x_1..x_{q-1} are the non-zero field elements in encoding order.
struct FieldPoints {
    FieldSpec field;
    std::vector<std::pair<FieldElement, FieldElement>> coords;
};

inline FieldPoints field_points(std::uint32_t q) {
    FieldPoints pts{field(q), {}};
    const auto nonzero = pts.field.nonzero_elements();
    for (auto a : nonzero)
        for (auto b : nonzero) pts.coords.emplace_back(a, b);
    return pts;
}

// G_q: {x,y,z} is an edge iff x1 y1 z1 + x2 y2 z2 = 1.
inline LabeledConstruction g_q(std::uint32_t q) {
    const auto pts = field_points(q);
    const auto& f = pts.field;
    const int n = static_cast<int>(pts.coords.size());
    std::vector<std::vector<Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            const auto p1 = f.mul(pts.coords[static_cast<std::size_t>(u)].first, pts.coords[static_cast<std::size_t>(v)].first);
            const auto p2 = f.mul(pts.coords[static_cast<std::size_t>(u)].second, pts.coords[static_cast<std::size_t>(v)].second);
            for (Vertex w = v + 1; w < n; ++w) {
                const auto& c = pts.coords[static_cast<std::size_t>(w)];
                if (f.add(f.mul(p1, c.first), f.mul(p2, c.second)) == f.one()) edges.push_back({u, v, w});
            }
        }
    return {Hypergraph(3, n, std::move(edges)), Partition(n, {VertexSet::range(0, n)}), "g_q", {{"q", q}}};
}

// H_q on V(G_q) ∪ V(G_q'): vertex N + i is the twin of vertex i, N = (q-1)^2.
// {u, v, N+w} with u < v < N is an edge iff the product identity holds on
// the coordinates of u, v, w. No other triples are edges.
inline LabeledConstruction h_q(std::uint32_t q) {
    const auto pts = field_points(q);
    const auto& f = pts.field;
    const int side = static_cast<int>(pts.coords.size());
    std::vector<std::vector<Vertex>> edges;
    for (Vertex u = 0; u < side; ++u)
        for (Vertex v = u + 1; v < side; ++v) {
            const auto p1 = f.mul(pts.coords[static_cast<std::size_t>(u)].first, pts.coords[static_cast<std::size_t>(v)].first);
            const auto p2 = f.mul(pts.coords[static_cast<std::size_t>(u)].second, pts.coords[static_cast<std::size_t>(v)].second);
            for (Vertex w = 0; w < side; ++w) {
                const auto& c = pts.coords[static_cast<std::size_t>(w)];
                if (f.add(f.mul(p1, c.first), f.mul(p2, c.second)) == f.one()) edges.push_back({u, v, side + w});
            }
        }
    const int n = 2 * side;
    return {Hypergraph(3, n, std::move(edges)), Partition(n, {VertexSet::range(0, side), VertexSet::range(side, n)}),
            "h_q", {{"q", q}}};
}

namespace detail {

inline void check_proposition_params(int a, int b, std::uint32_t q) {
    if (a % 2 == 0 || b % 2 == 0) throw Error("proposition graph needs odd part sizes");
    const auto side = static_cast<int>((q - 1) * (q - 1));
    if (a < 1 || b < 1 || a > side || b > side)
        throw Error("part sizes must lie in [1, (q-1)^2] = [1, " + std::to_string(side) + "]");
}

}  // namespace detail

// H' = H_q induced on the first a vertices of the G_q side (relabeled 0..a-1)
// and the first b vertices of the G_q' side (relabeled a..a+b-1).
inline LabeledConstruction proposition_h_prime(int a, int b, std::uint32_t q) {
    detail::check_proposition_params(a, b, q);
    const auto h = h_q(q);
    const auto side = static_cast<Vertex>(h.part_map.part(0).size());
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < a; ++v) keep.push_back(v);
    for (Vertex v = 0; v < b; ++v) keep.push_back(side + v);
    auto sub = induced(h.graph, VertexSet(std::move(keep)));
    const int n = a + b;
    return {std::move(sub.graph), Partition(n, {VertexSet::range(0, a), VertexSet::range(a, n)}), "h_prime",
            {{"a", a}, {"b", b}, {"q", q}}};
}

// B[A,B] ∪ H' for odd |A| = a, |B| = b.
inline LabeledConstruction proposition_graph(int a, int b, std::uint32_t q) {
    const auto hp = proposition_h_prime(a, b, q);
    const auto bb = b_construction(a, b);
    auto edges = [](const Hypergraph& g) {
        std::vector<std::vector<Vertex>> out;
        for (std::size_t i = 0; i < g.size(); ++i) out.emplace_back(g.edge(i).begin(), g.edge(i).end());
        return out;
    };
    auto all = edges(bb.graph);
    auto extra = edges(hp.graph);
    all.insert(all.end(), extra.begin(), extra.end());
    const int n = a + b;
    return {Hypergraph(3, n, std::move(all)), hp.part_map, "proposition", {{"a", a}, {"b", b}, {"q", q}}};
}

// Whether n/2 + (2/5)sqrt(n/2) <= (q-1)^2 <= n/2 + (1/2)sqrt(n/2), decided exactly.
inline bool proposition_window_feasible(std::int64_t n, std::uint32_t q) {
    if (n < 1) return false;
    const Rational half_n = make_rational(n, 2);
    const Rational excess = Rational(BigInt(std::int64_t{q} - 1) * BigInt(std::int64_t{q} - 1)) - half_n;
    if (excess < 0) return false;
    const Rational sq = excess * excess;
    return sq >= make_rational(4, 25) * half_n && sq <= make_rational(1, 4) * half_n;
}

}  // namespace hypertile
