#pragma once

// Brute-force reference implementations. Each one deliberately avoids the
// indexed structures and search code of the main modules so that agreement
// between the two is meaningful.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hypergraph.hpp"

namespace hypertile::oracle {

inline bool edge_listed(const Hypergraph& h, std::vector<Vertex> e) {
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto f = h.edge(i);
        if (std::equal(f.begin(), f.end(), e.begin(), e.end())) return true;
    }
    return false;
}

// Linear scan of the edge list.
inline std::size_t degree(const Hypergraph& h, const VertexSet& s) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto e = h.edge(i);
        if (std::includes(e.begin(), e.end(), s.begin(), s.end())) ++count;
    }
    return count;
}

// Minimum over all s-sets by explicit subset enumeration.
inline std::size_t min_s_degree(const Hypergraph& h, int s) {
    std::size_t best = h.size();
    std::vector<Vertex> chosen;
    auto recurse = [&](auto&& self, Vertex from) -> void {
        if (static_cast<int>(chosen.size()) == s) {
            best = std::min(best, oracle::degree(h, VertexSet(chosen)));
            return;
        }
        for (Vertex v = from; v < h.order(); ++v) {
            chosen.push_back(v);
            self(self, v + 1);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0);
    return best;
}

// Tries every bijection V(F) -> S.
inline bool spanning_copy(const Hypergraph& h, const Hypergraph& f, const std::vector<Vertex>& s) {
    if (static_cast<int>(s.size()) != f.order()) return false;
    std::vector<Vertex> perm = s;
    std::sort(perm.begin(), perm.end());
    do {
        bool ok = true;
        for (std::size_t i = 0; i < f.size() && ok; ++i) {
            std::vector<Vertex> image;
            for (Vertex v : f.edge(i)) image.push_back(perm[static_cast<std::size_t>(v)]);
            ok = edge_listed(h, image);
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Perfect tiling by trying every partition of V(H) into |V(F)|-blocks.
inline bool perfect_tiling(const Hypergraph& h, const Hypergraph& f) {
    const int n = h.order();
    const int t = f.order();
    if (t == 0 || n % t != 0) return false;
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    auto recurse = [&](auto&& self) -> bool {
        Vertex first = 0;
        while (first < n && taken[static_cast<std::size_t>(first)]) ++first;
        if (first == n) return true;
        std::vector<Vertex> rest;
        for (Vertex v = first + 1; v < n; ++v)
            if (!taken[static_cast<std::size_t>(v)]) rest.push_back(v);
        std::vector<Vertex> block{first};
        auto choose = [&](auto&& pick, std::size_t from) -> bool {
            if (static_cast<int>(block.size()) == t) {
                if (!spanning_copy(h, f, block)) return false;
                for (Vertex v : block) taken[static_cast<std::size_t>(v)] = 1;
                const bool done = self(self);
                for (Vertex v : block) taken[static_cast<std::size_t>(v)] = 0;
                return done;
            }
            for (std::size_t i = from; i < rest.size(); ++i) {
                block.push_back(rest[i]);
                if (pick(pick, i + 1)) return true;
                block.pop_back();
            }
            return false;
        };
        return choose(choose, 0);
    };
    return recurse(recurse);
}

// Number of pairs {u, w} such that both {x,u,w} and {y,u,w} are edges of a 3-graph.
inline std::size_t common_link_pairs(const Hypergraph& h, Vertex x, Vertex y) {
    std::size_t count = 0;
    for (Vertex u = 0; u < h.order(); ++u)
        for (Vertex w = u + 1; w < h.order(); ++w) {
            if (u == x || u == y || w == x || w == y) continue;
            if (edge_listed(h, {x, u, w}) && edge_listed(h, {y, u, w})) ++count;
        }
    return count;
}

// Triples of {0..t-1} in lexicographic order; bit i of an edge mask is triple i.
inline std::vector<std::array<int, 3>> triples(int t) {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a < t; ++a)
        for (int b = a + 1; b < t; ++b)
            for (int c = b + 1; c < t; ++c) out.push_back({a, b, c});
    return out;
}

inline Hypergraph graph_from_mask(int t, std::uint32_t mask) {
    const auto all = triples(t);
    std::vector<std::vector<Vertex>> edges;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (mask >> i & 1) edges.push_back({all[i][0], all[i][1], all[i][2]});
    return build(3, t, edges);
}

struct SigmaTable {
    int t = 0;
    // min class size over all 3-partite realisations, 0 when not 3-partite
    std::vector<std::uint8_t> min_class;
    // 1 when some realisation is unbalanced
    std::vector<std::uint8_t> unbalanced;
};

// For every 3-graph on t <= 6 labelled vertices: enumerate all 3^t labelled
// colourings with non-empty classes and push the colouring's smallest class
// size to every edge set made of its transversal triples.
inline SigmaTable sigma_table(int t) {
    const auto all = triples(t);
    SigmaTable table;
    table.t = t;
    table.min_class.assign(std::size_t{1} << all.size(), 0);
    table.unbalanced.assign(std::size_t{1} << all.size(), 0);
    int colourings = 1;
    for (int i = 0; i < t; ++i) colourings *= 3;
    for (int code = 0; code < colourings; ++code) {
        std::array<int, 6> colour{};
        int sizes[3] = {0, 0, 0};
        for (int v = 0, c = code; v < t; ++v, c /= 3) {
            colour[static_cast<std::size_t>(v)] = c % 3;
            ++sizes[c % 3];
        }
        if (!sizes[0] || !sizes[1] || !sizes[2]) continue;
        std::uint32_t transversal = 0;
        for (std::size_t i = 0; i < all.size(); ++i) {
            const auto& e = all[i];
            if (colour[static_cast<std::size_t>(e[0])] != colour[static_cast<std::size_t>(e[1])] &&
                colour[static_cast<std::size_t>(e[1])] != colour[static_cast<std::size_t>(e[2])] &&
                colour[static_cast<std::size_t>(e[0])] != colour[static_cast<std::size_t>(e[2])])
                transversal |= 1u << i;
        }
        const int smallest = std::min({sizes[0], sizes[1], sizes[2]});
        const bool uneven = !(sizes[0] == sizes[1] && sizes[1] == sizes[2]);
        for (std::uint32_t sub = transversal;; sub = (sub - 1) & transversal) {
            auto& slot = table.min_class[sub];
            if (slot == 0 || smallest < slot) slot = static_cast<std::uint8_t>(smallest);
            if (uneven) table.unbalanced[sub] = 1;
            if (sub == 0) break;
        }
    }
    return table;
}

// ex(n, C4) by enumerating every graph on n <= 7 vertices.
inline int ex_c4(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    int best = 0;
    const std::uint32_t limit = std::uint32_t{1} << pairs.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        const int edges = std::popcount(mask);
        if (edges <= best) continue;
        std::array<std::uint32_t, 8> adj{};
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (mask >> i & 1) {
                adj[static_cast<std::size_t>(pairs[i].first)] |= 1u << pairs[i].second;
                adj[static_cast<std::size_t>(pairs[i].second)] |= 1u << pairs[i].first;
            }
        bool has_c4 = false;
        for (int a = 0; a < n && !has_c4; ++a)
            for (int b = a + 1; b < n && !has_c4; ++b)
                if (std::popcount(adj[static_cast<std::size_t>(a)] & adj[static_cast<std::size_t>(b)]) >= 2) has_c4 = true;
        if (!has_c4) best = edges;
    }
    return best;
}

// Random k-graph: each k-set kept with probability permille/1000.
inline Hypergraph random_graph(int k, int n, unsigned permille, std::mt19937_64& rng) {
    std::vector<std::vector<Vertex>> edges;
    std::vector<Vertex> e;
    auto recurse = [&](auto&& self, Vertex from) -> void {
        if (static_cast<int>(e.size()) == k) {
            if (rng() % 1000 < permille) edges.push_back(e);
            return;
        }
        for (Vertex v = from; v < n; ++v) {
            e.push_back(v);
            self(self, v + 1);
            e.pop_back();
        }
    };
    recurse(recurse, 0);
    return build(k, n, edges);
}

}  // namespace hypertile::oracle
