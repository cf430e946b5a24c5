#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace hypertile {

using Vertex = std::int32_t;

// Sorted, duplicate-free list of vertex ids.
class VertexSet {
   public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> vertices) : VertexSet(std::vector<Vertex>(vertices)) {}
    explicit VertexSet(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
        std::sort(vertices_.begin(), vertices_.end());
        vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    }

    static VertexSet range(Vertex first, Vertex last) {
        std::vector<Vertex> v(static_cast<std::size_t>(std::max(0, last - first)));
        std::iota(v.begin(), v.end(), first);
        return VertexSet(std::move(v));
    }

    std::size_t size() const noexcept { return vertices_.size(); }
    bool empty() const noexcept { return vertices_.empty(); }
    Vertex operator[](std::size_t i) const { return vertices_[i]; }
    auto begin() const noexcept { return vertices_.begin(); }
    auto end() const noexcept { return vertices_.end(); }
    std::span<const Vertex> view() const noexcept { return vertices_; }
    const std::vector<Vertex>& values() const noexcept { return vertices_; }

    bool contains(Vertex v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

   private:
    std::vector<Vertex> vertices_;
};

// Intersection profile of a vertex set with a partition, or the part-type of an edge.
class TypeVector {
   public:
    TypeVector() = default;
    TypeVector(std::initializer_list<int> counts) : counts_(counts) {}
    explicit TypeVector(std::vector<int> counts) : counts_(std::move(counts)) {}

    std::size_t size() const noexcept { return counts_.size(); }
    int operator[](std::size_t i) const { return counts_[i]; }
    int& operator[](std::size_t i) { return counts_[i]; }
    int sum() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }
    bool non_negative() const {
        return std::all_of(counts_.begin(), counts_.end(), [](int c) { return c >= 0; });
    }
    const std::vector<int>& values() const noexcept { return counts_; }

    friend bool operator==(const TypeVector&, const TypeVector&) = default;
    friend auto operator<=>(const TypeVector&, const TypeVector&) = default;

   private:
    std::vector<int> counts_;
};

class Partition {
   public:
    Partition() = default;

    Partition(int ground_size, std::vector<VertexSet> parts, bool allow_empty = false)
        : ground_size_(ground_size), parts_(std::move(parts)), part_of_(static_cast<std::size_t>(ground_size), -1) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i].empty() && !allow_empty) throw Error("partition part " + std::to_string(i) + " is empty");
            for (Vertex v : parts_[i]) {
                if (v < 0 || v >= ground_size) throw Error("partition vertex " + std::to_string(v) + " out of range");
                if (part_of_[static_cast<std::size_t>(v)] != -1)
                    throw Error("partition parts overlap at vertex " + std::to_string(v));
                part_of_[static_cast<std::size_t>(v)] = static_cast<int>(i);
            }
        }
        for (int v = 0; v < ground_size; ++v)
            if (part_of_[static_cast<std::size_t>(v)] == -1)
                throw Error("partition does not cover vertex " + std::to_string(v));
    }

    int ground_size() const noexcept { return ground_size_; }
    std::size_t size() const noexcept { return parts_.size(); }
    const VertexSet& part(std::size_t i) const { return parts_[i]; }
    const std::vector<VertexSet>& parts() const noexcept { return parts_; }
    int part_of(Vertex v) const { return part_of_[static_cast<std::size_t>(v)]; }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.ground_size_ == b.ground_size_ && a.parts_ == b.parts_;
    }

   private:
    int ground_size_ = 0;
    std::vector<VertexSet> parts_;
    std::vector<int> part_of_;
};

namespace detail {

// Packs a sorted tuple base n, big-endian, so key order equals lexicographic order.
inline std::uint64_t pack(std::span<const Vertex> sorted, int n) {
    std::uint64_t key = 0;
    for (Vertex v : sorted) key = key * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(v);
    return key;
}

inline bool power_fits(int n, int exponent, std::uint64_t cap) {
    std::uint64_t acc = 1;
    for (int i = 0; i < exponent; ++i) {
        if (acc > cap / static_cast<std::uint64_t>(std::max(n, 1))) return false;
        acc *= static_cast<std::uint64_t>(std::max(n, 1));
    }
    return true;
}

}  // namespace detail

// k-uniform hypergraph on vertices 0..n-1. Immutable once built.
class Hypergraph {
   public:
    Hypergraph() : Hypergraph(2, 0) {}

    Hypergraph(int k, int n) : k_(k), n_(n), incident_(static_cast<std::size_t>(n)) {
        if (k < 1) throw Error("uniformity must be positive");
        if (n < 0) throw Error("vertex count must be non-negative");
        if (!detail::power_fits(n, k, std::uint64_t{1} << 62))
            throw Error("graph too large: n^k must stay below 2^62");
    }

    // Edges must already be sorted tuples of k distinct in-range vertices.
    Hypergraph(int k, int n, std::vector<std::vector<Vertex>> canonical_edges) : Hypergraph(k, n) {
        std::sort(canonical_edges.begin(), canonical_edges.end());
        canonical_edges.erase(std::unique(canonical_edges.begin(), canonical_edges.end()), canonical_edges.end());
        flat_.reserve(canonical_edges.size() * static_cast<std::size_t>(k));
        for (const auto& e : canonical_edges) flat_.insert(flat_.end(), e.begin(), e.end());
        index();
    }

    int uniformity() const noexcept { return k_; }
    int order() const noexcept { return n_; }
    std::size_t size() const noexcept { return keys_.size(); }

    std::span<const Vertex> edge(std::size_t i) const {
        return {flat_.data() + i * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
    }

    std::vector<VertexSet> edges() const {
        std::vector<VertexSet> out;
        out.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) out.emplace_back(std::vector<Vertex>(edge(i).begin(), edge(i).end()));
        return out;
    }

    // `sorted` must be a strictly increasing k-tuple of in-range vertices.
    bool has_edge(std::span<const Vertex> sorted) const {
        const std::uint64_t key = detail::pack(sorted, n_);
        if (!dense_.empty()) return (dense_[key >> 6] >> (key & 63)) & 1;
        return std::binary_search(keys_.begin(), keys_.end(), key);
    }

    const std::vector<std::uint32_t>& incident(Vertex v) const { return incident_[static_cast<std::size_t>(v)]; }

    // Vertices w such that `sorted` ∪ {w} is an edge; `sorted` has k-1 entries.
    std::span<const Vertex> completions(std::span<const Vertex> sorted) const {
        const std::uint64_t key = detail::pack(sorted, n_);
        auto lo = std::lower_bound(completion_keys_.begin(), completion_keys_.end(), key);
        auto hi = std::upper_bound(lo, completion_keys_.end(), key);
        const auto first = static_cast<std::size_t>(lo - completion_keys_.begin());
        return {completion_vertices_.data() + first, static_cast<std::size_t>(hi - lo)};
    }

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.k_ == b.k_ && a.n_ == b.n_ && a.flat_ == b.flat_;
    }

   private:
    void index() {
        const std::size_t m = flat_.size() / static_cast<std::size_t>(k_);
        keys_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            keys_[i] = detail::pack(edge(i), n_);
            for (Vertex v : edge(i)) incident_[static_cast<std::size_t>(v)].push_back(static_cast<std::uint32_t>(i));
        }
        if (detail::power_fits(n_, k_, std::uint64_t{1} << 26)) {
            std::uint64_t cells = 1;
            for (int i = 0; i < k_; ++i) cells *= static_cast<std::uint64_t>(std::max(n_, 1));
            dense_.assign(cells / 64 + 1, 0);
            for (auto key : keys_) dense_[key >> 6] |= std::uint64_t{1} << (key & 63);
        }
        std::vector<std::pair<std::uint64_t, Vertex>> completions;
        completions.reserve(m * static_cast<std::size_t>(k_));
        std::vector<Vertex> rest(static_cast<std::size_t>(k_ - 1));
        for (std::size_t i = 0; i < m; ++i) {
            auto e = edge(i);
            for (int j = 0; j < k_; ++j) {
                std::size_t w = 0;
                for (int l = 0; l < k_; ++l)
                    if (l != j) rest[w++] = e[static_cast<std::size_t>(l)];
                completions.emplace_back(detail::pack(rest, n_), e[static_cast<std::size_t>(j)]);
            }
        }
        std::sort(completions.begin(), completions.end());
        completion_keys_.resize(completions.size());
        completion_vertices_.resize(completions.size());
        for (std::size_t i = 0; i < completions.size(); ++i) {
            completion_keys_[i] = completions[i].first;
            completion_vertices_[i] = completions[i].second;
        }
    }

    int k_;
    int n_;
    std::vector<Vertex> flat_;
    std::vector<std::uint64_t> keys_;
    std::vector<std::uint64_t> dense_;
    std::vector<std::vector<std::uint32_t>> incident_;
    std::vector<std::uint64_t> completion_keys_;
    std::vector<Vertex> completion_vertices_;
};

// A derived graph plus the map from its vertex ids back to the host's.
struct Relabeled {
    Hypergraph graph;
    std::vector<Vertex> to_original;
};

inline Hypergraph build(int k, int n, const std::vector<std::vector<Vertex>>& edges) {
    if (k < 2) throw Error("uniformity must be at least 2");
    if (n < 0) throw Error("vertex count must be non-negative");
    std::vector<std::vector<Vertex>> canonical;
    canonical.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::vector<Vertex> e = edges[i];
        if (static_cast<int>(e.size()) != k)
            throw InvalidEdge(i, "has " + std::to_string(e.size()) + " vertices, expected " + std::to_string(k));
        for (Vertex v : e)
            if (v < 0 || v >= n) throw InvalidEdge(i, "vertex " + std::to_string(v) + " out of range");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw InvalidEdge(i, "repeated vertex");
        canonical.push_back(std::move(e));
    }
    return Hypergraph(k, n, std::move(canonical));
}

namespace detail {

inline void check_vertices(const Hypergraph& h, const VertexSet& s) {
    for (Vertex v : s)
        if (v < 0 || v >= h.order()) throw Error("vertex " + std::to_string(v) + " out of range");
}

inline bool includes(std::span<const Vertex> sorted_edge, const VertexSet& s) {
    return std::includes(sorted_edge.begin(), sorted_edge.end(), s.begin(), s.end());
}

}  // namespace detail

// d_H(S). For |S| = k this is edge membership (0 or 1).
inline std::size_t degree(const Hypergraph& h, const VertexSet& s) {
    detail::check_vertices(h, s);
    if (static_cast<int>(s.size()) > h.uniformity()) throw Error("degree query set larger than uniformity");
    if (s.empty()) return h.size();
    if (static_cast<int>(s.size()) == h.uniformity()) return h.has_edge(s.view()) ? 1 : 0;
    if (static_cast<int>(s.size()) == h.uniformity() - 1) return h.completions(s.view()).size();
    Vertex pivot = s[0];
    for (Vertex v : s)
        if (h.incident(v).size() < h.incident(pivot).size()) pivot = v;
    std::size_t count = 0;
    for (auto id : h.incident(pivot))
        if (detail::includes(h.edge(id), s)) ++count;
    return count;
}

// δ_s(H): exact minimum of d_H(S) over all s-subsets.
inline std::size_t min_s_degree(const Hypergraph& h, int s) {
    if (s < 0 || s >= h.uniformity()) throw Error("s must lie in [0, k-1]");
    if (h.order() < s) throw Error("fewer vertices than s");
    if (s == 0) return h.size();
    // Count the s-subsets of every edge; any s-set never seen has degree 0.
    std::unordered_map<std::uint64_t, std::size_t> counts;
    std::vector<int> pick(static_cast<std::size_t>(s));
    std::vector<Vertex> sub(static_cast<std::size_t>(s));
    const int k = h.uniformity();
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto e = h.edge(i);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            for (int j = 0; j < s; ++j) sub[static_cast<std::size_t>(j)] = e[static_cast<std::size_t>(pick[static_cast<std::size_t>(j)])];
            ++counts[detail::pack(sub, h.order())];
            int j = s - 1;
            while (j >= 0 && pick[static_cast<std::size_t>(j)] == k - s + j) --j;
            if (j < 0) break;
            ++pick[static_cast<std::size_t>(j)];
            for (int l = j + 1; l < s; ++l) pick[static_cast<std::size_t>(l)] = pick[static_cast<std::size_t>(l - 1)] + 1;
        }
    }
    // C(n, s) compared without overflow: only the "all s-sets seen" case matters.
    std::uint64_t total = 1;
    bool exceeds = false;
    for (int j = 1; j <= s; ++j) {
        total = total * static_cast<std::uint64_t>(h.order() - s + j) / static_cast<std::uint64_t>(j);
        if (total > counts.size()) {
            exceeds = true;
            break;
        }
    }
    if (exceeds || counts.size() < total) return 0;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& [key, count] : counts) best = std::min(best, count);
    return best;
}

// N_H(S): all T with S ∪ T ∈ E(H).
inline std::vector<VertexSet> neighborhood(const Hypergraph& h, const VertexSet& s) {
    detail::check_vertices(h, s);
    if (static_cast<int>(s.size()) >= h.uniformity()) throw Error("neighborhood requires |S| < k");
    std::vector<VertexSet> out;
    auto collect = [&](std::size_t id) {
        auto e = h.edge(id);
        if (!detail::includes(e, s)) return;
        std::vector<Vertex> rest;
        std::set_difference(e.begin(), e.end(), s.begin(), s.end(), std::back_inserter(rest));
        out.emplace_back(std::move(rest));
    };
    if (s.empty()) {
        for (std::size_t i = 0; i < h.size(); ++i) collect(i);
    } else {
        for (auto id : h.incident(s[0])) collect(id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// The (k-|S|)-graph on V(H) \ S with edge set N_H(S), relabeled to 0..n-|S|-1.
inline Relabeled link_graph(const Hypergraph& h, const VertexSet& s) {
    detail::check_vertices(h, s);
    if (static_cast<int>(s.size()) >= h.uniformity()) throw Error("link graph requires |S| < k");
    std::vector<Vertex> to_original;
    std::vector<Vertex> to_local(static_cast<std::size_t>(h.order()), -1);
    for (Vertex v = 0; v < h.order(); ++v) {
        if (s.contains(v)) continue;
        to_local[static_cast<std::size_t>(v)] = static_cast<Vertex>(to_original.size());
        to_original.push_back(v);
    }
    if (s.empty()) return {h, std::move(to_original)};
    std::vector<std::vector<Vertex>> edges;
    for (const auto& t : neighborhood(h, s)) {
        std::vector<Vertex> e;
        for (Vertex v : t) e.push_back(to_local[static_cast<std::size_t>(v)]);
        edges.push_back(std::move(e));
    }
    const int k = h.uniformity() - static_cast<int>(s.size());
    return {Hypergraph(k, static_cast<int>(to_original.size()), std::move(edges)), std::move(to_original)};
}

// H[U], relabeled so that U's i-th vertex becomes i.
inline Relabeled induced(const Hypergraph& h, const VertexSet& u) {
    detail::check_vertices(h, u);
    std::vector<Vertex> to_local(static_cast<std::size_t>(h.order()), -1);
    for (std::size_t i = 0; i < u.size(); ++i) to_local[static_cast<std::size_t>(u[i])] = static_cast<Vertex>(i);
    std::vector<std::vector<Vertex>> edges;
    for (Vertex v : u)
        for (auto id : h.incident(v)) {
            auto e = h.edge(id);
            if (e[0] != v) continue;  // visit each edge once, from its smallest vertex
            bool inside = true;
            std::vector<Vertex> local;
            for (Vertex w : e) {
                if (to_local[static_cast<std::size_t>(w)] < 0) {
                    inside = false;
                    break;
                }
                local.push_back(to_local[static_cast<std::size_t>(w)]);
            }
            if (inside) edges.push_back(std::move(local));
        }
    return {Hypergraph(h.uniformity(), static_cast<int>(u.size()), std::move(edges)), u.values()};
}

inline TypeVector index_vector(const Partition& p, std::span<const Vertex> s) {
    std::vector<int> counts(p.size(), 0);
    for (Vertex v : s) {
        if (v < 0 || v >= p.ground_size()) throw Error("vertex " + std::to_string(v) + " outside partition");
        ++counts[static_cast<std::size_t>(p.part_of(v))];
    }
    return TypeVector(std::move(counts));
}

inline TypeVector index_vector(const Partition& p, const VertexSet& s) { return index_vector(p, s.view()); }

// Number of edges whose intersection profile with P equals t.
inline std::size_t edge_type_count(const Hypergraph& h, const Partition& p, const TypeVector& t) {
    if (p.ground_size() != h.order()) throw Error("partition ground set differs from graph");
    if (t.size() != p.size()) throw Error("type vector has wrong number of coordinates");
    if (!t.non_negative() || t.sum() != h.uniformity()) throw Error("type vector must be non-negative and sum to k");
    std::size_t count = 0;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (index_vector(p, h.edge(i)) == t) ++count;
    return count;
}

}  // namespace hypertile
