#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "budget.hpp"
#include "embedding.hpp"
#include "exact_cover.hpp"
#include "hypergraph.hpp"

namespace hypertile {

struct TilingCertificate {
    std::vector<Embedding> copies;
    VertexSet covered;
};

// A vertex set spanned by a copy of F, with one witnessing embedding.
struct CopySet {
    VertexSet vertices;
    Embedding witness;
};

struct CopySetList {
    std::vector<CopySet> copies;
    bool truncated = false;

    std::vector<VertexSet> sets() const {
        std::vector<VertexSet> out;
        for (const auto& c : copies) out.push_back(c.vertices);
        return out;
    }
};

enum class NoneReason { divisibility, exhaustive };

inline const char* to_string(NoneReason r) { return r == NoneReason::divisibility ? "divisibility" : "exhaustive"; }

struct TilingOutcome {
    std::optional<TilingCertificate> certificate;
    NoneReason reason = NoneReason::exhaustive;  // meaningful only without a certificate

    explicit operator bool() const noexcept { return certificate.has_value(); }
};

struct SearchOptions {
    std::uint64_t budget = budget_from_env();
    std::optional<std::size_t> limit;  // cap on returned copy sets
    bool divisibility_shortcut = true;
};

inline void check_same_uniformity(const Hypergraph& host, const Hypergraph& pattern) {
    if (host.uniformity() != pattern.uniformity()) throw Error("uniformity mismatch between host and pattern");
}

// Some copy of F in H, or none. Patterns of the form K^3(1,a,b) are searched
// through link graphs; everything else by generic backtracking.
inline std::optional<Embedding> contains_copy(const Hypergraph& host, const Hypergraph& pattern,
                                              const SearchOptions& options = {}) {
    check_same_uniformity(host, pattern);
    if (pattern.order() > host.order()) return std::nullopt;
    WorkCounter counter(options.budget, "copy search");
    if (auto shape = apex_shape(pattern)) return find_apex_copy(host, *shape, counter);
    return EmbeddingSearch(host, pattern).first(counter);
}

// Generic-route copy search, used as the cross-check for the link-graph route.
inline std::optional<Embedding> contains_copy_generic(const Hypergraph& host, const Hypergraph& pattern,
                                                      const SearchOptions& options = {}) {
    check_same_uniformity(host, pattern);
    WorkCounter counter(options.budget, "copy search");
    return EmbeddingSearch(host, pattern).first(counter);
}

// All |V(F)|-subsets of V(H) spanned by a copy of F, sorted lexicographically.
inline CopySetList enumerate_copy_sets(const Hypergraph& host, const Hypergraph& pattern,
                                       const SearchOptions& options = {}) {
    check_same_uniformity(host, pattern);
    CopySetList out;
    if (pattern.order() > host.order()) return out;
    WorkCounter counter(options.budget, "copy enumeration");
    std::map<VertexSet, Embedding> found;
    EmbeddingSearch search(host, pattern);
    search.for_each(
        [&](const std::vector<Vertex>& image) {
            VertexSet key(image);
            if (found.count(key)) return true;
            if (options.limit && found.size() == *options.limit) {
                out.truncated = true;
                return false;
            }
            found.emplace(std::move(key), Embedding{image});
            return true;
        },
        counter);
    out.copies.reserve(found.size());
    for (auto& [set, witness] : found) out.copies.push_back({set, std::move(witness)});
    return out;
}

// Spanning copy of F inside the vertex set `within` (|within| = |V(F)|).
inline std::optional<Embedding> spanning_copy(const Hypergraph& host, const Hypergraph& pattern, const VertexSet& within,
                                              WorkCounter& counter) {
    if (static_cast<int>(within.size()) != pattern.order()) return std::nullopt;
    std::vector<char> allowed(static_cast<std::size_t>(host.order()), 0);
    for (Vertex v : within) allowed[static_cast<std::size_t>(v)] = 1;
    return EmbeddingSearch(host, pattern).first(counter, allowed);
}

namespace detail {

inline TilingCertificate certificate_from(const std::vector<CopySet>& copies, const std::vector<std::size_t>& rows) {
    TilingCertificate cert;
    std::vector<Vertex> covered;
    for (auto r : rows) {
        cert.copies.push_back(copies[r].witness);
        covered.insert(covered.end(), copies[r].vertices.begin(), copies[r].vertices.end());
    }
    cert.covered = VertexSet(std::move(covered));
    return cert;
}

}  // namespace detail

// Perfect F-tiling by exact cover of V(H) with copy sets; none is either a
// divisibility failure or an exhausted search.
inline TilingOutcome has_perfect_tiling(const Hypergraph& host, const Hypergraph& pattern,
                                        const SearchOptions& options = {}) {
    check_same_uniformity(host, pattern);
    if (pattern.order() == 0) throw Error("pattern graph has no vertices");
    if (options.divisibility_shortcut && host.order() % pattern.order() != 0)
        return {std::nullopt, NoneReason::divisibility};
    SearchOptions enumerate = options;
    enumerate.limit.reset();
    const auto copies = enumerate_copy_sets(host, pattern, enumerate);
    const auto sets = copies.sets();
    ExactCover cover(host.order(), sets);
    WorkCounter counter(options.budget, "exact cover");
    if (auto rows = cover.solve(counter)) return {detail::certificate_from(copies.copies, *rows), NoneReason::exhaustive};
    return {std::nullopt, host.order() % pattern.order() != 0 ? NoneReason::divisibility : NoneReason::exhaustive};
}

struct MaxTiling {
    std::size_t size = 0;
    TilingCertificate certificate;
};

// Maximum number of vertex-disjoint copies of F, by branch and bound over copy
// sets. Vertices are decided in increasing order: covered by a copy whose
// smallest undecided vertex it is, or left uncovered.
inline MaxTiling max_tiling(const Hypergraph& host, const Hypergraph& pattern, const SearchOptions& options = {}) {
    check_same_uniformity(host, pattern);
    MaxTiling best;
    if (pattern.order() == 0 || pattern.order() > host.order()) return best;
    SearchOptions enumerate = options;
    enumerate.limit.reset();
    const auto copies = enumerate_copy_sets(host, pattern, enumerate);
    const int n = host.order();
    const auto t = static_cast<std::size_t>(pattern.order());
    std::vector<std::vector<std::size_t>> starting_at(static_cast<std::size_t>(n));
    std::vector<std::size_t> coverable(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < copies.copies.size(); ++i) {
        starting_at[static_cast<std::size_t>(copies.copies[i].vertices[0])].push_back(i);
        for (Vertex v : copies.copies[i].vertices) ++coverable[static_cast<std::size_t>(v)];
    }
    std::vector<char> decided(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> best_rows;
    WorkCounter counter(options.budget, "max tiling");
    const std::size_t ceiling = static_cast<std::size_t>(n) / t;

    // Undecided vertices that still appear in some copy avoiding decided vertices.
    auto live_count = [&] {
        std::vector<char> live(static_cast<std::size_t>(n), 0);
        for (const auto& c : copies.copies) {
            bool free = true;
            for (Vertex v : c.vertices)
                if (decided[static_cast<std::size_t>(v)]) {
                    free = false;
                    break;
                }
            if (free)
                for (Vertex v : c.vertices) live[static_cast<std::size_t>(v)] = 1;
        }
        return static_cast<std::size_t>(std::count(live.begin(), live.end(), 1));
    };

    auto recurse = [&](auto&& self, Vertex from) -> void {
        counter.tick();
        if (best.size == ceiling) return;
        Vertex v = from;
        while (v < n && (decided[static_cast<std::size_t>(v)] || coverable[static_cast<std::size_t>(v)] == 0)) ++v;
        if (v == n) {
            if (chosen.size() > best.size) {
                best.size = chosen.size();
                best_rows = chosen;
            }
            return;
        }
        if (chosen.size() + live_count() / t <= best.size) return;
        for (auto id : starting_at[static_cast<std::size_t>(v)]) {
            const auto& c = copies.copies[id];
            bool free = true;
            for (Vertex w : c.vertices)
                if (decided[static_cast<std::size_t>(w)]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            for (Vertex w : c.vertices) decided[static_cast<std::size_t>(w)] = 1;
            chosen.push_back(id);
            self(self, v + 1);
            chosen.pop_back();
            for (Vertex w : c.vertices) decided[static_cast<std::size_t>(w)] = 0;
        }
        decided[static_cast<std::size_t>(v)] = 1;
        self(self, v + 1);
        decided[static_cast<std::size_t>(v)] = 0;
    };
    recurse(recurse, 0);
    best.certificate = detail::certificate_from(copies.copies, [&] {
        auto rows = best_rows;
        std::sort(rows.begin(), rows.end());
        return rows;
    }());
    return best;
}

// Copy sets whose index vector against P equals t.
inline CopySetList copies_of_type(const Hypergraph& host, const Hypergraph& pattern, const Partition& p,
                                  const TypeVector& t, const SearchOptions& options = {}) {
    if (p.ground_size() != host.order()) throw Error("partition ground set differs from host");
    if (t.size() != p.size()) throw Error("type vector has wrong number of coordinates");
    if (!t.non_negative() || t.sum() != pattern.order()) throw Error("type vector must be non-negative and sum to |V(F)|");
    SearchOptions enumerate = options;
    enumerate.limit.reset();
    auto all = enumerate_copy_sets(host, pattern, enumerate);
    CopySetList out;
    for (auto& c : all.copies) {
        if (index_vector(p, c.vertices) != t) continue;
        if (options.limit && out.copies.size() == *options.limit) {
            out.truncated = true;
            break;
        }
        out.copies.push_back(std::move(c));
    }
    return out;
}

// Valid embeddings, pairwise disjoint, `covered` equal to their union, and
// (when `perfect`) covering every vertex of H.
inline bool verify_certificate(const Hypergraph& host, const Hypergraph& pattern, const TilingCertificate& c,
                               bool perfect = true) {
    if (host.uniformity() != pattern.uniformity()) return false;
    std::vector<char> seen(static_cast<std::size_t>(host.order()), 0);
    std::vector<Vertex> all;
    for (const auto& e : c.copies) {
        if (!is_embedding(host, pattern, e)) return false;
        for (Vertex v : e.image) {
            if (seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = 1;
            all.push_back(v);
        }
    }
    if (VertexSet(std::move(all)) != c.covered) return false;
    if (perfect && static_cast<int>(c.covered.size()) != host.order()) return false;
    return true;
}

}  // namespace hypertile
