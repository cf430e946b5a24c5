#pragma once

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "budget.hpp"
#include "error.hpp"
#include "hypergraph.hpp"
#include "invariants.hpp"

namespace hypertile {

// Injective map V(F) -> V(H); image[i] is the host vertex of pattern vertex i.
struct Embedding {
    std::vector<Vertex> image;

    VertexSet vertices() const { return VertexSet(image); }
    friend bool operator==(const Embedding&, const Embedding&) = default;
};

// True iff `image` is injective, in range, and maps every edge of F onto an edge of H.
inline bool is_embedding(const Hypergraph& host, const Hypergraph& pattern, const Embedding& e) {
    if (static_cast<int>(e.image.size()) != pattern.order()) return false;
    if (host.uniformity() != pattern.uniformity()) return false;
    std::vector<Vertex> sorted = e.image;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (Vertex v : sorted)
        if (v < 0 || v >= host.order()) return false;
    std::vector<Vertex> mapped(static_cast<std::size_t>(pattern.uniformity()));
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        auto fe = pattern.edge(i);
        for (std::size_t j = 0; j < fe.size(); ++j) mapped[j] = e.image[static_cast<std::size_t>(fe[j])];
        std::sort(mapped.begin(), mapped.end());
        if (!host.has_edge(mapped)) return false;
    }
    return true;
}

// Backtracking search for (not necessarily induced) copies of a pattern.
// Pattern vertices are placed in a connectivity-first order; each new vertex
// draws its candidates from the completions of an already-mapped edge remnant.
class EmbeddingSearch {
   public:
    EmbeddingSearch(const Hypergraph& host, const Hypergraph& pattern) : host_(host), pattern_(pattern) {
        if (host.uniformity() != pattern.uniformity()) throw Error("uniformity mismatch between host and pattern");
        plan();
    }

    // Calls visit(image) for every embedding in canonical order until it returns false.
    // `allowed`, when non-empty, restricts host vertices.
    template <typename Visit>
    void for_each(Visit&& visit, WorkCounter& counter, const std::vector<char>& allowed = {}) const {
        const int t = pattern_.order();
        if (t > host_.order()) return;
        std::vector<Vertex> image(static_cast<std::size_t>(t), -1);
        std::vector<char> used(static_cast<std::size_t>(host_.order()), 0);
        std::vector<Vertex> scratch(static_cast<std::size_t>(pattern_.uniformity()));
        bool stop = false;
        auto recurse = [&](auto&& self, std::size_t depth) -> void {
            if (depth == order_.size()) {
                if (!visit(static_cast<const std::vector<Vertex>&>(image))) stop = true;
                return;
            }
            const Vertex fv = order_[depth];
            const auto& step = steps_[depth];
            auto try_vertex = [&](Vertex hv) {
                counter.tick();
                if (used[static_cast<std::size_t>(hv)]) return;
                if (!allowed.empty() && !allowed[static_cast<std::size_t>(hv)]) return;
                if (host_.incident(hv).size() < step.min_degree) return;
                image[static_cast<std::size_t>(fv)] = hv;
                for (std::size_t c = step.seed_edge ? 1 : 0; c < step.closing.size(); ++c)
                    if (!edge_mapped(step.closing[c], image, scratch)) {
                        image[static_cast<std::size_t>(fv)] = -1;
                        return;
                    }
                used[static_cast<std::size_t>(hv)] = 1;
                self(self, depth + 1);
                used[static_cast<std::size_t>(hv)] = 0;
                image[static_cast<std::size_t>(fv)] = -1;
            };
            if (step.seed_edge) {
                auto fe = pattern_.edge(step.closing.front());
                std::vector<Vertex> rest;
                rest.reserve(fe.size() - 1);
                for (Vertex w : fe)
                    if (w != fv) rest.push_back(image[static_cast<std::size_t>(w)]);
                std::sort(rest.begin(), rest.end());
                for (Vertex hv : host_.completions(rest)) {
                    try_vertex(hv);
                    if (stop) return;
                }
            } else {
                for (Vertex hv = 0; hv < host_.order(); ++hv) {
                    try_vertex(hv);
                    if (stop) return;
                }
            }
        };
        recurse(recurse, 0);
    }

    std::optional<Embedding> first(WorkCounter& counter, const std::vector<char>& allowed = {}) const {
        std::optional<Embedding> found;
        for_each(
            [&](const std::vector<Vertex>& image) {
                found = Embedding{image};
                return false;
            },
            counter, allowed);
        return found;
    }

   private:
    struct Step {
        std::vector<std::uint32_t> closing;  // pattern edges completed by this vertex
        bool seed_edge = false;              // closing.front() supplies candidates
        std::size_t min_degree = 0;
    };

    bool edge_mapped(std::uint32_t edge_id, const std::vector<Vertex>& image, std::vector<Vertex>& scratch) const {
        auto fe = pattern_.edge(edge_id);
        for (std::size_t j = 0; j < fe.size(); ++j) scratch[j] = image[static_cast<std::size_t>(fe[j])];
        std::sort(scratch.begin(), scratch.end());
        return host_.has_edge(scratch);
    }

    void plan() {
        const int t = pattern_.order();
        std::vector<char> placed(static_cast<std::size_t>(t), 0);
        std::vector<std::size_t> degree(static_cast<std::size_t>(t), 0);
        for (Vertex v = 0; v < t; ++v) degree[static_cast<std::size_t>(v)] = pattern_.incident(v).size();
        for (int round = 0; round < t; ++round) {
            // Prefer the vertex closing the most edges, then the one touching the
            // most placed vertices, then the highest degree, then the smallest id.
            Vertex best = -1;
            std::tuple<std::size_t, std::size_t, std::size_t> best_score{};
            for (Vertex v = 0; v < t; ++v) {
                if (placed[static_cast<std::size_t>(v)]) continue;
                std::size_t closes = 0;
                std::size_t touches = 0;
                for (auto id : pattern_.incident(v)) {
                    std::size_t placed_others = 0;
                    for (Vertex w : pattern_.edge(id))
                        if (w != v && placed[static_cast<std::size_t>(w)]) ++placed_others;
                    if (placed_others == static_cast<std::size_t>(pattern_.uniformity() - 1)) ++closes;
                    touches += placed_others;
                }
                std::tuple<std::size_t, std::size_t, std::size_t> score{closes, touches, degree[static_cast<std::size_t>(v)]};
                if (best < 0 || score > best_score) {
                    best = v;
                    best_score = score;
                }
            }
            Step step;
            step.min_degree = degree[static_cast<std::size_t>(best)];
            for (auto id : pattern_.incident(best)) {
                bool closes = true;
                for (Vertex w : pattern_.edge(id))
                    if (w != best && !placed[static_cast<std::size_t>(w)]) closes = false;
                if (closes) step.closing.push_back(id);
            }
            step.seed_edge = !step.closing.empty();
            placed[static_cast<std::size_t>(best)] = 1;
            order_.push_back(best);
            steps_.push_back(std::move(step));
        }
    }

    const Hypergraph& host_;
    const Hypergraph& pattern_;
    std::vector<Vertex> order_;
    std::vector<Step> steps_;
};

// Class sizes of F if it is a complete 3-partite 3-graph K^3(1, a, b); the
// returned realisation lists the singleton class first.
struct ApexShape {
    PartiteRealisation realisation;
    int a = 0;
    int b = 0;
};

inline std::optional<ApexShape> apex_shape(const Hypergraph& pattern) {
    if (pattern.uniformity() != 3 || pattern.order() > max_pattern_order) return std::nullopt;
    for (const auto& r : realisations(pattern)) {
        const auto& parts = r.classes.parts();
        std::size_t product = 1;
        for (const auto& p : parts) product *= p.size();
        if (product != pattern.size()) continue;
        for (std::size_t apex = 0; apex < 3; ++apex) {
            if (parts[apex].size() != 1) continue;
            std::vector<VertexSet> ordered{parts[apex]};
            for (std::size_t j = 0; j < 3; ++j)
                if (j != apex) ordered.push_back(parts[j]);
            ApexShape shape{{Partition(pattern.order(), ordered)},
                            static_cast<int>(ordered[1].size()),
                            static_cast<int>(ordered[2].size())};
            return shape;
        }
    }
    return std::nullopt;
}

// Finds K^3(1, a, b) by scanning each host vertex v for a complete bipartite
// K^2(a, b) in the link graph of v.
inline std::optional<Embedding> find_apex_copy(const Hypergraph& host, const ApexShape& shape, WorkCounter& counter) {
    const int n = host.order();
    const bool swap = shape.a > shape.b;
    const int small = swap ? shape.b : shape.a;
    const int large = swap ? shape.a : shape.b;
    std::vector<boost::dynamic_bitset<std::uint64_t>> link(static_cast<std::size_t>(n), boost::dynamic_bitset<std::uint64_t>(static_cast<std::size_t>(n)));
    for (Vertex v = 0; v < n; ++v) {
        for (auto& row : link) row.reset();
        for (auto id : host.incident(v)) {
            Vertex pair[2];
            int w = 0;
            for (Vertex u : host.edge(id))
                if (u != v) pair[w++] = u;
            link[static_cast<std::size_t>(pair[0])].set(static_cast<std::size_t>(pair[1]));
            link[static_cast<std::size_t>(pair[1])].set(static_cast<std::size_t>(pair[0]));
        }
        std::vector<Vertex> side;
        std::optional<Embedding> found;
        auto grow = [&](auto&& self, Vertex from, const boost::dynamic_bitset<std::uint64_t>& common) -> bool {
            counter.tick();
            if (static_cast<int>(side.size()) == small) {
                std::vector<Vertex> other;
                for (auto pos = common.find_first(); pos != common.npos && static_cast<int>(other.size()) < large;
                     pos = common.find_next(pos))
                    other.push_back(static_cast<Vertex>(pos));
                const auto& classes = shape.realisation.classes;
                Embedding e{std::vector<Vertex>(static_cast<std::size_t>(classes.ground_size()), -1)};
                e.image[static_cast<std::size_t>(classes.part(0)[0])] = v;
                const auto& small_class = classes.part(swap ? 2 : 1);
                const auto& large_class = classes.part(swap ? 1 : 2);
                for (std::size_t i = 0; i < small_class.size(); ++i) e.image[static_cast<std::size_t>(small_class[i])] = side[i];
                for (std::size_t i = 0; i < large_class.size(); ++i) e.image[static_cast<std::size_t>(large_class[i])] = other[i];
                found = std::move(e);
                return true;
            }
            for (Vertex u = from; u < n; ++u) {
                if (u == v || link[static_cast<std::size_t>(u)].count() < static_cast<std::size_t>(large)) continue;
                auto next = side.empty() ? link[static_cast<std::size_t>(u)] : (common & link[static_cast<std::size_t>(u)]);
                if (next.count() < static_cast<std::size_t>(large)) continue;
                side.push_back(u);
                if (self(self, u + 1, next)) return true;
                side.pop_back();
            }
            return false;
        };
        if (grow(grow, 0, boost::dynamic_bitset<std::uint64_t>(static_cast<std::size_t>(n)))) return found;
    }
    return std::nullopt;
}

}  // namespace hypertile
