#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "budget.hpp"
#include "constructions.hpp"
#include "hypergraph.hpp"
#include "rational.hpp"
#include "solver.hpp"

namespace hypertile {

struct ProbeOptions {
    std::uint64_t budget = budget_from_env();
    unsigned threads = 1;
};

namespace detail {

inline BigInt binomial(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0;
    BigInt out = 1;
    for (std::int64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

// Whether H[U] has a perfect F-tiling.
inline bool has_factor_on(const Hypergraph& host, const Hypergraph& pattern, const VertexSet& u, std::uint64_t budget) {
    if (u.size() % static_cast<std::size_t>(pattern.order()) != 0) return false;
    if (static_cast<int>(u.size()) == pattern.order()) {
        WorkCounter counter(budget, "spanning copy");
        return spanning_copy(host, pattern, u, counter).has_value();
    }
    SearchOptions options;
    options.budget = budget;
    return has_perfect_tiling(induced(host, u).graph, pattern, options).certificate.has_value();
}

}  // namespace detail

// Number of (x,y)-connectors of length i: sets S avoiding x and y with
// |S| = t*i - 1 such that both H[S ∪ {x}] and H[S ∪ {y}] have F-factors.
inline std::uint64_t count_connectors(const Hypergraph& host, const Hypergraph& pattern, Vertex x, Vertex y, int i,
                                      const ProbeOptions& options = {}) {
    check_same_uniformity(host, pattern);
    const int n = host.order();
    if (x == y) throw Error("connector endpoints must differ");
    if (x < 0 || y < 0 || x >= n || y >= n) throw Error("connector endpoint out of range");
    if (i < 1) throw Error("connector length must be at least 1");
    const int size = pattern.order() * i - 1;
    if (size < 0 || size > n - 2) throw Error("connector size t*i-1 exceeds n-2");
    if (detail::binomial(n - 2, size) > BigInt(options.budget))
        throw BudgetExceeded("C(n-2, t*i-1) candidate connectors exceed " + std::to_string(options.budget));

    std::vector<Vertex> pool;
    for (Vertex v = 0; v < n; ++v)
        if (v != x && v != y) pool.push_back(v);
    const unsigned workers = std::max(1u, options.threads);
    std::vector<std::uint64_t> partial(workers, 0);
    auto work = [&](unsigned id) {
        std::uint64_t index = 0;
        detail::for_each_subset(pool, size, [&](const std::vector<Vertex>& s) {
            if (index++ % workers != id) return;
            std::vector<Vertex> with_x = s;
            with_x.push_back(x);
            if (!detail::has_factor_on(host, pattern, VertexSet(std::move(with_x)), options.budget)) return;
            std::vector<Vertex> with_y = s;
            with_y.push_back(y);
            if (detail::has_factor_on(host, pattern, VertexSet(std::move(with_y)), options.budget)) ++partial[id];
        });
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool_threads;
        for (unsigned id = 0; id < workers; ++id) pool_threads.emplace_back(work, id);
        for (auto& th : pool_threads) th.join();
    }
    return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

struct CloseReport {
    bool close = false;
    std::uint64_t connectors = 0;
    Rational threshold;  // eta * n^{t*i - 1}
};

inline CloseReport closeness(const Hypergraph& host, const Hypergraph& pattern, Vertex x, Vertex y, int i,
                             const Rational& eta, const ProbeOptions& options = {}) {
    if (eta < 0) throw Error("eta must be non-negative");
    CloseReport r;
    r.connectors = count_connectors(host, pattern, x, y, i, options);
    r.threshold = eta * Rational(ipow(host.order(), static_cast<unsigned>(pattern.order() * i - 1)));
    r.close = Rational(r.connectors) >= r.threshold;
    return r;
}

inline bool is_close(const Hypergraph& host, const Hypergraph& pattern, Vertex x, Vertex y, int i, const Rational& eta,
                     const ProbeOptions& options = {}) {
    return closeness(host, pattern, x, y, i, eta, options).close;
}

// Every pair of distinct vertices of U is (i, eta)-close.
inline bool closed_set(const Hypergraph& host, const Hypergraph& pattern, const VertexSet& u, int i, const Rational& eta,
                       const ProbeOptions& options = {}) {
    for (std::size_t a = 0; a < u.size(); ++a)
        for (std::size_t b = a + 1; b < u.size(); ++b)
            if (!is_close(host, pattern, u[a], u[b], i, eta, options)) return false;
    return true;
}

struct RobustVectorReport {
    std::map<TypeVector, std::uint64_t> counts;
    Rational mu;
    Rational threshold;  // mu * n^t
    std::vector<TypeVector> robust_set;
    std::uint64_t total = 0;
    std::size_t parts = 0;
};

// Copy sets of F grouped by index vector; robust vectors have >= mu n^t copies.
inline RobustVectorReport robust_vectors(const Hypergraph& host, const Hypergraph& pattern, const Partition& p,
                                         const Rational& mu, const ProbeOptions& options = {}) {
    if (p.ground_size() != host.order()) throw Error("partition ground set differs from host");
    if (mu < 0) throw Error("mu must be non-negative");
    SearchOptions search;
    search.budget = options.budget;
    const auto copies = enumerate_copy_sets(host, pattern, search);
    RobustVectorReport report;
    report.mu = mu;
    report.parts = p.size();
    report.threshold = mu * Rational(ipow(host.order(), static_cast<unsigned>(pattern.order())));
    for (const auto& c : copies.copies) ++report.counts[index_vector(p, c.vertices)];
    report.total = copies.copies.size();
    for (const auto& [vec, count] : report.counts)
        if (Rational(count) >= report.threshold) report.robust_set.push_back(vec);
    return report;
}

namespace detail {

// Row-style Hermite reduction of integer generators; returns echelon rows.
inline std::vector<std::vector<BigInt>> echelon(std::vector<std::vector<BigInt>> rows, std::size_t dim) {
    std::vector<std::vector<BigInt>> out;
    for (std::size_t col = 0; col < dim && !rows.empty(); ++col) {
        // Euclid on column `col` until at most one row is non-zero there.
        while (true) {
            std::size_t pivot = rows.size();
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (rows[r][col] != 0 && (pivot == rows.size() || abs(rows[r][col]) < abs(rows[pivot][col]))) pivot = r;
            if (pivot == rows.size()) break;
            bool reduced = false;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r == pivot || rows[r][col] == 0) continue;
                const BigInt factor = rows[r][col] / rows[pivot][col];
                for (std::size_t c = col; c < dim; ++c) rows[r][c] -= factor * rows[pivot][c];
                reduced = true;
            }
            if (!reduced) {
                out.push_back(rows[pivot]);
                rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pivot));
                break;
            }
        }
        rows.erase(std::remove_if(rows.begin(), rows.end(),
                                  [](const auto& row) { return std::all_of(row.begin(), row.end(), [](const BigInt& x) { return x == 0; }); }),
                   rows.end());
    }
    return out;
}

}  // namespace detail

// Whether `target` lies in the integer lattice spanned by `generators`.
inline bool in_lattice(const std::vector<std::vector<BigInt>>& generators, std::vector<BigInt> target) {
    const std::size_t dim = target.size();
    for (const auto& g : generators)
        if (g.size() != dim) throw Error("lattice generator has wrong dimension");
    const auto rows = detail::echelon(generators, dim);
    std::size_t next = 0;
    for (std::size_t col = 0; col < dim; ++col) {
        const bool is_pivot = next < rows.size() && rows[next][col] != 0 &&
                              std::all_of(rows[next].begin(), rows[next].begin() + static_cast<std::ptrdiff_t>(col),
                                          [](const BigInt& x) { return x == 0; });
        if (!is_pivot) {
            if (target[col] != 0) return false;
            continue;
        }
        const auto& row = rows[next++];
        if (target[col] % row[col] != 0) return false;
        const BigInt factor = target[col] / row[col];
        for (std::size_t c = col; c < dim; ++c) target[c] -= factor * row[c];
    }
    return std::all_of(target.begin(), target.end(), [](const BigInt& x) { return x == 0; });
}

// Whether u_j - u_l lies in the lattice generated by the robust vectors.
inline bool has_transferral(const RobustVectorReport& report, std::size_t j, std::size_t l) {
    if (j == l) throw Error("transferral needs distinct parts");
    if (j >= report.parts || l >= report.parts) throw Error("transferral part index out of range");
    std::vector<std::vector<BigInt>> gens;
    for (const auto& v : report.robust_set) {
        std::vector<BigInt> row;
        for (int c : v.values()) row.emplace_back(c);
        gens.push_back(std::move(row));
    }
    std::vector<BigInt> target(report.parts, 0);
    target[j] = 1;
    target[l] = -1;
    return in_lattice(gens, std::move(target));
}

struct VertexGoodness {
    Vertex vertex = 0;
    std::uint64_t missing_degree = 0;  // d_{G \ H}(v)
    bool good = false;
};

struct GoodnessReport {
    Rational threshold;  // alpha * n^{k-1}
    std::vector<VertexGoodness> vertices;
};

inline void check_same_ground(const Hypergraph& h, const Hypergraph& g) {
    if (h.order() != g.order() || h.uniformity() != g.uniformity())
        throw Error("graphs must share vertex set and uniformity");
}

// v is alpha-good when at most alpha n^{k-1} edges of G at v are missing from H.
inline GoodnessReport classify_goodness(const Hypergraph& h, const Hypergraph& g, const Rational& alpha) {
    check_same_ground(h, g);
    GoodnessReport report;
    report.threshold = alpha * Rational(ipow(h.order(), static_cast<unsigned>(h.uniformity() - 1)));
    for (Vertex v = 0; v < g.order(); ++v) {
        std::uint64_t missing = 0;
        for (auto id : g.incident(v))
            if (!h.has_edge(g.edge(id))) ++missing;
        report.vertices.push_back({v, missing, Rational(missing) <= report.threshold});
    }
    return report;
}

inline std::uint64_t missing_edges(const Hypergraph& h, const Hypergraph& g) {
    check_same_ground(h, g);
    std::uint64_t missing = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (!h.has_edge(g.edge(i))) ++missing;
    return missing;
}

// |E(G) \ E(H)| <= gamma |V|^3
inline bool gamma_contains(const Hypergraph& h, const Hypergraph& g, const Rational& gamma) {
    return Rational(missing_edges(h, g)) <= gamma * Rational(ipow(h.order(), 3));
}

struct ExtremalReport {
    std::optional<Partition> witness;
    bool exact = true;               // false when found by local search
    std::uint64_t best_missing = 0;  // fewest missing B[A,B] edges seen
    Rational threshold;              // gamma n^3
};

inline constexpr int exhaustive_extremal_limit = 16;

namespace detail {

// Number of edges of B[A,B] absent from H, with A given as a membership mask.
inline std::uint64_t missing_b_edges(const Hypergraph& h, const std::vector<char>& in_a) {
    std::int64_t a = std::count(in_a.begin(), in_a.end(), 1);
    std::int64_t b = static_cast<std::int64_t>(in_a.size()) - a;
    const std::int64_t total = a * (a - 1) * (a - 2) / 6 + a * (b * (b - 1) / 2);
    std::int64_t present = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        int hits = 0;
        for (Vertex v : h.edge(i)) hits += in_a[static_cast<std::size_t>(v)];
        if (hits % 2 == 1) ++present;
    }
    return static_cast<std::uint64_t>(total - present);
}

inline Partition split(int n, const std::vector<char>& in_a) {
    std::vector<Vertex> a;
    std::vector<Vertex> b;
    for (Vertex v = 0; v < n; ++v) (in_a[static_cast<std::size_t>(v)] ? a : b).push_back(v);
    return Partition(n, {VertexSet(std::move(a)), VertexSet(std::move(b))}, true);
}

}  // namespace detail

// A balanced A ∪ B (|A| = floor(n/2)) with H gamma-containing B[A,B].
// Exhaustive for n <= 16, otherwise a swap-based local search.
inline ExtremalReport extremal_witness(const Hypergraph& h, const Rational& gamma) {
    if (h.uniformity() != 3) throw Error("extremality is defined for 3-graphs");
    const int n = h.order();
    ExtremalReport report;
    report.threshold = gamma * Rational(ipow(n, 3));
    const int a = n / 2;
    std::vector<char> best_mask;
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    if (n <= exhaustive_extremal_limit) {
        std::vector<Vertex> all;
        for (Vertex v = 0; v < n; ++v) all.push_back(v);
        detail::for_each_subset(all, a, [&](const std::vector<Vertex>& subset) {
            std::vector<char> mask(static_cast<std::size_t>(n), 0);
            for (Vertex v : subset) mask[static_cast<std::size_t>(v)] = 1;
            const auto missing = detail::missing_b_edges(h, mask);
            if (missing < best) {
                best = missing;
                best_mask = std::move(mask);
            }
        });
    } else {
        report.exact = false;
        // Two deterministic starts: prefix split and alternating split.
        for (int start = 0; start < 2; ++start) {
            std::vector<char> mask(static_cast<std::size_t>(n), 0);
            for (int i = 0, placed = 0; i < n && placed < a; ++i)
                if (start == 0 || i % 2 == 0) {
                    mask[static_cast<std::size_t>(i)] = 1;
                    ++placed;
                }
            while (std::count(mask.begin(), mask.end(), 1) < a)
                *std::find(mask.begin(), mask.end(), 0) = 1;
            auto current = detail::missing_b_edges(h, mask);
            bool improved = true;
            while (improved) {
                improved = false;
                for (Vertex u = 0; u < n && !improved; ++u) {
                    if (!mask[static_cast<std::size_t>(u)]) continue;
                    for (Vertex w = 0; w < n; ++w) {
                        if (mask[static_cast<std::size_t>(w)]) continue;
                        mask[static_cast<std::size_t>(u)] = 0;
                        mask[static_cast<std::size_t>(w)] = 1;
                        const auto candidate = detail::missing_b_edges(h, mask);
                        if (candidate < current) {
                            current = candidate;
                            improved = true;
                            break;
                        }
                        mask[static_cast<std::size_t>(u)] = 1;
                        mask[static_cast<std::size_t>(w)] = 0;
                    }
                }
            }
            if (current < best) {
                best = current;
                best_mask = mask;
            }
        }
    }
    report.best_missing = best;
    if (!best_mask.empty() && Rational(best) <= report.threshold) report.witness = detail::split(n, best_mask);
    return report;
}

}  // namespace hypertile
