#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "hypergraph.hpp"
#include "rational.hpp"

namespace hypertile {

inline constexpr int max_pattern_order = 14;

// A partition of V(F) into k non-empty classes meeting every edge exactly once.
struct PartiteRealisation {
    Partition classes;

    std::vector<int> sorted_sizes() const {
        std::vector<int> sizes;
        for (const auto& part : classes.parts()) sizes.push_back(static_cast<int>(part.size()));
        std::sort(sizes.begin(), sizes.end());
        return sizes;
    }
};

struct InvariantReport {
    int order = 0;
    std::set<int> s_set;
    std::set<int> d_set;  // absolute class-size differences; always holds 0
    std::optional<int> gcd;
    Rational sigma;
    std::size_t realisation_count = 0;
};

enum class ThresholdCase { S1_or_gcdS_gt1, gcdF_eq1, gcdS1_gcdF_gt1, not_k_partite };

inline const char* to_string(ThresholdCase c) {
    switch (c) {
        case ThresholdCase::S1_or_gcdS_gt1: return "S1_or_gcdS_gt1";
        case ThresholdCase::gcdF_eq1: return "gcdF_eq1";
        case ThresholdCase::gcdS1_gcdF_gt1: return "gcdS1_gcdF_gt1";
        case ThresholdCase::not_k_partite: return "not_k_partite";
    }
    return "unknown";
}

struct ThresholdReport {
    ThresholdCase case_tag = ThresholdCase::not_k_partite;
    double value = 0.0;
    std::optional<int> p;
};

class NotKPartite : public Error {
   public:
    NotKPartite() : Error("pattern graph is not k-partite") {}
};

// Every k-partite realisation of F, each unordered partition listed once.
// Classes are labelled in order of their smallest vertex.
inline std::vector<PartiteRealisation> realisations(const Hypergraph& f) {
    const int t = f.order();
    const int k = f.uniformity();
    if (t > max_pattern_order)
        throw Error("pattern graph has " + std::to_string(t) + " vertices; limit is " + std::to_string(max_pattern_order));
    std::vector<PartiteRealisation> out;
    if (t < k) return out;

    // Edges grouped by their largest vertex, which is where they become checkable.
    std::vector<std::vector<std::uint32_t>> closing(static_cast<std::size_t>(t));
    for (std::size_t i = 0; i < f.size(); ++i)
        closing[static_cast<std::size_t>(f.edge(i).back())].push_back(static_cast<std::uint32_t>(i));

    std::vector<int> label(static_cast<std::size_t>(t), -1);
    auto consistent = [&](Vertex v) {
        for (auto id : closing[static_cast<std::size_t>(v)]) {
            std::uint32_t seen = 0;
            for (Vertex w : f.edge(id)) {
                const std::uint32_t bit = 1u << label[static_cast<std::size_t>(w)];
                if (seen & bit) return false;
                seen |= bit;
            }
        }
        return true;
    };

    auto emit = [&] {
        std::vector<std::vector<Vertex>> parts(static_cast<std::size_t>(k));
        for (Vertex v = 0; v < t; ++v) parts[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])].push_back(v);
        std::vector<VertexSet> sets;
        for (auto& p : parts) sets.emplace_back(std::move(p));
        out.push_back({Partition(t, std::move(sets))});
    };

    auto recurse = [&](auto&& self, Vertex v, int used) -> void {
        if (v == t) {
            if (used == k) emit();
            return;
        }
        if (k - used > t - v) return;
        for (int c = 0; c <= std::min(used, k - 1); ++c) {
            label[static_cast<std::size_t>(v)] = c;
            if (consistent(v)) self(self, v + 1, std::max(used, c + 1));
        }
        label[static_cast<std::size_t>(v)] = -1;
    };
    recurse(recurse, 0, 0);
    return out;
}

// Sorted class-size multiset -> first realisation with that profile.
inline std::map<std::vector<int>, Partition> size_profiles(const std::vector<PartiteRealisation>& all) {
    std::map<std::vector<int>, Partition> out;
    for (const auto& r : all) out.try_emplace(r.sorted_sizes(), r.classes);
    return out;
}

inline InvariantReport invariants(const Hypergraph& f) {
    const auto all = realisations(f);
    if (all.empty()) throw NotKPartite();
    InvariantReport report;
    report.order = f.order();
    report.realisation_count = all.size();
    report.d_set.insert(0);
    for (const auto& r : all) {
        const auto sizes = r.sorted_sizes();
        report.s_set.insert(sizes.begin(), sizes.end());
        for (int a : sizes)
            for (int b : sizes) report.d_set.insert(std::abs(a - b));
    }
    int g = 0;
    for (int d : report.d_set) g = std::gcd(g, d);
    if (g > 0) report.gcd = g;
    report.sigma = make_rational(*report.s_set.begin(), f.order());
    return report;
}

inline int gcd_of(const std::set<int>& values) {
    int g = 0;
    for (int v : values) g = std::gcd(g, v);
    return g;
}

inline int smallest_prime_factor(int x) {
    for (int d = 2; d * d <= x; ++d)
        if (x % d == 0) return d;
    return x;
}

// Case selection of Mycroft's codegree threshold and its branch value.
inline ThresholdReport mycroft_threshold(const InvariantReport& inv, std::int64_t n, const Rational& alpha) {
    if (n <= 0) throw Error("n must be positive");
    const double nd = static_cast<double>(n);
    const double slack = to_double(alpha) * nd;
    const double sigma_n = to_double(inv.sigma) * nd;
    ThresholdReport report;
    const bool only_one = inv.s_set == std::set<int>{1};
    if (only_one || gcd_of(inv.s_set) > 1) {
        report.case_tag = ThresholdCase::S1_or_gcdS_gt1;
        report.value = nd / 2.0 + slack;
    } else if (inv.gcd && *inv.gcd == 1) {
        report.case_tag = ThresholdCase::gcdF_eq1;
        report.value = sigma_n + slack;
    } else {
        // gcd(S) = 1 with S != {1} forces unequal classes somewhere, so gcd(F) exists.
        if (!inv.gcd) throw Error("internal: gcd(F) undefined in the third threshold case");
        report.case_tag = ThresholdCase::gcdS1_gcdF_gt1;
        report.p = smallest_prime_factor(*inv.gcd);
        report.value = std::max(sigma_n, nd / static_cast<double>(*report.p)) + slack;
    }
    return report;
}

inline ThresholdReport mycroft_threshold(const Hypergraph& f, std::int64_t n, const Rational& alpha) {
    return mycroft_threshold(invariants(f), n, alpha);
}

// upper bound on the K^3(m)-factor codegree threshold: n/2 + m^{1/m} n^{1-1/m}
inline double k3m_upper_bound(std::int64_t n, int m) {
    if (n < 1) throw Error("n must be at least 1");
    if (m < 2) throw Error("m must be at least 2");
    const double nd = static_cast<double>(n);
    return nd / 2.0 + std::pow(static_cast<double>(m), 1.0 / m) * std::pow(nd, 1.0 - 1.0 / m);
}

// codegree of a K^3(2)-factor-free construction: n/2 + sqrt(2n)/5 - 3
inline double k32_lower_bound(std::int64_t n) {
    if (n < 1) throw Error("n must be at least 1");
    const double nd = static_cast<double>(n);
    return nd / 2.0 + std::sqrt(2.0 * nd) / 5.0 - 3.0;
}

// Exact codegree condition for K^3_{m,m}-factors: floor(n/2)-1 if n = 1 mod 4, else ceil(n/2)-1.
inline std::int64_t c4_condition(std::int64_t n) {
    if (n < 1) throw Error("n must be at least 1");
    if (n % 4 == 1) return n / 2 - 1;
    return (n + 1) / 2 - 1;
}

// Kővári–Sós–Turán: ex(n, K^2(s,t)) <= ((t-1)^{1/s} n^{2-1/s} + (s+1) n) / 2
inline double kst_bound(std::int64_t n, int s, int t) {
    if (n < 1) throw Error("n must be at least 1");
    if (s < 2 || t < s) throw Error("need t >= s >= 2");
    const double nd = static_cast<double>(n);
    return 0.5 * (std::pow(static_cast<double>(t - 1), 1.0 / s) * std::pow(nd, 2.0 - 1.0 / s) + (s + 1) * nd);
}

}  // namespace hypertile
