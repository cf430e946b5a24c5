#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "budget.hpp"
#include "constructions.hpp"
#include "hypergraph.hpp"
#include "invariants.hpp"
#include "io.hpp"
#include "oracles.hpp"
#include "probes.hpp"
#include "solver.hpp"

namespace hypertile {

struct ExperimentReport {
    std::string name;
    json parameters = json::object();
    std::vector<json> rows;

    // Rows without a "pass" field count as passing.
    bool all_pass() const {
        for (const auto& r : rows)
            if (r.contains("pass") && !r.at("pass").get<bool>()) return false;
        return true;
    }

    json to_json() const {
        return {{"schema_version", report_schema_version}, {"experiment", name}, {"parameters", parameters},
                {"rows", rows}};
    }
};

// Pattern graphs used throughout.
inline Hypergraph single_edge(int k = 3) {
    std::vector<Vertex> e;
    for (Vertex v = 0; v < k; ++v) e.push_back(v);
    return build(k, k, {e});
}

inline Hypergraph k3(int m) { return complete_k_partite({m, m, m}).graph; }
inline Hypergraph k3_apex(int a, int b) { return complete_k_partite({1, a, b}).graph; }
inline Hypergraph k3_st(int s, int t) { return k_st(3, s, t).graph; }

inline std::int64_t expected_b_codegree(std::int64_t n) {
    return n % 4 == 1 ? n / 2 - 2 : (n + 1) / 2 - 2;
}

namespace detail {

inline json factor_verdict(const Hypergraph& host, const Hypergraph& pattern, std::uint64_t budget) {
    SearchOptions options;
    options.budget = budget;
    try {
        auto outcome = has_perfect_tiling(host, pattern, options);
        if (outcome) return {{"result", "found"}, {"certified", verify_certificate(host, pattern, *outcome.certificate)}};
        return {{"result", "none"}, {"reason", to_string(outcome.reason)}};
    } catch (const BudgetExceeded& e) {
        return {{"result", "skipped"}, {"reason", e.what()}};
    }
}

}  // namespace detail

// For each n: B on balanced_split(n), its exact codegree against the expected
// pattern and c4_condition(n) - 1, and K^3(m) / K^3_{m,m} factor verdicts when n is divisible.
inline ExperimentReport sweep_extremal(int n_min, int n_max, int m, std::uint64_t budget = budget_from_env()) {
    if (m < 1) throw Error("m must be positive");
    ExperimentReport report;
    report.name = "sweep_extremal";
    report.parameters = {{"n_min", n_min}, {"n_max", n_max}, {"m", m}};
    const auto km = k3(m);
    const auto kmm = k3_st(m, m);
    for (int n = n_min; n <= n_max; ++n) {
        json row{{"n", n}};
        if (n < 4) {
            row["skipped"] = "n < 4";
            report.rows.push_back(row);
            continue;
        }
        const auto [a, b] = balanced_split(n);
        const auto bg = b_construction(a, b);
        const auto d2 = static_cast<std::int64_t>(min_s_degree(bg.graph, 2));
        row["a"] = a;
        row["b"] = b;
        row["delta2"] = d2;
        row["expected_delta2"] = expected_b_codegree(n);
        row["c4_condition_minus_1"] = c4_condition(n) - 1;
        row["matches_pattern"] = d2 == expected_b_codegree(n);
        row["in_3m_multiples"] = n % (3 * m) == 0;
        auto verdict = [&](const Hypergraph& pattern) -> json {
            if (n % pattern.order() != 0) return {{"result", "not_applicable"}};
            return detail::factor_verdict(bg.graph, pattern, budget);
        };
        row["factor_k3m"] = verdict(km);
        row["factor_k3mm"] = verdict(kmm);
        report.rows.push_back(row);
    }
    return report;
}

struct VerifyOptions {
    std::vector<std::uint32_t> gq_orders{5, 7, 11};
    std::vector<std::uint32_t> hq_orders{3, 5};
    bool inject_fault = false;
    bool timings = false;
    unsigned threads = 1;
    std::uint64_t seed = 20240601;
    std::uint64_t budget = budget_from_env();
};

// Adds one edge to a 3-graph that completes a copy of K^3(1,2,2): a path
// a1-b1-a2-b2 in some link graph whose end pair a1b2 is not yet linked.
inline Hypergraph inject_apex_fault(const Hypergraph& h) {
    const int n = h.order();
    auto linked = [&](Vertex x, Vertex u, Vertex v) {
        std::array<Vertex, 3> e{x, u, v};
        std::sort(e.begin(), e.end());
        return h.has_edge(e);
    };
    for (Vertex x = 0; x < n; ++x)
        for (Vertex a1 = 0; a1 < n; ++a1)
            for (Vertex b1 = 0; b1 < n; ++b1) {
                if (x == a1 || x == b1 || a1 == b1 || !linked(x, a1, b1)) continue;
                for (Vertex a2 = 0; a2 < n; ++a2) {
                    if (a2 == x || a2 == a1 || a2 == b1 || !linked(x, b1, a2)) continue;
                    for (Vertex b2 = 0; b2 < n; ++b2) {
                        if (b2 == x || b2 == a1 || b2 == b1 || b2 == a2) continue;
                        if (!linked(x, a2, b2) || linked(x, a1, b2)) continue;
                        auto edges = h.edges();
                        std::vector<std::vector<Vertex>> raw;
                        for (const auto& e : edges) raw.push_back(e.values());
                        raw.push_back({x, a1, b2});
                        return build(3, n, raw);
                    }
                }
            }
    throw Error("no single edge completes a copy of K^3(1,2,2)");
}

namespace detail {


inline json run_claim(const std::string& claim, json params, const VerifyOptions& options,
                      const std::function<bool(json&)>& check) {
    json row{{"claim", claim}, {"params", std::move(params)}};
    json info = json::object();
    const auto start = std::chrono::steady_clock::now();
    try {
        row["pass"] = check(info);
    } catch (const std::exception& e) {
        row["pass"] = false;
        row["error"] = e.what();
    }
    row["detail"] = info;
    if (options.timings)
        row["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

inline bool check_gq_free(std::uint32_t q, const VerifyOptions& options, json& info) {
    auto g = g_q(q).graph;
    if (options.inject_fault) {
        g = inject_apex_fault(g);
        info["fault_injected"] = true;
    }
    SearchOptions search;
    search.budget = options.budget;
    const bool free = !contains_copy(g, k3_apex(2, 2), search).has_value();
    info["vertices"] = g.order();
    info["edges"] = g.size();
    info["k3_122_free"] = free;
    return free;
}

inline bool check_gq_codegree(std::uint32_t q, const VerifyOptions&, json& info) {
    const auto d2 = static_cast<std::int64_t>(min_s_degree(g_q(q).graph, 2));
    info["delta2"] = d2;
    info["required_delta2"] = static_cast<std::int64_t>(q) - 3;
    return d2 >= static_cast<std::int64_t>(q) - 3;
}

inline bool check_hq(std::uint32_t q, const VerifyOptions& options, json& info) {
    const auto h = h_q(q);
    SearchOptions search;
    search.budget = options.budget;
    const bool free = !contains_copy(h.graph, k3_apex(2, 2), search).has_value();
    const auto& g_side = h.part_map.part(0);
    bool two_on_g = true;
    for (std::size_t i = 0; i < h.graph.size(); ++i) {
        int hits = 0;
        for (Vertex v : h.graph.edge(i)) hits += g_side.contains(v) ? 1 : 0;
        two_on_g = two_on_g && hits == 2;
    }
    std::size_t mixed = h.graph.size();
    for (Vertex u : g_side)
        for (Vertex w : h.part_map.part(1)) mixed = std::min(mixed, degree(h.graph, VertexSet({u, w})));
    info["vertices"] = h.graph.order();
    info["edges"] = h.graph.size();
    info["k3_122_free"] = free;
    info["edges_meet_g_side_twice"] = two_on_g;
    info["mixed_codegree"] = mixed;
    info["required_codegree"] = static_cast<std::int64_t>(q) - 3;
    return free && two_on_g && static_cast<std::int64_t>(mixed) >= static_cast<std::int64_t>(q) - 3;
}

inline bool check_b_extremality(const VerifyOptions& options, json& info) {
    bool ok = true;
    json rows = json::array();
    for (int n = 12; n <= 15; ++n) {
        const auto [a, b] = balanced_split(n);
        const auto d2 = static_cast<std::int64_t>(min_s_degree(b_construction(a, b).graph, 2));
        rows.push_back({{"n", n}, {"a", a}, {"b", b}, {"delta2", d2}, {"expected", expected_b_codegree(n)}});
        ok = ok && d2 == expected_b_codegree(n);
    }
    info["codegrees"] = rows;
    const auto [a, b] = balanced_split(12);
    const auto host = b_construction(a, b).graph;
    info["n12_k3_2"] = factor_verdict(host, k3(2), options.budget);
    info["n12_k3_22"] = factor_verdict(host, k3_st(2, 2), options.budget);
    ok = ok && info["n12_k3_2"]["result"] == "none" && info["n12_k3_22"]["result"] == "none";
    return ok;
}

inline bool check_parity(const VerifyOptions& options, json& info) {
    const auto pattern = k3_st(2, 2);
    std::uint64_t copy_sets = 0;
    std::uint64_t violations = 0;
    SearchOptions search;
    search.budget = options.budget;
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b) {
            if (a + b < pattern.order()) continue;
            const auto list = enumerate_copy_sets(b_construction(a, b).graph, pattern, search);
            for (const auto& c : list.copies) {
                ++copy_sets;
                int in_b = 0;
                for (Vertex v : c.vertices) in_b += v >= a ? 1 : 0;
                if (in_b % 2 != 0) ++violations;
            }
        }
    info["copy_sets"] = copy_sets;
    info["violations"] = violations;
    return violations == 0 && copy_sets > 0;
}

inline bool check_proposition(const VerifyOptions& options, json& info) {
    const auto g = proposition_graph(7, 7, 5);
    const auto hp = proposition_h_prime(7, 7, 5);
    SearchOptions search;
    search.budget = options.budget;
    search.divisibility_shortcut = false;
    const auto outcome = has_perfect_tiling(g.graph, k3(2), search);
    const bool h_free = !contains_copy(hp.graph, k3_apex(2, 2), search).has_value();
    info["vertices"] = g.graph.order();
    info["edges"] = g.graph.size();
    info["h_prime_edges"] = hp.graph.size();
    info["factor"] = outcome ? "found" : "none";
    info["h_prime_k3_122_free"] = h_free;
    return !outcome && h_free;
}

inline bool check_threshold_classifier(const VerifyOptions&, json& info) {
    bool ok = true;
    const Rational alpha = make_rational(1, 100);
    const std::int64_t n = 120;
    const auto edge = mycroft_threshold(single_edge(), n, alpha);
    ok = ok && edge.case_tag == ThresholdCase::S1_or_gcdS_gt1;
    for (int m = 2; m <= 4; ++m) ok = ok && mycroft_threshold(k3(m), n, alpha).case_tag == ThresholdCase::S1_or_gcdS_gt1;
    const auto inv112 = invariants(k3_apex(1, 2));
    const auto t112 = mycroft_threshold(inv112, n, alpha);
    ok = ok && t112.case_tag == ThresholdCase::gcdF_eq1 && inv112.sigma == make_rational(1, 4) &&
         std::abs(t112.value - (0.25 * static_cast<double>(n) + 0.01 * static_cast<double>(n))) <= 1e-9 * static_cast<double>(n);
    info["fixtures_ok"] = ok;

    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    for (int t = 3; t <= 6; ++t) {
        const auto table = oracle::sigma_table(t);
        for (std::uint32_t mask = 0; mask < table.min_class.size(); ++mask) {
            if (table.min_class[mask] == 0) continue;
            ++checked;
            const auto inv = invariants(oracle::graph_from_mask(t, mask));
            if (inv.sigma != make_rational(table.min_class[mask], t)) ++mismatches;
        }
    }
    info["sigma_graphs_checked"] = checked;
    info["sigma_mismatches"] = mismatches;
    return ok && mismatches == 0;
}

inline bool check_solver_oracle(const VerifyOptions& options, json& info) {
    std::mt19937_64 rng(options.seed);
    std::uint64_t cases = 0;
    std::uint64_t disagreements = 0;
    std::uint64_t factors = 0;
    auto compare = [&](const Hypergraph& host, const Hypergraph& pattern) {
        SearchOptions search;
        search.budget = options.budget;
        search.divisibility_shortcut = false;
        const auto fast = has_perfect_tiling(host, pattern, search);
        const bool slow = oracle::perfect_tiling(host, pattern);
        ++cases;
        if (fast) ++factors;
        if (fast.certificate.has_value() != slow || (fast && !verify_certificate(host, pattern, *fast.certificate))) ++disagreements;
    };
    const auto edge = single_edge();
    const auto k112 = k3_apex(1, 2);
    for (int i = 0; i < 200; ++i) {
        const int n = i % 2 == 0 ? 6 : 9;
        // densities spread over 30%..90% so that both verdicts occur
        const unsigned permille = 300 + static_cast<unsigned>(rng() % 601);
        const auto host = oracle::random_graph(3, n, permille, rng);
        compare(host, edge);
        compare(host, k112);
    }
    for (int i = 0; i < 50; ++i) {
        const unsigned permille = 300 + static_cast<unsigned>(rng() % 601);
        compare(oracle::random_graph(3, 8, permille, rng), k112);
    }
    info["cases"] = cases;
    info["factors_found"] = factors;
    info["disagreements"] = disagreements;
    return disagreements == 0;
}

inline bool check_kst(const VerifyOptions&, json& info) {
    bool ok = true;
    json values = json::array();
    for (int n = 1; n <= 7; ++n) {
        const int ex = oracle::ex_c4(n);
        const double bound = kst_bound(n, 2, 2);
        values.push_back({{"n", n}, {"ex", ex}, {"bound", bound}});
        ok = ok && ex <= bound;
    }
    const double hand = kst_bound(4, 2, 2);
    info["ex_c4"] = values;
    info["kst_4_2_2"] = hand;
    return ok && std::abs(hand - 10.0) <= 1e-9 * 10.0;
}

inline bool check_probes(const VerifyOptions& options, json& info) {
    std::mt19937_64 rng(options.seed + 1);
    ProbeOptions probe;
    probe.budget = options.budget;
    probe.threads = options.threads;
    const auto edge = single_edge();
    const auto k112 = k3_apex(1, 2);
    std::uint64_t pairs = 0;
    std::uint64_t connector_mismatch = 0;
    std::uint64_t robust_mismatch = 0;
    std::uint64_t goodness_mismatch = 0;
    for (int g = 0; g < 20; ++g) {
        const int n = 6 + g % 5;
        const auto host = oracle::random_graph(3, n, 300 + static_cast<unsigned>(rng() % 501), rng);
        for (Vertex x = 0; x < n; ++x)
            for (Vertex y = x + 1; y < n; ++y) {
                ++pairs;
                if (count_connectors(host, edge, x, y, 1, probe) != oracle::common_link_pairs(host, x, y))
                    ++connector_mismatch;
            }
        const int cut = n / 2;
        const Partition p(n, {VertexSet::range(0, cut), VertexSet::range(cut, n)});
        const auto robust = robust_vectors(host, k112, p, make_rational(1, 1000), probe);
        std::uint64_t sum = 0;
        for (const auto& [vec, count] : robust.counts) sum += count;
        SearchOptions search;
        search.budget = options.budget;
        if (sum != robust.total || robust.total != enumerate_copy_sets(host, k112, search).copies.size())
            ++robust_mismatch;
        const auto other = oracle::random_graph(3, n, 300 + static_cast<unsigned>(rng() % 501), rng);
        const auto good = classify_goodness(host, other, make_rational(1, 10));
        for (const auto& v : good.vertices) {
            std::uint64_t direct = 0;
            for (std::size_t i = 0; i < other.size(); ++i) {
                auto e = other.edge(i);
                if (std::find(e.begin(), e.end(), v.vertex) == e.end()) continue;
                if (!oracle::edge_listed(host, {e.begin(), e.end()})) ++direct;
            }
            if (direct != v.missing_degree ||
                v.good != (Rational(direct) <= make_rational(n * n, 10)))
                ++goodness_mismatch;
        }
    }
    info["pairs"] = pairs;
    info["connector_mismatches"] = connector_mismatch;
    info["robust_mismatches"] = robust_mismatch;
    info["goodness_mismatches"] = goodness_mismatch;
    return connector_mismatch == 0 && robust_mismatch == 0 && goodness_mismatch == 0;
}

}  // namespace detail

// The fixed battery of exact finite claims, one row per claim instance.
// Failures and errors are rows; nothing is thrown.
inline ExperimentReport verify_suite(const VerifyOptions& options = {}) {
    ExperimentReport report;
    report.name = "verify";
    report.parameters = {{"gq_orders", options.gq_orders}, {"hq_orders", options.hq_orders},
                         {"inject_fault", options.inject_fault}, {"seed", options.seed}};
    for (auto q : options.gq_orders) {
        report.rows.push_back(detail::run_claim("gq_freeness", {{"q", q}}, options,
                                                [&](json& info) { return detail::check_gq_free(q, options, info); }));
        report.rows.push_back(detail::run_claim("gq_codegree", {{"q", q}}, options,
                                                [&](json& info) { return detail::check_gq_codegree(q, options, info); }));
    }
    for (auto q : options.hq_orders)
        report.rows.push_back(detail::run_claim("hq_freeness", {{"q", q}}, options,
                                                [&](json& info) { return detail::check_hq(q, options, info); }));
    auto add = [&](const char* claim, bool (*check)(const VerifyOptions&, json&)) {
        report.rows.push_back(detail::run_claim(claim, json::object(), options,
                                                [&](json& info) { return check(options, info); }));
    };
    add("b_extremality", detail::check_b_extremality);
    add("parity", detail::check_parity);
    add("proposition", detail::check_proposition);
    add("threshold_classifier", detail::check_threshold_classifier);
    add("solver_oracle", detail::check_solver_oracle);
    add("kst", detail::check_kst);
    add("probe_exactness", detail::check_probes);
    return report;
}

}  // namespace hypertile
