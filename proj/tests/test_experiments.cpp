#include <gtest/gtest.h>

#include "hypertile/experiments.hpp"

using namespace hypertile;

namespace {

const json& row_for(const ExperimentReport& r, const std::string& claim, std::int64_t q) {
    for (const auto& row : r.rows)
        if (row["claim"] == claim && row["params"].value("q", std::int64_t{-1}) == q) return row;
    throw std::runtime_error("missing row " + claim);
}

}  // namespace

TEST(Sweep, TwelveToFifteen) {
    auto r = sweep_extremal(12, 15, 2);
    ASSERT_EQ(r.rows.size(), 4u);
    const auto& n12 = r.rows[0];
    EXPECT_EQ(n12["a"], 7);
    EXPECT_EQ(n12["b"], 5);
    EXPECT_EQ(n12["delta2"], 4);
    EXPECT_EQ(n12["c4_condition_minus_1"], 4);
    EXPECT_TRUE(n12["in_3m_multiples"].get<bool>());
    EXPECT_EQ(n12["factor_k3m"]["result"], "none");
    EXPECT_EQ(n12["factor_k3mm"]["result"], "none");
    for (const auto& row : r.rows) {
        EXPECT_TRUE(row["matches_pattern"].get<bool>()) << row.dump();
        const auto [a, b] = balanced_split(row["n"].get<int>());
        EXPECT_EQ(row["delta2"].get<std::int64_t>(), static_cast<std::int64_t>(min_s_degree(b_construction(a, b).graph, 2)));
    }
    const auto& n13 = r.rows[1];
    EXPECT_FALSE(n13["in_3m_multiples"].get<bool>());
    EXPECT_EQ(n13["factor_k3m"]["result"], "not_applicable");
    EXPECT_EQ(n13["delta2"], 4);  // n = 13 is 1 mod 4
    EXPECT_TRUE(r.all_pass());
}

TEST(Sweep, EmptyAndTinyRanges) {
    EXPECT_TRUE(sweep_extremal(10, 9, 2).rows.empty());
    auto tiny = sweep_extremal(3, 4, 1);
    ASSERT_EQ(tiny.rows.size(), 2u);
    EXPECT_TRUE(tiny.rows[0].contains("skipped"));
    EXPECT_FALSE(tiny.rows[1].contains("skipped"));
    EXPECT_THROW(sweep_extremal(6, 6, 0), Error);
}

TEST(Sweep, BudgetMarksRowsSkipped) {
    auto r = sweep_extremal(12, 12, 2, 5);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0]["factor_k3m"]["result"], "skipped");
    EXPECT_EQ(r.rows[0]["delta2"], 4);
}

TEST(Sweep, ReportSchema) {
    const auto j = sweep_extremal(12, 12, 2).to_json();
    EXPECT_EQ(j["schema_version"], report_schema_version);
    EXPECT_EQ(j["experiment"], "sweep_extremal");
    EXPECT_EQ(j["parameters"]["m"], 2);
}

TEST(Verify, InjectedFaultBreaksFreeness) {
    auto g = g_q(5).graph;
    auto faulty = inject_apex_fault(g);
    EXPECT_EQ(faulty.size(), g.size() + 1);
    EXPECT_TRUE(contains_copy_generic(faulty, k3_apex(2, 2)).has_value());

    VerifyOptions options;
    options.gq_orders = {5};
    options.hq_orders = {};
    options.inject_fault = true;
    auto r = verify_suite(options);
    const auto& row = row_for(r, "gq_freeness", 5);
    EXPECT_FALSE(row["pass"].get<bool>());
    EXPECT_TRUE(row["detail"]["fault_injected"].get<bool>());
    EXPECT_FALSE(r.all_pass());
}

TEST(Verify, UnsupportedOrderIsAnErrorRow) {
    VerifyOptions options;
    options.gq_orders = {6, 5};
    options.hq_orders = {3};
    auto r = verify_suite(options);
    const auto& bad = row_for(r, "gq_freeness", 6);
    EXPECT_FALSE(bad["pass"].get<bool>());
    EXPECT_TRUE(bad.contains("error"));
    EXPECT_TRUE(row_for(r, "gq_freeness", 5)["pass"].get<bool>());
    EXPECT_TRUE(row_for(r, "hq_freeness", 3)["pass"].get<bool>());
}

TEST(Verify, RowsAndDeterminism) {
    VerifyOptions options;
    options.gq_orders = {5, 7};
    options.hq_orders = {3};
    auto first = verify_suite(options);
    auto second = verify_suite(options);
    EXPECT_EQ(first.to_json().dump(), second.to_json().dump());
    for (const auto& row : first.rows) {
        EXPECT_FALSE(row.contains("seconds"));
        EXPECT_FALSE(row.contains("error")) << row.dump();
        // codegree of G_q is q - 4, one short of q - 3
        if (row["claim"] == "gq_codegree") {
            EXPECT_FALSE(row["pass"].get<bool>());
            EXPECT_EQ(row["detail"]["delta2"], row["params"]["q"].get<int>() - 4);
        } else {
            EXPECT_TRUE(row["pass"].get<bool>()) << row.dump();
        }
    }
    options.timings = true;
    options.gq_orders = {5};
    for (const auto& row : verify_suite(options).rows) EXPECT_TRUE(row.contains("seconds"));
}
