#include <gtest/gtest.h>

#include <filesystem>

#include "hypertile/constructions.hpp"
#include "hypertile/experiments.hpp"
#include "hypertile/io.hpp"

using namespace hypertile;

namespace {

std::size_t error_line(const std::string& text) {
    try {
        parse_hg_string(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST(HgFormat, ParsesCompleteFourVertexGraph) {
    auto h = parse_hg_string("3 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n");
    EXPECT_EQ(h.uniformity(), 3);
    EXPECT_EQ(h.order(), 4);
    EXPECT_EQ(h.size(), 4u);
    EXPECT_EQ(min_s_degree(h, 2), 2u);
}

TEST(HgFormat, CommentsBlankLinesAndOrdering) {
    auto h = parse_hg_string("# a comment\n\n3 5\n  # indented comment\n4 2 0\n\n2 0 4\n1 3 2\n");
    EXPECT_EQ(h.size(), 2u);  // 4 2 0 and 2 0 4 are the same edge
    EXPECT_TRUE(h.has_edge(std::vector<Vertex>{0, 2, 4}));
    EXPECT_TRUE(h.has_edge(std::vector<Vertex>{1, 2, 3}));
    EXPECT_EQ(to_hg_string(h), "3 5\n0 2 4\n1 2 3\n");
}

TEST(HgFormat, ReportsLineNumbers) {
    EXPECT_EQ(error_line("3 3\n0 1\n"), 2u);
    EXPECT_EQ(error_line("3 3\n0 1 2\n0 1 3\n"), 3u);
    EXPECT_EQ(error_line("# c\n3 3\n\n0 1 1\n"), 4u);
    EXPECT_EQ(error_line("3\n"), 1u);
    EXPECT_EQ(error_line("1 3\n"), 1u);
    EXPECT_EQ(error_line("3 -2\n"), 1u);
    EXPECT_EQ(error_line("3 x\n"), 1u);
    EXPECT_EQ(error_line("3 4\n0 1 2a\n"), 2u);
    EXPECT_EQ(error_line("# only comments\n"), 1u);
    EXPECT_EQ(error_line(""), 0u);
    EXPECT_THROW(parse_hg_string(""), ParseError);
    EXPECT_THROW(parse_hg(std::filesystem::path("/nonexistent/graph.hg")), Error);
}

TEST(HgFormat, GoldenGqFileRoundTrips) {
    const auto path = std::filesystem::path(HYPERTILE_TEST_DATA) / "g_5.hg";
    auto golden = parse_hg(path);
    auto built = g_q(5).graph;
    EXPECT_EQ(to_hg_string(golden), to_hg_string(built));
    EXPECT_EQ(to_hg_string(parse_hg_string(to_hg_string(built))), to_hg_string(built));
}

TEST(HgFormat, FileRoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "hypertile_io_test";
    std::filesystem::create_directories(dir);
    const auto file = dir / "b.hg";
    auto b = b_construction(4, 5).graph;
    write_hg(b, file);
    EXPECT_EQ(to_hg_string(parse_hg(file)), to_hg_string(b));
    std::filesystem::remove_all(dir);
}

TEST(Json, RationalFormat) {
    EXPECT_EQ(rational_to_json(make_rational(6, 8)).dump(), R"({"den":4,"num":3})");
    EXPECT_EQ(rational_to_json(make_rational(-2, 1)).dump(), R"({"den":1,"num":-2})");
    BigInt huge = 1;
    for (int i = 0; i < 80; ++i) huge *= 2;
    const auto j = rational_to_json(Rational(huge, 3));
    EXPECT_TRUE(j["num"].is_string());
    EXPECT_EQ(j["num"].get<std::string>(), huge.str());
}

TEST(Json, CertificateRoundTrip) {
    auto host = complete_k_partite({2, 2, 2}).graph;
    auto outcome = has_perfect_tiling(host, single_edge());
    ASSERT_TRUE(outcome);
    const auto j = certificate_to_json(*outcome.certificate);
    const auto back = certificate_from_json(j);
    ASSERT_EQ(back.copies.size(), outcome.certificate->copies.size());
    for (std::size_t i = 0; i < back.copies.size(); ++i) EXPECT_EQ(back.copies[i].image, outcome.certificate->copies[i].image);
    EXPECT_EQ(back.covered, outcome.certificate->covered);
    EXPECT_TRUE(verify_certificate(host, single_edge(), back));
    EXPECT_EQ(certificate_to_json(back), j);
}

TEST(Json, PartitionBothForms) {
    const auto plain = json::parse("[[0,1,2],[3,4]]");
    const auto wrapped = json::parse(R"({"parts": [[3,4],[0,2,1]]})");
    auto a = partition_from_json(plain, 5);
    auto b = partition_from_json(wrapped, 5);
    EXPECT_EQ(a.part(0), (VertexSet{0, 1, 2}));
    EXPECT_EQ(b.part(1), (VertexSet{0, 1, 2}));
    EXPECT_EQ(a.part_of(4), 1);
    EXPECT_EQ(partition_to_json(a), plain);
    EXPECT_THROW(partition_from_json(json::parse("[[0,1],[1,2]]"), 3), Error);
    EXPECT_THROW(partition_from_json(json::parse("[[0,1]]"), 3), Error);
    EXPECT_THROW(partition_from_json(json::parse("42"), 3), Error);
}

TEST(Json, ConstructionMetadata) {
    const auto meta = construction_metadata(b_construction(7, 5));
    EXPECT_EQ(meta["schema_version"], 1);
    EXPECT_EQ(meta["name"], "b");
    EXPECT_EQ(meta["params"]["a"], 7);
    EXPECT_EQ(meta["params"]["b"], 5);
    EXPECT_EQ(meta["n"], 12);
    EXPECT_EQ(meta["edges"], 105);
    EXPECT_EQ(meta["parts"].size(), 2u);
}
