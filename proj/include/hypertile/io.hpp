#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "error.hpp"
#include "hypergraph.hpp"
#include "invariants.hpp"
#include "rational.hpp"
#include "solver.hpp"

namespace hypertile {

class ParseError : public Error {
   public:
    ParseError(std::size_t line, const std::string& why)
        : Error("line " + std::to_string(line) + ": " + why), line_(line) {}

    std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

// Text format: header "k n", then one edge per line as k vertex ids.
// Lines whose first non-blank character is '#' are comments.
inline Hypergraph read_hg(std::istream& in) {
    std::string text;
    std::size_t line_no = 0;
    bool have_header = false;
    int k = 0;
    int n = 0;
    std::vector<std::vector<Vertex>> edges;
    std::vector<std::size_t> edge_lines;
    auto parse_ints = [&](const std::string& line) {
        std::istringstream fields(line);
        std::vector<long long> out;
        std::string token;
        while (fields >> token) {
            std::size_t used = 0;
            long long value = 0;
            try {
                value = std::stoll(token, &used);
            } catch (const std::exception&) {
                throw ParseError(line_no, "expected an integer, got '" + token + "'");
            }
            if (used != token.size()) throw ParseError(line_no, "expected an integer, got '" + token + "'");
            out.push_back(value);
        }
        return out;
    };
    while (std::getline(in, text)) {
        ++line_no;
        const auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos || text[first] == '#') continue;
        const auto values = parse_ints(text);
        if (!have_header) {
            if (values.size() != 2) throw ParseError(line_no, "header must be 'k n'");
            if (values[0] < 2) throw ParseError(line_no, "uniformity must be at least 2");
            if (values[1] < 0 || values[1] > 1'000'000) throw ParseError(line_no, "vertex count out of range");
            k = static_cast<int>(values[0]);
            n = static_cast<int>(values[1]);
            have_header = true;
            continue;
        }
        if (static_cast<int>(values.size()) != k)
            throw ParseError(line_no, "edge has " + std::to_string(values.size()) + " vertices, expected " + std::to_string(k));
        std::vector<Vertex> e;
        for (long long v : values) {
            if (v < 0 || v >= n) throw ParseError(line_no, "vertex " + std::to_string(v) + " out of range");
            e.push_back(static_cast<Vertex>(v));
        }
        edges.push_back(std::move(e));
        edge_lines.push_back(line_no);
    }
    if (!have_header) throw ParseError(line_no, "missing header 'k n'");
    try {
        return build(k, n, edges);
    } catch (const InvalidEdge& e) {
        throw ParseError(edge_lines[e.edge_index()], e.what());
    }
}

inline Hypergraph parse_hg_string(const std::string& text) {
    std::istringstream in(text);
    return read_hg(in);
}

inline Hypergraph parse_hg(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return read_hg(in);
}

inline void write_hg(const Hypergraph& h, std::ostream& out) {
    out << h.uniformity() << ' ' << h.order() << '\n';
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto e = h.edge(i);
        for (std::size_t j = 0; j < e.size(); ++j) out << (j ? " " : "") << e[j];
        out << '\n';
    }
}

inline std::string to_hg_string(const Hypergraph& h) {
    std::ostringstream out;
    write_hg(h, out);
    return out.str();
}

inline void write_hg(const Hypergraph& h, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_hg(h, out);
}

// ---- JSON ----

using nlohmann::json;

inline constexpr int report_schema_version = 1;

inline json big_to_json(const BigInt& x) {
    if (x >= BigInt(std::numeric_limits<std::int64_t>::min()) && x <= BigInt(std::numeric_limits<std::int64_t>::max()))
        return x.convert_to<std::int64_t>();
    return x.str();
}

inline json rational_to_json(const Rational& r) {
    return {{"num", big_to_json(boost::multiprecision::numerator(r))},
            {"den", big_to_json(boost::multiprecision::denominator(r))}};
}

inline json vertex_set_to_json(const VertexSet& s) { return s.values(); }

inline json partition_to_json(const Partition& p) {
    json parts = json::array();
    for (const auto& part : p.parts()) parts.push_back(part.values());
    return parts;
}

// Accepts either [[...],[...]] or {"parts": [[...],[...]]}.
inline Partition partition_from_json(const json& j, int ground_size) {
    const json& parts = j.is_object() ? j.at("parts") : j;
    if (!parts.is_array()) throw Error("partition JSON must be an array of vertex lists");
    std::vector<VertexSet> sets;
    for (const auto& part : parts) sets.emplace_back(part.get<std::vector<Vertex>>());
    return Partition(ground_size, std::move(sets), true);
}

inline json invariants_to_json(const InvariantReport& r) {
    json j{{"order", r.order},
           {"s_set", std::vector<int>(r.s_set.begin(), r.s_set.end())},
           {"d_set", std::vector<int>(r.d_set.begin(), r.d_set.end())},
           {"gcd", r.gcd ? json(*r.gcd) : json(nullptr)},
           {"sigma", rational_to_json(r.sigma)},
           {"realisation_count", r.realisation_count}};
    return j;
}

inline json threshold_to_json(const ThresholdReport& r) {
    return {{"case", to_string(r.case_tag)}, {"value", r.value}, {"p", r.p ? json(*r.p) : json(nullptr)}};
}

inline json embedding_to_json(const Embedding& e) { return {{"vertices", e.vertices().values()}, {"map", e.image}}; }

inline json certificate_to_json(const TilingCertificate& c) {
    json copies = json::array();
    for (const auto& e : c.copies) copies.push_back(embedding_to_json(e));
    return {{"copies", copies}, {"covered", c.covered.values()}};
}

inline TilingCertificate certificate_from_json(const json& j) {
    TilingCertificate c;
    for (const auto& copy : j.at("copies")) c.copies.push_back(Embedding{copy.at("map").get<std::vector<Vertex>>()});
    c.covered = VertexSet(j.at("covered").get<std::vector<Vertex>>());
    return c;
}

inline json construction_metadata(const LabeledConstruction& c) {
    json params = json::object();
    for (const auto& [key, value] : c.params) params[key] = value;
    return {{"schema_version", report_schema_version},
            {"name", c.name},
            {"params", params},
            {"k", c.graph.uniformity()},
            {"n", c.graph.order()},
            {"edges", c.graph.size()},
            {"parts", partition_to_json(c.part_map)}};
}

}  // namespace hypertile
