#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypertile/hypertile.hpp"

namespace ht = hypertile;
using ht::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_verify = 2;
constexpr int exit_budget = 3;

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw ht::Error("expected comma-separated integers, got '" + text + "'");
        }
        if (used != item.size()) throw ht::Error("expected comma-separated integers, got '" + text + "'");
        out.push_back(value);
    }
    return out;
}

ht::Partition read_partition(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw ht::Error("cannot open " + path);
    return ht::partition_from_json(json::parse(in), n);
}

ht::LabeledConstruction make_construction(const std::string& name, const std::map<std::string, int>& p,
                                          const std::string& sizes) {
    auto need = [&](const char* key) {
        auto it = p.find(key);
        if (it == p.end()) throw ht::Error("construction '" + name + "' needs --" + key);
        return it->second;
    };
    auto field_order = [&] {
        const int q = need("q");
        if (q < 2) throw ht::Error("q must be a prime power >= 2");
        return static_cast<std::uint32_t>(q);
    };
    if (name == "b") return ht::b_construction(need("a"), need("b"));
    if (name == "balanced") {
        const auto [a, b] = ht::balanced_split(need("n"));
        return ht::b_construction(a, b);
    }
    if (name == "d") return ht::d_construction(need("x"), need("y"), need("k"));
    if (name == "complete") {
        if (sizes.empty()) throw ht::Error("construction 'complete' needs --sizes");
        return ht::complete_k_partite(parse_int_list(sizes));
    }
    if (name == "kst") return ht::k_st(need("k"), need("s"), need("t"));
    if (name == "gq") return ht::g_q(field_order());
    if (name == "hq") return ht::h_q(field_order());
    if (name == "hprime") return ht::proposition_h_prime(need("a"), need("b"), field_order());
    if (name == "proposition") return ht::proposition_graph(need("a"), need("b"), field_order());
    throw ht::Error("unknown construction '" + name + "' (b, balanced, d, complete, kst, gq, hq, hprime, proposition)");
}

int run_invariants(const std::string& pattern_path, std::optional<std::int64_t> n, const std::string& alpha) {
    const auto f = ht::parse_hg(pattern_path);
    json out{{"schema_version", ht::report_schema_version}};
    try {
        const auto inv = ht::invariants(f);
        out["invariants"] = ht::invariants_to_json(inv);
        if (n) out["threshold"] = ht::threshold_to_json(ht::mycroft_threshold(inv, *n, ht::parse_rational(alpha)));
    } catch (const ht::NotKPartite&) {
        out["invariants"] = nullptr;
        out["threshold"] = {{"case", ht::to_string(ht::ThresholdCase::not_k_partite)}};
    }
    emit(out);
    return exit_ok;
}

int run_construct(const std::string& name, const std::map<std::string, int>& params, const std::string& sizes,
                  const std::string& output) {
    const auto c = make_construction(name, params, sizes);
    const auto meta = ht::construction_metadata(c);
    if (!output.empty()) {
        ht::write_hg(c.graph, std::filesystem::path(output));
        std::filesystem::path sidecar(output);
        sidecar.replace_extension(".json");
        std::ofstream side(sidecar);
        if (!side) throw ht::Error("cannot write " + sidecar.string());
        side << meta.dump(2) << '\n';
    } else {
        ht::write_hg(c.graph, std::cout);
        return exit_ok;
    }
    emit(meta);
    return exit_ok;
}

struct TileArgs {
    std::string host;
    std::string pattern;
    std::string type;
    std::string partition;
    bool max = false;
    bool no_divisibility = false;
};

int run_tile(const TileArgs& args) {
    const auto host = ht::parse_hg(args.host);
    const auto pattern = ht::parse_hg(args.pattern);
    ht::SearchOptions options;
    options.divisibility_shortcut = !args.no_divisibility;
    json out{{"schema_version", ht::report_schema_version}};
    if (!args.type.empty()) {
        if (args.partition.empty()) throw ht::Error("--type needs --partition");
        const auto p = read_partition(args.partition, host.order());
        const ht::TypeVector t(parse_int_list(args.type));
        const auto list = ht::copies_of_type(host, pattern, p, t, options);
        json copies = json::array();
        for (const auto& c : list.copies) copies.push_back(ht::embedding_to_json(c.witness));
        out["type"] = t.values();
        out["count"] = list.copies.size();
        out["copies"] = copies;
        emit(out);
        return exit_ok;
    }
    if (args.max) {
        const auto best = ht::max_tiling(host, pattern, options);
        const bool valid = ht::verify_certificate(host, pattern, best.certificate, false);
        out["result"] = "max";
        out["size"] = best.size;
        out["certificate"] = ht::certificate_to_json(best.certificate);
        out["verified"] = valid;
        emit(out);
        return valid ? exit_ok : exit_verify;
    }
    const auto outcome = ht::has_perfect_tiling(host, pattern, options);
    if (!outcome) {
        out["result"] = "none";
        out["reason"] = ht::to_string(outcome.reason);
        emit(out);
        return exit_ok;
    }
    const bool valid = ht::verify_certificate(host, pattern, *outcome.certificate);
    out["result"] = "found";
    out["certificate"] = ht::certificate_to_json(*outcome.certificate);
    out["verified"] = valid;
    emit(out);
    return valid ? exit_ok : exit_verify;
}

struct ProbeArgs {
    std::string kind;
    std::string host;
    std::string pattern;
    std::string reference;
    std::string partition;
    int x = 0;
    int y = 1;
    int i = 1;
    std::string eta = "0";
    std::string mu = "0";
    std::string alpha = "0";
    std::string gamma = "0";
    std::string transferral;
    std::string set;
    unsigned threads = 1;
};

int run_probe(const ProbeArgs& args) {
    const auto host = ht::parse_hg(args.host);
    ht::ProbeOptions options;
    options.threads = args.threads;
    json out{{"schema_version", ht::report_schema_version}, {"probe", args.kind}};
    auto pattern = [&] {
        if (args.pattern.empty()) throw ht::Error("probe '" + args.kind + "' needs --pattern");
        return ht::parse_hg(args.pattern);
    };
    if (args.kind == "connectors") {
        out["x"] = args.x;
        out["y"] = args.y;
        out["i"] = args.i;
        out["count"] = ht::count_connectors(host, pattern(), args.x, args.y, args.i, options);
    } else if (args.kind == "close") {
        const auto f = pattern();
        const auto eta = ht::parse_rational(args.eta);
        out["i"] = args.i;
        out["eta"] = ht::rational_to_json(eta);
        if (!args.set.empty()) {
            const auto ids = parse_int_list(args.set);
            ht::VertexSet u(std::vector<ht::Vertex>(ids.begin(), ids.end()));
            out["set"] = u.values();
            out["closed"] = ht::closed_set(host, f, u, args.i, eta, options);
        } else {
            const auto r = ht::closeness(host, f, args.x, args.y, args.i, eta, options);
            out["x"] = args.x;
            out["y"] = args.y;
            out["connectors"] = r.connectors;
            out["threshold"] = ht::rational_to_json(r.threshold);
            out["close"] = r.close;
        }
    } else if (args.kind == "robust") {
        if (args.partition.empty()) throw ht::Error("probe 'robust' needs --partition");
        const auto p = read_partition(args.partition, host.order());
        const auto r = ht::robust_vectors(host, pattern(), p, ht::parse_rational(args.mu), options);
        json counts = json::array();
        for (const auto& [vec, count] : r.counts) counts.push_back({{"type", vec.values()}, {"count", count}});
        json robust = json::array();
        for (const auto& vec : r.robust_set) robust.push_back(vec.values());
        out["mu"] = ht::rational_to_json(r.mu);
        out["threshold"] = ht::rational_to_json(r.threshold);
        out["counts"] = counts;
        out["total"] = r.total;
        out["robust"] = robust;
        if (!args.transferral.empty()) {
            const auto jl = parse_int_list(args.transferral);
            if (jl.size() != 2 || jl[0] < 0 || jl[1] < 0) throw ht::Error("--transferral takes j,l");
            out["transferral"] = {{"j", jl[0]},
                                  {"l", jl[1]},
                                  {"in_lattice", ht::has_transferral(r, static_cast<std::size_t>(jl[0]),
                                                                     static_cast<std::size_t>(jl[1]))}};
        }
    } else if (args.kind == "goodness") {
        if (args.reference.empty()) throw ht::Error("probe 'goodness' needs --reference");
        const auto g = ht::parse_hg(args.reference);
        const auto r = ht::classify_goodness(host, g, ht::parse_rational(args.alpha));
        json vertices = json::array();
        for (const auto& v : r.vertices)
            vertices.push_back({{"vertex", v.vertex}, {"missing_degree", v.missing_degree}, {"good", v.good}});
        out["alpha"] = ht::rational_to_json(ht::parse_rational(args.alpha));
        out["threshold"] = ht::rational_to_json(r.threshold);
        out["vertices"] = vertices;
    } else if (args.kind == "extremal") {
        const auto r = ht::extremal_witness(host, ht::parse_rational(args.gamma));
        out["gamma"] = ht::rational_to_json(ht::parse_rational(args.gamma));
        out["threshold"] = ht::rational_to_json(r.threshold);
        out["best_missing"] = r.best_missing;
        out["exact"] = r.exact;
        out["witness"] = r.witness ? ht::partition_to_json(*r.witness) : json(nullptr);
    } else {
        throw ht::Error("unknown probe '" + args.kind + "' (connectors, close, robust, goodness, extremal)");
    }
    emit(out);
    return exit_ok;
}

int run_sweep(int n_min, int n_max, int m, bool csv) {
    const auto report = ht::sweep_extremal(n_min, n_max, m);
    if (!csv) {
        emit(report.to_json());
        return exit_ok;
    }
    std::cout << "n,a,b,delta2,expected_delta2,c4_condition_minus_1,matches_pattern,in_3m_multiples,factor_k3m,factor_k3mm\n";
    for (const auto& row : report.rows) {
        if (row.contains("skipped")) {
            std::cout << row["n"] << ",,,,,,,,skipped,skipped\n";
            continue;
        }
        std::cout << row["n"] << ',' << row["a"] << ',' << row["b"] << ',' << row["delta2"] << ','
                  << row["expected_delta2"] << ',' << row["c4_condition_minus_1"] << ',' << row["matches_pattern"]
                  << ',' << row["in_3m_multiples"] << ',' << row["factor_k3m"]["result"].get<std::string>() << ','
                  << row["factor_k3mm"]["result"].get<std::string>() << '\n';
    }
    return exit_ok;
}

int run_verify(const ht::VerifyOptions& options) {
    const auto report = ht::verify_suite(options);
    emit(report.to_json());
    return report.all_pass() ? exit_ok : exit_verify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypertile: hypergraph tiling toolkit"};
    app.require_subcommand(1);

    std::string pattern_path;
    std::optional<std::int64_t> inv_n;
    std::string inv_alpha = "0";
    auto* inv = app.add_subcommand("invariants", "k-partite invariants and codegree threshold of a pattern graph");
    inv->add_option("pattern", pattern_path, "pattern graph (.hg)")->required();
    inv->add_option("--n", inv_n, "host order for the threshold");
    inv->add_option("--alpha", inv_alpha, "slack alpha (rational, e.g. 1/100)");

    std::string cons_name;
    std::string cons_out;
    std::string cons_sizes;
    std::map<std::string, int> cons_params;
    std::map<std::string, int> raw_params;
    auto* cons = app.add_subcommand("construct", "write one of the built-in constructions");
    cons->add_option("name", cons_name, "b, balanced, d, complete, kst, gq, hq, hprime, proposition")->required();
    for (const char* key : {"a", "b", "n", "x", "y", "k", "s", "t", "q"})
        cons->add_option(std::string("--") + key, raw_params[key]);
    cons->add_option("--sizes", cons_sizes, "class sizes for 'complete', e.g. 2,2,2");
    cons->add_option("-o,--output", cons_out, "output .hg path; a .json sidecar is written next to it");

    TileArgs tile_args;
    auto* tile = app.add_subcommand("tile", "perfect, maximum or typed tilings");
    tile->add_option("host", tile_args.host, "host graph (.hg)")->required();
    tile->add_option("--pattern", tile_args.pattern, "pattern graph (.hg)")->required();
    tile->add_option("--type", tile_args.type, "index vector a,b,... for copies of one type");
    tile->add_option("--partition", tile_args.partition, "partition JSON for --type");
    tile->add_flag("--max", tile_args.max, "maximum tiling instead of a perfect one");
    tile->add_flag("--no-divisibility", tile_args.no_divisibility, "search even when |V(F)| does not divide n");

    ProbeArgs probe_args;
    auto* probe = app.add_subcommand("probe", "absorption probes");
    probe->add_option("kind", probe_args.kind, "connectors, close, robust, goodness, extremal")->required();
    probe->add_option("host", probe_args.host, "host graph (.hg)")->required();
    probe->add_option("--pattern", probe_args.pattern, "pattern graph (.hg)");
    probe->add_option("--reference", probe_args.reference, "reference graph G for goodness (.hg)");
    probe->add_option("--partition", probe_args.partition, "partition JSON for robust");
    probe->add_option("--x", probe_args.x);
    probe->add_option("--y", probe_args.y);
    probe->add_option("--i", probe_args.i, "connector length");
    probe->add_option("--set", probe_args.set, "vertex list u1,u2,... for closed-set checks");
    probe->add_option("--eta", probe_args.eta);
    probe->add_option("--mu", probe_args.mu);
    probe->add_option("--alpha", probe_args.alpha);
    probe->add_option("--gamma", probe_args.gamma);
    probe->add_option("--transferral", probe_args.transferral, "j,l: test u_j - u_l against the robust lattice");
    probe->add_option("--threads", probe_args.threads)->check(CLI::Range(1u, 256u));

    int sweep_min = 12;
    int sweep_max = 15;
    int sweep_m = 2;
    bool sweep_csv = false;
    auto* sweep = app.add_subcommand("sweep", "extremal construction sweep over n");
    sweep->add_option("--n-min", sweep_min);
    sweep->add_option("--n-max", sweep_max);
    sweep->add_option("--m", sweep_m);
    sweep->add_flag("--csv", sweep_csv, "CSV rows instead of JSON");

    ht::VerifyOptions verify_options;
    std::string gq_list = "5,7,11";
    std::string hq_list = "3,5";
    auto* verify = app.add_subcommand("verify", "run the acceptance battery of finite claims");
    verify->add_option("--threads", verify_options.threads)->check(CLI::Range(1u, 256u));
    verify->add_flag("--timings", verify_options.timings, "include wall-clock seconds per row");
    verify->add_flag("--inject-fault", verify_options.inject_fault, "add one edge to each g_q before the freeness check");
    verify->add_option("--gq", gq_list, "field orders for the g_q rows");
    verify->add_option("--hq", hq_list, "field orders for the h_q rows");
    verify->add_option("--seed", verify_options.seed, "seed for the randomized rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*inv) return run_invariants(pattern_path, inv_n, inv_alpha);
        if (*cons) {
            for (const auto& [key, value] : raw_params)
                if (cons->count(std::string("--") + key)) cons_params[key] = value;
            return run_construct(cons_name, cons_params, cons_sizes, cons_out);
        }
        if (*tile) return run_tile(tile_args);
        if (*probe) return run_probe(probe_args);
        if (*sweep) return run_sweep(sweep_min, sweep_max, sweep_m, sweep_csv);
        if (*verify) {
            auto orders = [](const std::string& text) {
                std::vector<std::uint32_t> out;
                for (int q : parse_int_list(text)) {
                    if (q < 2) throw ht::Error("field orders must be at least 2");
                    out.push_back(static_cast<std::uint32_t>(q));
                }
                return out;
            };
            verify_options.gq_orders = gq_list.empty() ? std::vector<std::uint32_t>{} : orders(gq_list);
            verify_options.hq_orders = hq_list.empty() ? std::vector<std::uint32_t>{} : orders(hq_list);
            return run_verify(verify_options);
        }
    } catch (const ht::BudgetExceeded& e) {
        std::cerr << "hypertile: " << e.what() << '\n';
        return exit_budget;
    } catch (const std::exception& e) {
        std::cerr << "hypertile: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
