#pragma once

#include <p123/p123.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

namespace p123::cli {

enum exit_code : int { ok = 0, input_error = 1, not_nice = 2, verification_failed = 3 };

struct RunConfig {
    std::string input = "-";
    std::string labelling;
    std::string format = "auto";
    bool trace = false;
    std::uint64_t seed = 1;
    int trials = 100;
    int n = 20;
    double p = 0.2;
    int k_max = 3;
    std::string out;
};

inline std::optional<std::string> read_source(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    return std::string(std::istreambuf_iterator<char>(in), {});
}

/// DIMACS when the first line that is neither blank nor a comment is a problem line.
inline bool looks_like_dimacs(std::string_view text) {
    bool dimacs = false, decided = false;
    detail::for_each_line(text, [&](std::string_view line, std::size_t) {
        if (decided) return;
        auto toks = detail::split_ws(line);
        if (toks.empty() || toks[0] == "c" || toks[0].front() == '#') return;
        dimacs = toks[0] == "p";
        decided = true;
    });
    return dimacs;
}

inline Graph parse_graph(const std::string& text, const std::string& format) {
    if (format == "dimacs" || (format == "auto" && looks_like_dimacs(text))) return parse_dimacs(text);
    return parse_edge_list(text);
}

/// Reads and parses the graph; on failure reports to `err` and returns nullopt.
inline std::optional<Graph> load_graph(const RunConfig& cfg, std::ostream& err) {
    auto text = read_source(cfg.input);
    if (!text) {
        err << "cannot read " << cfg.input << '\n';
        return std::nullopt;
    }
    try {
        return parse_graph(*text, cfg.format);
    } catch (const parse_error& e) {
        err << cfg.input << ": " << e.what() << '\n';
    } catch (const precondition_error& e) {
        err << cfg.input << ": " << e.what() << '\n';
    }
    return std::nullopt;
}

inline int report_conflicts(const Graph& g, const Labelling& l, std::ostream& out) {
    auto conflicts = find_conflicts(g, l);
    for (auto e : conflicts) out << "conflict " << g.edge(e).u << ' ' << g.edge(e).v << '\n';
    return conflicts.empty() ? ok : verification_failed;
}

inline int cmd_label(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto g = load_graph(cfg, err);
    if (!g) return input_error;
    PipelineReport report;
    try {
        report = label_graph(*g, cfg.trace);
    } catch (const not_nice_error& e) {
        err << e.what() << '\n';
        return not_nice;
    } catch (const unreachable_case& e) {
        err << "internal assertion: " << e.what() << '\n';
        return verification_failed;
    }
    if (cfg.trace)
        for (const auto& line : report.trace) err << line << '\n';

    std::ostringstream body;
    body << write_labelling(*g, report.labelling) << '\n' << write_products(*g, report.labelling);
    if (cfg.out.empty()) {
        out << body.str();
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!(file << body.str())) {
            err << "cannot write " << cfg.out << '\n';
            return input_error;
        }
    }
    if (report_conflicts(*g, report.labelling, err) != ok) {
        err << "labelling failed verification\n";
        return verification_failed;
    }
    return ok;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto g = load_graph(cfg, err);
    if (!g) return input_error;
    auto text = read_source(cfg.labelling);
    if (!text) {
        err << "cannot read " << cfg.labelling << '\n';
        return input_error;
    }
    Labelling l;
    try {
        l = parse_labelling(*g, *text);
    } catch (const parse_error& e) {
        err << cfg.labelling << ": " << e.what() << '\n';
        return input_error;
    }
    int rc = report_conflicts(*g, l, out);
    if (rc == ok) out << "p-proper\n";
    return rc;
}

inline int cmd_fuzz(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.trials < 1 || cfg.n < 1 || !(cfg.p >= 0.0 && cfg.p <= 1.0)) {
        err << "fuzz needs trials >= 1, n >= 1 and p in [0, 1]\n";
        return input_error;
    }
    int failures = 0;
    std::map<std::string, int> claims;
    for (int t = 0; t < cfg.trials; ++t) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(t);
        Graph g = random_nice_graph(cfg.n, cfg.p, seed);
        std::string problem;
        try {
            auto report = label_graph(g);
            for (auto& [name, count] : report.stats.claims) claims[name] += count;
            if (report_conflicts(g, report.labelling, err) != ok) problem = "conflicts remain";
            else if (!locality_violations(g, report).empty()) problem = "key changed outside fixed components";
        } catch (const std::exception& e) {
            problem = e.what();
        }
        if (problem.empty()) continue;
        err << "trial " << t << " seed " << seed << ": " << problem << '\n';
        if (failures++ == 0) {
            const std::string path = cfg.out.empty() ? "fuzz_failure.edges" : cfg.out;
            std::ofstream file(path, std::ios::binary);
            file << "# seed " << seed << " n " << cfg.n << " p " << cfg.p << '\n' << to_edge_list(g);
            err << "reproducer written to " << path << '\n';
        }
    }
    out << cfg.trials - failures << '/' << cfg.trials << " ok\n";
    for (auto& [name, count] : claims) out << "claim " << name << ' ' << count << '\n';
    return failures == 0 ? ok : verification_failed;
}

inline int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto g = load_graph(cfg, err);
    if (!g) return input_error;
    try {
        auto k = brute_force_min_k(*g, cfg.k_max);
        if (k) out << "chi_P = " << *k << '\n';
        else out << "chi_P > " << cfg.k_max << '\n';
    } catch (const precondition_error& e) {
        err << e.what() << '\n';
        return input_error;
    }
    return ok;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"p-proper 3-labellings of nice graphs"};
    app.require_subcommand(1);
    RunConfig cfg;
    const std::vector<std::string> formats{"auto", "edgelist", "dimacs"};

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Input format (auto detects a leading 'p' line)")
            ->check(CLI::IsMember(formats));
    };

    auto* label = app.add_subcommand("label", "Label a graph and print labels and products");
    label->add_option("input", cfg.input, "Graph file, or - for standard input");
    add_format(label);
    label->add_flag("--trace", cfg.trace, "Print partition, step and claim decisions to standard error");
    label->add_option("--out", cfg.out, "Write the labelling here instead of standard output");

    auto* verify = app.add_subcommand("verify", "Check a labelling for conflicts");
    verify->add_option("input", cfg.input, "Graph file, or - for standard input")->required();
    verify->add_option("labelling", cfg.labelling, "Labelling file with 'u v label' lines")->required();
    add_format(verify);

    auto* fuzz = app.add_subcommand("fuzz", "Label and verify seeded random nice graphs");
    fuzz->add_option("--trials", cfg.trials, "Number of graphs")->capture_default_str();
    fuzz->add_option("--n", cfg.n, "Vertex count")->capture_default_str();
    fuzz->add_option("--p", cfg.p, "Edge probability")->capture_default_str();
    fuzz->add_option("--seed", cfg.seed, "Seed of the first trial; trial t uses seed + t")->capture_default_str();
    fuzz->add_option("--out", cfg.out, "Where to write the first failing graph (default fuzz_failure.edges)");

    auto* oracle = app.add_subcommand("oracle", "Smallest k with a p-proper k-labelling, by exhaustive search");
    oracle->add_option("input", cfg.input, "Graph file, or - for standard input");
    add_format(oracle);
    oracle->add_option("--kmax", cfg.k_max, "Largest k to try")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return input_error;
    }

    if (label->parsed()) return cmd_label(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (fuzz->parsed()) return cmd_fuzz(cfg, out, err);
    return cmd_oracle(cfg, out, err);
}

}  // namespace p123::cli
