#pragma once

#include <polytour/harness.hpp>
#include <polytour/polytour.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace polytour::cli {

// Exit codes shared by every subcommand.
enum exit_code : int { ok = 0, predicate_failed = 1, parse_failed = 2, budget = 3, violation = 4 };

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error(errc::malformed_input, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw error(errc::malformed_input, "cannot write '" + path + "'");
    f << text;
}

inline bool is_parse_error(errc c) {
    return c == errc::malformed_input || c == errc::bad_character || c == errc::empty_region;
}

inline int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
    Polyomino p;
    try {
        p = parse_region(read_file(path));
    } catch (const error& e) {
        if (e.code() == errc::not_connected) {
            out << "not connected\n";
            return predicate_failed;
        }
        err << e.what() << '\n';
        return parse_failed;
    }
    const bool simple = is_simply_connected(p);
    const bool even = is_even(p);
    out << "cells " << p.size() << '\n';
    if (simple && even) {
        const Polyomino s = halve(p);
        out << "even, simply-connected, S = " << s.size() << (s.size() == 1 ? " cell" : " cells") << '\n'
            << to_ascii(s);
        return ok;
    }
    out << (simple ? "simply-connected" : "not simply connected") << ", " << (even ? "even" : "not even") << '\n';
    return predicate_failed;
}

inline int cmd_improve(const std::string& path, bool trace, const std::string& out_path, std::ostream& out,
                       std::ostream& err) {
    Pseudotour tour;
    try {
        tour = parse_tour(read_file(path));
    } catch (const error& e) {
        err << e.what() << '\n';
        return is_parse_error(e.code()) || e.code() == errc::not_connected ? parse_failed : predicate_failed;
    }
    try {
        auto [better, report] = improve(tour);
        if (trace)
            err << write_trace(report);
        if (report.k() == 0)
            err << "already regular\n";
        write_output(out_path, write_tour(better), out);
    } catch (const error& e) {
        err << e.what() << '\n';
        return predicate_failed;
    }
    return ok;
}

inline int cmd_turn_graph(const std::string& path, std::ostream& out, std::ostream& err) {
    try {
        const Pseudotour tour = parse_tour(read_file(path));
        out << write_turn_graph(build_turn_graph(tour));
    } catch (const error& e) {
        err << e.what() << '\n';
        return is_parse_error(e.code()) ? parse_failed : predicate_failed;
    }
    return ok;
}

inline int cmd_min_tour(const std::string& path, const std::string& method, const EnumerationLimits& limits,
                        const std::string& out_path, std::ostream& out, std::ostream& err) {
    Polyomino p;
    try {
        p = parse_region(read_file(path));
    } catch (const error& e) {
        err << e.what() << '\n';
        return e.code() == errc::not_connected ? predicate_failed : parse_failed;
    }
    if (!is_even(p) || !is_simply_connected(p)) {
        err << "region must be an even polyomino without holes\n";
        return predicate_failed;
    }
    try {
        RegionPtr region = share(p);
        int t_min = 0;
        Pseudotour best;
        if (method == "oracle") {
            auto m = min_turn_tour(region, limits);
            t_min = m.t_min;
            best = m.witnesses.front();
        } else {
            auto r = min_turn_regular_search(halve(p));
            t_min = r.turns;
            best = tour_from_spanning_tree(r.tree);
            ensure(turn_count(best) == t_min, "regular search turn count mismatch");
        }
        write_output(out_path, "# t_min " + std::to_string(t_min) + "\n" + write_tour(best), out);
        if (!out_path.empty() && out_path != "-")
            out << "t_min " << t_min << '\n';
    } catch (const error& e) {
        err << e.what() << '\n';
        return e.code() == errc::budget_exceeded ? budget : predicate_failed;
    }
    return ok;
}

inline int cmd_verify(const CorpusOptions& opts, const std::string& out_path, std::ostream& out, std::ostream& err) {
    std::vector<InstanceResult> results;
    try {
        results = run_corpus(opts);
    } catch (const error& e) {
        err << e.what() << '\n';
        return e.code() == errc::budget_exceeded ? budget : predicate_failed;
    }
    std::size_t failed = 0;
    for (const auto& r : results) {
        out << result_line(r) << '\n';
        failed += !r.passed();
    }
    out << "instances " << results.size() << " passed " << results.size() - failed << " failed " << failed << '\n';
    if (!out_path.empty()) {
        try {
            write_output(out_path, summary_json(opts, results).dump(2) + "\n", out);
        } catch (const error& e) {
            err << e.what() << '\n';
            return parse_failed;
        }
    }
    return failed ? violation : ok;
}

inline int cmd_render(const std::string& path, const std::string& format, const std::string& layers, int scale,
                      const std::string& out_path, std::ostream& out, std::ostream& err) {
    try {
        const std::string text = read_file(path);
        std::optional<Pseudotour> tour;
        Polyomino region;
        if (text.find(',') != std::string::npos) {
            tour = parse_tour(text);
            require_valid(*tour);
            region = tour->region();
        } else {
            region = parse_region(text);
        }
        RenderSpec spec;
        spec.format = format == "svg" ? RenderFormat::Svg : RenderFormat::Ascii;
        spec.scale = scale;
        std::stringstream ls(layers);
        for (std::string name; std::getline(ls, name, ',');)
            if (!name.empty())
                spec.layers.push_back(parse_layer(name));
        write_output(out_path, render(region, tour, spec), out);
    } catch (const error& e) {
        err << e.what() << '\n';
        return parse_failed;
    }
    return ok;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Minimum-turn tours of even polyominoes"};
    app.require_subcommand(1);

    std::string file, out_path, method = "regular", format = "ascii", layers = "tour";
    bool trace = false;
    int scale = 24;
    EnumerationLimits limits;
    CorpusOptions corpus;
    corpus.jobs = std::max(1u, std::thread::hardware_concurrency());

    auto* check = app.add_subcommand("check", "Report connectivity, holes and evenness of a region");
    check->add_option("region", file, "Region file (ASCII grid or 'cell x y' lines)")->required();

    auto* imp = app.add_subcommand("improve", "Run the delete-then-stitch pipeline on a tour");
    imp->add_option("tour", file, "Tour file")->required();
    imp->add_flag("--trace", trace, "Print one line per pipeline step to stderr");
    imp->add_option("-o,--out", out_path, "Write the improved tour here instead of stdout");

    auto* tg = app.add_subcommand("turn-graph", "Print the turn graph of a tour or pseudotour");
    tg->add_option("tour", file, "Tour file")->required();

    auto* mt = app.add_subcommand("min-tour", "Find a minimum-turn tour of an even region");
    mt->add_option("region", file, "Region file")->required();
    mt->add_option("--method", method, "oracle (exhaustive tours) or regular (spanning-tree search)")
        ->check(CLI::IsMember({"oracle", "regular"}));
    mt->add_option("--max-cells-s", limits.max_cells_S, "Oracle size cap, in cells of the halved region");
    mt->add_option("--time-budget", limits.time_budget, "Oracle time budget in seconds");
    mt->add_option("-o,--out", out_path, "Write the tour here instead of stdout");

    auto* ver = app.add_subcommand("verify", "Exhaustively check all hole-free base regions up to a size");
    ver->add_option("--max-cells", corpus.max_cells, "Largest base region size");
    ver->add_option("--proposition-max-cells", corpus.proposition_max_cells,
                    "Largest base region size for the pseudotour check");
    ver->add_option("--jobs", corpus.jobs, "Worker threads");
    ver->add_option("--time-budget", corpus.limits.time_budget, "Per-enumeration time budget in seconds");
    ver->add_option("--out", out_path, "Write a JSON summary here");

    auto* ren = app.add_subcommand("render", "Draw a region or tour as ASCII art or SVG");
    ren->add_option("input", file, "Region or tour file")->required();
    ren->add_option("--format", format, "ascii or svg")->check(CLI::IsMember({"ascii", "svg"}));
    ren->add_option("--layers", layers, "Comma-separated subset of region,tour,turn-graph,tree");
    ren->add_option("--scale", scale, "Pixels per cell (svg)");
    ren->add_option("-o,--out", out_path, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : parse_failed;
    }

    if (*check)
        return cmd_check(file, out, err);
    if (*imp)
        return cmd_improve(file, trace, out_path, out, err);
    if (*tg)
        return cmd_turn_graph(file, out, err);
    if (*mt)
        return cmd_min_tour(file, method, limits, out_path, out, err);
    if (*ver)
        return cmd_verify(corpus, out_path, out, err);
    if (*ren)
        return cmd_render(file, format, layers, scale, out_path, out, err);
    return parse_failed;
}

} // namespace polytour::cli
