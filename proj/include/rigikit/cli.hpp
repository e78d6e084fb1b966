#pragma once

// Command-line front end.  run() parses argv (without the program name),
// writes the report to `out` and diagnostics to `err`, and returns the exit
// code: 0 success, 1 bad input (flags, schema, missing file), 2 the two
// engines disagree.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rigikit/analysis.hpp"
#include "rigikit/count_matroid.hpp"
#include "rigikit/error.hpp"
#include "rigikit/flat_geometry.hpp"
#include "rigikit/json_io.hpp"

namespace rigikit::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kDisagreement = 2 };

struct Options {
    std::string file;
    std::optional<int> dim;
    std::optional<std::string> model;
    std::uint64_t prime = kDefaultPrime;
    int trials = 3;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    bool oracle = false;
    std::size_t cases = 100;
    std::size_t max_vertices = 7;
    std::size_t max_edges = 24;
    double edge_probability = 0.5;
    double parallel_probability = 0.3;
    double rod_bias = 0.5;
    std::string dump_dir;
};

namespace detail {

inline void add_common(CLI::App* app, Options& o) {
    app->add_option("--dim", o.dim, "spatial dimension d (2..6)");
    app->add_option("--prime", o.prime, "prime modulus below 2^32")->capture_default_str();
    app->add_option("--trials", o.trials, "random realizations per analysis")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--seed", o.seed, "master seed");
    app->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app->add_flag("--oracle", o.oracle, "enable brute-force cross-checks on small inputs");
}

struct Loaded {
    GraphDocument doc;
    Multigraph graph;
    Model model;
    int d;
    std::uint64_t seed;
};

inline Loaded load(const Options& o) {
    Loaded l;
    l.doc = load_document(o.file);
    l.model = o.model ? parse_model(*o.model) : l.doc.model;
    if (o.dim)
        l.d = *o.dim;
    else if (l.doc.dimension)
        l.d = *l.doc.dimension;
    else
        throw InputError("no dimension: pass --dim or set \"dimension\" in '" + o.file + "'");
    (void)CountProfile::body_rod(l.d);
    l.graph = to_graph(l.doc);
    l.seed = o.seed ? *o.seed : l.doc.seed.value_or(1);
    return l;
}

inline std::string join(const std::vector<std::string>& xs, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
    return s;
}

inline void write_text(std::ostream& out, const Report& r) {
    out << "model: " << to_string(r.model) << " (d=" << r.d << ", D=" << r.D << ")\n";
    out << "graph: " << r.graph.vertices << " vertices (" << r.graph.bodies << " bodies, " << r.graph.rods
        << " rods, " << r.graph.hinges << " hinges), " << r.graph.edges << " edges\n";
    out << "combinatorial rank: " << r.combinatorial_rank << " (rigid at " << r.target << ")\n";
    out << "linear ranks:";
    for (auto x : r.linear_ranks) out << ' ' << x;
    out << " (max " << r.max_linear_rank << ")\n";
    out << "kernel dimension: " << r.kernel_dimension << " (trivial " << r.trivial_dimension << ")\n";
    out << "verdict: " << r.verdict << "\n";
    out << "agreement: " << (r.agreement ? "yes" : "no") << "\n";
    out << "P-components:";
    for (const auto& c : r.p_components) out << " {" << join(c) << "}";
    out << "\n";
}

/// Brute-force checks for small inputs: the partition-minimum rank and,
/// for very small graphs, the whole polymatroid.
inline Json oracle_checks(const Loaded& l, const Report& r, const Options& o, bool& ok) {
    Json j = Json::object();
    const auto cm = counted_model(l.graph, l.model, l.d);
    if (cm.counted.num_edges() <= kBruteForceRankLimit) {
        const long brute = rank_bruteforce(cm.counted, EdgeSet::all(cm.counted), cm.prof).value;
        j["rank_bruteforce"] = brute;
        ok = ok && brute == r.combinatorial_rank;
    } else {
        j["rank_bruteforce"] = "skipped (more than 12 counted edges)";
    }
    if (l.model != Model::BodyHinge && l.graph.num_edges() <= 6) {
        Rng rng(derive_seed(l.seed, 1000));
        auto chk = check_polymatroid(l.graph, l.model, l.d, o.prime, 10, rng);
        j["polymatroid"] = {{"subsets", chk.subsets}, {"mismatches", chk.mismatches}};
        if (chk.mismatches) j["polymatroid"]["first_mismatch"] = chk.first_mismatch;
        ok = ok && chk.mismatches == 0;
    } else {
        j["polymatroid"] = "skipped";
    }
    return j;
}

inline int cmd_analyze(const Options& o, std::ostream& out) {
    auto l = load(o);
    AnalysisOptions opt;
    opt.trials = o.trials;
    opt.seed = l.seed;
    opt.prime = o.prime;
    if (l.doc.joints) {
        if (l.model != Model::Direction) throw InputError("joints are only used by the direction model");
        opt.joints = joints_of(l.doc, l.graph, l.d, PrimeField(o.prime));
    }
    const auto r = analyze(l.graph, l.model, l.d, opt);
    bool ok = r.bound_ok && r.trivial_in_kernel && (r.agreement || r.fixed_configuration);
    Json oracle;
    if (o.oracle) oracle = oracle_checks(l, r, o, ok);
    if (o.format == "json") {
        auto j = to_json(r);
        if (o.oracle) j["oracle"] = oracle;
        out << j.dump(2) << "\n";
    } else {
        write_text(out, r);
        if (o.oracle) out << "oracle: " << oracle.dump() << "\n";
    }
    return ok ? kOk : kDisagreement;
}

inline int cmd_fuzz(const Options& o, std::ostream& out, std::ostream& err) {
    FuzzConfig cfg;
    cfg.model = parse_model(o.model.value_or("body-rod-bar"));
    cfg.d = o.dim.value_or(3);
    cfg.cases = o.cases;
    cfg.seed = o.seed.value_or(1);
    cfg.prime = o.prime;
    cfg.trials = o.trials;
    cfg.oracle = o.oracle;
    cfg.graphs.max_vertices = o.max_vertices;
    cfg.graphs.max_edges = o.max_edges;
    cfg.graphs.edge_probability = o.edge_probability;
    cfg.graphs.parallel_probability = o.parallel_probability;
    cfg.graphs.rod_bias = o.rod_bias;
    const auto s = fuzz_equivalence(cfg);
    if (!o.dump_dir.empty()) {
        std::filesystem::create_directories(o.dump_dir);
        for (const auto& c : s.counterexamples) {
            auto doc = document_from_graph(c.graph, s.model, s.d);
            doc.seed = c.analysis_seed;
            const auto path = std::filesystem::path(o.dump_dir) / ("case-" + std::to_string(c.index) + ".json");
            std::ofstream(path) << to_json(doc).dump(2) << "\n";
            err << "counterexample written to " << path.string() << "\n";
        }
    }
    if (o.format == "json") {
        out << to_json(s).dump(2) << "\n";
    } else {
        out << s.headline() << "\n";
        out << "model " << to_string(s.model) << ", d=" << s.d << ", seed " << s.seed << "\n";
        out << "escalated " << s.escalated << ", bound violations " << s.bound_violations
            << ", trivial-motion violations " << s.trivial_violations << "\n";
        if (cfg.oracle)
            out << "oracle: " << s.oracle_cases << " cases, " << s.oracle_subsets << " subsets, "
                << s.oracle_mismatches << " mismatches\n";
        for (const auto& c : s.counterexamples) out << "case " << c.index << ": " << c.reason << "\n";
    }
    if (!s.ok()) err << "disagreement: " << s.counterexamples.size() << " counterexample(s)\n";
    return s.ok() ? kOk : kDisagreement;
}

inline int cmd_decompose(const Options& o, std::ostream& out) {
    auto l = load(o);
    const auto cm = counted_model(l.graph, l.model, l.d);
    const auto pc = original_components(cm);
    const auto mc = m_components(cm.counted, cm.prof).components;
    // Components containing each vertex, among the nontrivial ones.
    std::vector<std::size_t> per_vertex(l.graph.num_vertices(), 0);
    std::size_t nontrivial = 0;
    for (const auto& c : pc) {
        if (c.size() >= 2) ++nontrivial;
        for (auto v : spanned_vertices(l.graph, c)) ++per_vertex[v];
    }
    if (o.format == "json") {
        Json j;
        j["schema"] = kSchemaVersion;
        j["type"] = "decomposition";
        j["model"] = std::string(to_string(l.model));
        j["dimension"] = l.d;
        j["p_components"] = components_json(l.graph, pc);
        j["nontrivial_p_components"] = nontrivial;
        Json pv = Json::object();
        for (std::size_t v = 0; v < per_vertex.size(); ++v) pv[l.graph.vertex(v).id] = per_vertex[v];
        j["components_per_vertex"] = pv;
        j["m_components"] = components_json(cm.counted, mc);
        out << j.dump(2) << "\n";
    } else {
        out << "P-components (" << pc.size() << ", " << nontrivial << " nontrivial):\n";
        for (const auto& c : pc) {
            std::vector<std::string> ids;
            for (auto e : c) ids.push_back(l.graph.edge(e).id);
            out << "  {" << join(ids) << "}\n";
        }
        out << "M-components of the counted graph: " << mc.size() << "\n";
    }
    return kOk;
}

inline int cmd_truncate_demo(const Options& o, std::ostream& out) {
    const PrimeField f(o.prime);
    Rng rng(o.seed.value_or(1));
    const auto ex = hyperplane_pencil_example(f);
    const long rhs = truncation_rhs_bruteforce(ex.family, f);
    const auto forced = truncate_by(ex.family, ex.hyperplane_through_line, f);
    const auto forced_lhs = span_rank(forced, all_flats(forced), f);
    const auto random = dilworth_truncate(ex.family, f, rng);
    const auto random_lhs = span_rank(random, all_flats(random), f);

    auto fam = random_flat_family(6, 12, f, rng);
    const auto fam_rhs = truncation_rhs_bruteforce(fam, f);
    const auto fam_cut = dilworth_truncate(fam, f, rng);
    const auto fam_lhs = span_rank(fam_cut, all_flats(fam_cut), f);
    std::vector<std::size_t> fam_ranks;
    for (const auto& fl : fam.flats) fam_ranks.push_back(fl.rank());

    if (o.format == "json") {
        Json j;
        j["schema"] = kSchemaVersion;
        j["type"] = "truncate-demo";
        j["pencil"] = {{"flats", {"A1", "A2", "A3"}},
                       {"ranks", {3, 3, 3}},
                       {"partition_minimum", rhs},
                       {"hyperplane_through_common_line", {{"span_rank", forced_lhs}, {"matches", forced_lhs == static_cast<std::size_t>(rhs)}}},
                       {"random_hyperplane", {{"span_rank", random_lhs}, {"matches", random_lhs == static_cast<std::size_t>(rhs)}}}};
        j["random_family"] = {{"ambient", fam.ambient},
                              {"ranks", fam_ranks},
                              {"partition_minimum", fam_rhs},
                              {"truncated_span_rank", fam_lhs},
                              {"matches", fam_lhs == static_cast<std::size_t>(fam_rhs)}};
        out << j.dump(2) << "\n";
    } else {
        out << "three planes of P^3 through a common line\n";
        out << "  partition minimum: " << rhs << "\n";
        out << "  hyperplane through the line: span rank " << forced_lhs << "\n";
        out << "  random hyperplane: span rank " << random_lhs << "\n";
        out << "random family in F^" << fam.ambient << ": span rank " << fam_lhs << ", partition minimum " << fam_rhs
            << "\n";
    }
    return kOk;
}

}  // namespace detail

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"rigikit: rigidity of bar frameworks by counting and by exact linear algebra"};
    app.require_subcommand(1);
    Options o;

    auto* analyze_cmd = app.add_subcommand("analyze", "analyze one graph document");
    analyze_cmd->add_option("file", o.file, "graph document (JSON)")->required();
    analyze_cmd->add_option("--model", o.model, "override the document's model");
    detail::add_common(analyze_cmd, o);

    auto* fuzz_cmd = app.add_subcommand("fuzz", "compare both engines on random graphs");
    fuzz_cmd->add_option("--model", o.model, "model (default body-rod-bar)");
    fuzz_cmd->add_option("--cases", o.cases, "number of random graphs")->capture_default_str();
    fuzz_cmd->add_option("--max-vertices", o.max_vertices, "largest vertex count (<= 8)")->capture_default_str();
    fuzz_cmd->add_option("--max-edges", o.max_edges, "largest edge count (<= 24)")->capture_default_str();
    fuzz_cmd->add_option("--edge-prob", o.edge_probability, "edge probability")->check(CLI::Range(0.0, 1.0));
    fuzz_cmd->add_option("--parallel-prob", o.parallel_probability, "parallel-edge probability")->check(CLI::Range(0.0, 0.95));
    fuzz_cmd->add_option("--rod-bias", o.rod_bias, "probability that a vertex is a rod")->check(CLI::Range(0.0, 1.0));
    fuzz_cmd->add_option("--dump-dir", o.dump_dir, "write counterexample documents here");
    detail::add_common(fuzz_cmd, o);

    auto* decompose_cmd = app.add_subcommand("decompose", "P-connected components of a graph document");
    decompose_cmd->add_option("file", o.file, "graph document (JSON)")->required();
    decompose_cmd->add_option("--model", o.model, "override the document's model");
    detail::add_common(decompose_cmd, o);

    auto* demo_cmd = app.add_subcommand("truncate-demo", "Dilworth truncation showcase");
    detail::add_common(demo_cmd, o);

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        (void)PrimeField(o.prime);
        if (*analyze_cmd) return detail::cmd_analyze(o, out);
        if (*fuzz_cmd) return detail::cmd_fuzz(o, out, err);
        if (*decompose_cmd) return detail::cmd_decompose(o, out);
        if (*demo_cmd) return detail::cmd_truncate_demo(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace rigikit::cli
