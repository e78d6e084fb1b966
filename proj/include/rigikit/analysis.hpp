#pragma once

// Verdict engine and cross-validation harness.  Every analysis runs the
// count engine and the matrix engine on the same graph and records where
// they agree.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "rigikit/count_matroid.hpp"
#include "rigikit/error.hpp"
#include "rigikit/field.hpp"
#include "rigikit/flat_geometry.hpp"
#include "rigikit/graph.hpp"
#include "rigikit/rigidity.hpp"

namespace rigikit {

struct AnalysisOptions {
    int trials = 3;
    int max_trials = 10;  // escalation ceiling when the ranks disagree
    std::uint64_t seed = 1;
    std::uint64_t prime = kDefaultPrime;
    std::optional<JointConfig<PrimeField>> joints;  // fixed joints, direction model only
};

struct GraphSummary {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t bodies = 0;
    std::size_t rods = 0;
    std::size_t hinges = 0;
    bool operator==(const GraphSummary&) const = default;
};

/// A rank certificate with edges named by id.
struct NamedCertificate {
    long value = 0;
    std::vector<std::string> free_part;
    std::vector<std::vector<std::string>> parts;
    bool operator==(const NamedCertificate&) const = default;
};

struct Report {
    Model model = Model::BodyRodBar;
    int d = 3;
    int D = 6;
    std::uint64_t prime = kDefaultPrime;
    std::uint64_t seed = 1;
    int trials = 3;
    GraphSummary graph;

    long combinatorial_rank = 0;
    NamedCertificate certificate;
    bool independent = false;
    long target = 0;  // rank at which the framework is infinitesimally rigid

    std::vector<std::uint64_t> trial_seeds;
    std::vector<long> linear_ranks;
    long max_linear_rank = 0;
    long columns = 0;
    long kernel_dimension = 0;
    long trivial_dimension = 0;
    bool trivial_in_kernel = true;  // over every trial
    bool bound_ok = true;           // every trial rank <= combinatorial rank
    bool fixed_configuration = false;

    std::string verdict;
    bool rigid = false;
    bool minimally_rigid = false;
    bool flexible = false;
    bool agreement = false;

    std::vector<std::vector<std::string>> p_components;

    bool operator==(const Report&) const = default;
};

/// The graph seen by the count engine for a model.
struct CountedModel {
    Multigraph base;      // original edges, kinds adjusted to the model
    Multigraph counted;   // graph whose M_f rank is the combinatorial rank
    CountProfile prof;
    std::vector<EdgeSet> copies;  // original edge -> counted edges
    long target = 0;
};

namespace detail {

inline void require_kinds(const Multigraph& g, Model model) {
    auto bad = [&](const Vertex& v, std::string_view why) {
        throw InputError("vertex '" + v.id + "' has kind " + std::string(to_string(v.kind)) + ", " + std::string(why));
    };
    if (g.num_vertices() == 0) throw InputError("graph has no vertices");
    switch (model) {
        case Model::BodyBar:
            for (const auto& v : g.vertices())
                if (v.kind != VertexKind::Body) bad(v, "body-bar frameworks have bodies only");
            break;
        case Model::RodBar:
            for (const auto& v : g.vertices())
                if (v.kind != VertexKind::Rod) bad(v, "rod-bar frameworks have rods only");
            break;
        case Model::BodyRodBar:
            for (const auto& v : g.vertices())
                if (v.kind == VertexKind::Hinge) bad(v, "hinges belong to the body-hinge model");
            break;
        case Model::BodyHinge: require_body_hinge_bipartite(g); break;
        case Model::Direction: break;
    }
}

/// Rods in the plane are not covered by the matrix engine.
inline void require_linear_dim(Model model, int d) {
    if ((model == Model::RodBar || model == Model::BodyRodBar || model == Model::BodyHinge) && d < 3)
        throw InputError(std::string(to_string(model)) + " frameworks need d >= 3");
}

inline long model_target(const Multigraph& g, Model model, int d) {
    const long n = static_cast<long>(g.num_vertices());
    if (n <= 1) return 0;
    const long D = d * (d + 1) / 2;
    switch (model) {
        case Model::Direction: return d * n - (d + 1);
        case Model::BodyHinge: {
            const long h = static_cast<long>(g.count_kind(VertexKind::Hinge));
            return D * (n - h) + (D - 1) * h - D;
        }
        default: return D * n - D - static_cast<long>(g.count_kind(VertexKind::Rod));
    }
}

}  // namespace detail

inline CountedModel counted_model(const Multigraph& g, Model model, int d) {
    detail::require_kinds(g, model);
    CountedModel cm;
    cm.target = detail::model_target(g, model, d);
    switch (model) {
        case Model::BodyHinge: {
            auto ex = hinge_to_rod_graph(g, d);
            cm.base = g;
            cm.counted = std::move(ex.graph);
            cm.copies = std::move(ex.copies);
            cm.prof = CountProfile::body_rod(d);
            return cm;
        }
        case Model::Direction: {
            cm.prof = CountProfile::direction(d);
            cm.base = with_uniform_kind(g, VertexKind::Body);
            auto ex = expand_f(cm.base, cm.prof);
            cm.counted = std::move(ex.graph);
            cm.copies = std::move(ex.copies);
            return cm;
        }
        default:
            cm.prof = CountProfile::body_rod(d);
            cm.base = g;
            cm.counted = g;
            for (std::size_t e = 0; e < g.num_edges(); ++e) cm.copies.emplace_back(std::vector<std::size_t>{e});
            return cm;
    }
}

/// Components of the polymatroid F -> r(copies(F)) on the original edges:
/// M-components of the counted graph, merged whenever they share copies of
/// one original edge.
inline std::vector<EdgeSet> original_components(const CountedModel& cm) {
    const std::size_t m = cm.base.num_edges();
    if (m == 0) return {};
    // When the counted graph is f∘base these are exactly the P-components.
    const bool f_expansion = cm.counted.num_edges() == m || cm.prof.kind == CountProfile::Kind::Direction;
    if (f_expansion) return p_components(cm.base, cm.prof).components;
    std::vector<std::size_t> origin(cm.counted.num_edges());
    for (std::size_t e = 0; e < m; ++e)
        for (auto c : cm.copies[e]) origin[c] = e;
    detail::UnionFind uf(m);
    for (const auto& comp : m_components(cm.counted, cm.prof).components)
        for (auto c : comp) uf.unite(origin[comp[0]], origin[c]);
    std::vector<std::vector<std::size_t>> groups(m);
    for (std::size_t e = 0; e < m; ++e) groups[uf.find(e)].push_back(e);
    std::vector<EdgeSet> out;
    for (auto& grp : groups)
        if (!grp.empty()) out.emplace_back(std::move(grp));
    std::sort(out.begin(), out.end(), [](const EdgeSet& a, const EdgeSet& b) { return a[0] < b[0]; });
    return out;
}

/// One randomized realization of a model.
struct TrialOutcome {
    std::uint64_t seed = 0;
    long rank = 0;
    long columns = 0;
    long trivial_dimension = 0;
    bool trivial_in_kernel = true;
    std::size_t trivial_checked = 0;    // trivial vectors tested
    std::size_t trivial_violations = 0;
};

template <Field F>
TrialOutcome run_trial(const Multigraph& g, Model model, int d, const F& f, std::uint64_t seed,
                       const std::optional<JointConfig<F>>& joints = std::nullopt) {
    Rng rng(seed);
    RigidityMatrix<F> m;
    MotionBasis<F> trivial;
    switch (model) {
        case Model::BodyBar:
        case Model::RodBar:
        case Model::BodyRodBar: {
            auto rods = sample_rod_config(g, d, f, rng);
            auto bars = sample_bar_config(g, rods, f, rng);
            m = model == Model::BodyBar ? matrix_body_bar(g, bars, f) : matrix_body_rod_bar(g, rods, bars, f);
            trivial = trivial_motions(g, rods, f);
            break;
        }
        case Model::BodyHinge: {
            auto ex = expand_hinge(g, d, f, rng);
            m = matrix_body_rod_bar(ex.graph, ex.rods, ex.bars, f);
            m.model = Model::BodyHinge;
            trivial = trivial_motions(ex.graph, ex.rods, f);
            break;
        }
        case Model::Direction: {
            auto p = joints ? *joints : sample_joints(g, d, f, rng);
            m = matrix_direction(g, d, p, f);
            trivial = trivial_direction_motions(g, d, p, f);
            break;
        }
    }
    m.seed = seed;
    TrialOutcome out;
    out.seed = seed;
    out.rank = static_cast<long>(rank_exact(m, f));
    out.columns = static_cast<long>(m.cols());
    out.trivial_dimension = static_cast<long>(rank_of_vectors<F>(trivial.vectors, m.cols(), f));
    for (const auto& v : trivial.vectors) {
        ++out.trivial_checked;
        if (!in_kernel(m, v, f)) ++out.trivial_violations;
    }
    out.trivial_in_kernel = out.trivial_violations == 0;
    return out;
}

inline NamedCertificate name_certificate(const Multigraph& g, const RankCertificate& c) {
    NamedCertificate n;
    n.value = c.value;
    for (auto e : c.free_part) n.free_part.push_back(g.edge(e).id);
    for (const auto& p : c.parts) {
        std::vector<std::string> ids;
        for (auto e : p) ids.push_back(g.edge(e).id);
        n.parts.push_back(std::move(ids));
    }
    return n;
}

inline Report analyze(const Multigraph& g, Model model, int d, const AnalysisOptions& opt = {}) {
    if (opt.trials < 1) throw InputError("at least one trial is required");
    if (opt.joints && model != Model::Direction) throw InputError("joints are only used by the direction model");
    detail::require_linear_dim(model, d);
    const PrimeField f(opt.prime);
    const auto cm = counted_model(g, model, d);

    Report r;
    r.model = model;
    r.d = d;
    r.D = d * (d + 1) / 2;
    r.prime = opt.prime;
    r.seed = opt.seed;
    r.trials = opt.trials;
    r.graph = {g.num_vertices(), g.num_edges(), g.count_kind(VertexKind::Body), g.count_kind(VertexKind::Rod),
               g.count_kind(VertexKind::Hinge)};
    r.target = cm.target;

    const auto all = EdgeSet::all(cm.counted);
    const auto cert = rank(cm.counted, all, cm.prof);
    r.combinatorial_rank = cert.value;
    r.certificate = name_certificate(cm.counted, cert);
    r.independent = cert.value == static_cast<long>(all.size());

    // Trials, escalated while the best rank stays below the count.
    r.fixed_configuration = opt.joints.has_value();
    std::optional<JointConfig<PrimeField>> joints;
    if (opt.joints) {
        joints = opt.joints;
        for (auto& p : *joints) {
            if (p.size() != static_cast<std::size_t>(d)) throw InputError("joint has the wrong dimension");
            for (auto& x : p) x %= f.modulus();
        }
    }
    const int limit = r.fixed_configuration ? 1 : std::max(opt.trials, opt.max_trials);
    const int first = r.fixed_configuration ? 1 : opt.trials;
    TrialOutcome best;
    best.rank = -1;
    for (int t = 0; t < limit; ++t) {
        if (t >= first && best.rank >= r.combinatorial_rank) break;
        const auto seed = derive_seed(opt.seed, static_cast<std::uint64_t>(t));
        auto out = run_trial(g, model, d, f, seed, joints);
        r.trial_seeds.push_back(seed);
        r.linear_ranks.push_back(out.rank);
        if (out.rank > r.combinatorial_rank) r.bound_ok = false;
        if (!out.trivial_in_kernel) r.trivial_in_kernel = false;
        if (out.rank > best.rank) best = out;
    }
    r.max_linear_rank = best.rank;
    r.columns = best.columns;
    r.kernel_dimension = best.columns - best.rank;
    r.trivial_dimension = best.trivial_dimension;
    r.agreement = r.max_linear_rank == r.combinatorial_rank;

    // Verdicts: rigidity from the matrix, minimality from single-edge deletions.
    r.rigid = r.max_linear_rank == r.target;
    bool every_edge_needed = true;
    for (std::size_t e = 0; e < g.num_edges() && every_edge_needed; ++e) {
        const auto rest = set_difference(all, cm.copies[e]);
        if (rank(cm.counted, rest, cm.prof).value >= r.combinatorial_rank) every_edge_needed = false;
    }
    r.minimally_rigid = r.rigid && every_edge_needed;
    r.flexible = !r.rigid;
    if (g.num_vertices() == 1)
        r.verdict = "trivially rigid";
    else if (r.minimally_rigid)
        r.verdict = "minimally rigid";
    else if (r.rigid)
        r.verdict = "rigid";
    else
        r.verdict = "flexible";

    for (const auto& comp : original_components(cm)) {
        std::vector<std::string> ids;
        for (auto e : comp) ids.push_back(g.edge(e).id);
        r.p_components.push_back(std::move(ids));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Random instances

struct RandomGraphConfig {
    std::size_t min_vertices = 2;
    std::size_t max_vertices = 7;
    std::size_t max_edges = 24;
    double edge_probability = 0.5;
    double parallel_probability = 0.3;
    double rod_bias = 0.5;  // probability that a vertex is a rod
};

/// Erdős–Rényi graph on n vertices plus parallel copies injected with the
/// configured probability; kinds drawn i.i.d.
template <class R>
Multigraph random_multigraph(const RandomGraphConfig& cfg, R& rng) {
    if (cfg.min_vertices < 1 || cfg.min_vertices > cfg.max_vertices) throw InputError("bad vertex range");
    std::uniform_int_distribution<std::size_t> nd(cfg.min_vertices, cfg.max_vertices);
    std::bernoulli_distribution edge(cfg.edge_probability), parallel(cfg.parallel_probability), rod(cfg.rod_bias);
    const std::size_t n = nd(rng);
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back({"v" + std::to_string(i), rod(rng) ? VertexKind::Rod : VertexKind::Body});
    std::vector<Edge> es;
    auto add = [&](std::size_t u, std::size_t v) {
        if (es.size() < cfg.max_edges) es.push_back({u, v, "e" + std::to_string(es.size())});
    };
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            if (!edge(rng)) continue;
            add(u, v);
            while (parallel(rng) && es.size() < cfg.max_edges) add(u, v);
        }
    return Multigraph::from_parts(std::move(vs), std::move(es));
}

/// Simple graph with all vertices bodies.
template <class R>
Multigraph random_simple_graph(std::size_t min_vertices, std::size_t max_vertices, double p, R& rng) {
    RandomGraphConfig cfg;
    cfg.min_vertices = min_vertices;
    cfg.max_vertices = max_vertices;
    cfg.edge_probability = p;
    cfg.parallel_probability = 0.0;
    cfg.rod_bias = 0.0;
    cfg.max_edges = max_vertices * max_vertices;
    return random_multigraph(cfg, rng);
}

/// Bipartite body/hinge graph with at least one body and one hinge.
template <class R>
Multigraph random_body_hinge_graph(std::size_t max_vertices, double p, R& rng) {
    if (max_vertices < 2) throw InputError("body-hinge graphs need two vertices");
    std::uniform_int_distribution<std::size_t> nd(2, max_vertices);
    const std::size_t n = nd(rng);
    std::uniform_int_distribution<std::size_t> hd(1, n - 1);
    const std::size_t h = hd(rng);
    std::bernoulli_distribution edge(p);
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < n - h; ++i) vs.push_back({"b" + std::to_string(i), VertexKind::Body});
    for (std::size_t i = 0; i < h; ++i) vs.push_back({"h" + std::to_string(i), VertexKind::Hinge});
    std::vector<Edge> es;
    for (std::size_t b = 0; b < n - h; ++b)
        for (std::size_t k = n - h; k < n; ++k)
            if (edge(rng)) es.push_back({b, k, "e" + std::to_string(es.size())});
    return Multigraph::from_parts(std::move(vs), std::move(es));
}

/// Up to max_flats flats of random rank in an ambient space of random size.
template <Field F, class R>
FlatFamily<F> random_flat_family(std::size_t max_flats, std::size_t max_ambient, const F& f, R& rng) {
    if (max_flats < 1 || max_ambient < 2) throw InputError("bad flat family bounds");
    std::uniform_int_distribution<std::size_t> nd(2, max_ambient), kd(1, max_flats);
    const std::size_t n = nd(rng);
    const std::size_t k = kd(rng);
    std::uniform_int_distribution<std::size_t> rd(1, n - 1);
    FlatFamily<F> fam;
    fam.ambient = n;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Vec<F>> spanning;
        const std::size_t r = rd(rng);
        for (std::size_t j = 0; j < r; ++j) spanning.push_back(random_vector<F>(n, f, rng));
        fam.add("A" + std::to_string(i + 1), make_flat<F>(n, spanning, f));
    }
    return fam;
}

// ---------------------------------------------------------------------------
// Polymatroid cross-check on small graphs

struct OracleCheck {
    std::size_t subsets = 0;
    std::size_t mismatches = 0;
    std::string first_mismatch;
};

namespace detail {

/// Row vectors spanning the flat of every base edge in one realization.
template <Field F, class R>
std::vector<std::vector<Vec<F>>> edge_flat_rows(const CountedModel& cm, Model model, int d, const F& f, R& rng) {
    const auto& g = cm.base;
    std::vector<std::vector<Vec<F>>> rows(g.num_edges());
    auto collect = [&](const RigidityMatrix<F>& m) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            auto row = m.matrix.row(i);
            rows[m.row_edge[i]].emplace_back(row.begin(), row.end());
        }
    };
    if (model == Model::Direction) {
        collect(matrix_direction(g, d, sample_joints(g, d, f, rng), f));
        return rows;
    }
    auto rods = sample_rod_config(g, d, f, rng);
    long most = 0;
    for (std::size_t e = 0; e < g.num_edges(); ++e) most = std::max(most, f_edge(g, e, cm.prof));
    for (long k = 0; k < most + 2; ++k) collect(matrix_body_bar(g, sample_bar_config(g, rods, f, rng), f));
    return rows;
}

}  // namespace detail

/// For every nonempty F of a graph with few edges: fhat by the pebble game
/// on f∘G, the brute-force partition minimum, and the dimension of the span
/// of the edge flats in a random realization must all coincide.
template <class R>
OracleCheck check_polymatroid(const Multigraph& g, Model model, int d, std::uint64_t prime, int max_trials, R& rng) {
    if (model == Model::BodyHinge) throw InputError("polymatroid oracle is not defined for the body-hinge model");
    detail::require_linear_dim(model, d);
    const PrimeField f(prime);
    const auto cm = counted_model(g, model, d);
    const auto all = EdgeSet::all(cm.base);
    SubsetOracle oracle(cm.base, all, cm.prof);
    OracleCheck out;
    std::vector<long> brute(std::size_t{1} << all.size(), 0);
    for (std::uint64_t mask = 1; mask < brute.size(); ++mask) {
        const auto F = EdgeSet::from_mask(all, mask);
        brute[mask] = oracle.fhat(mask);
        ++out.subsets;
        const long pebble = fhat(cm.base, F, cm.prof);
        if (pebble != brute[mask]) {
            ++out.mismatches;
            if (out.first_mismatch.empty())
                out.first_mismatch = "mask " + std::to_string(mask) + ": pebble fhat " + std::to_string(pebble) +
                                     " vs partition minimum " + std::to_string(brute[mask]);
        }
    }
    std::string linear_issue;
    for (int t = 0; t < max_trials; ++t) {
        const auto rows = detail::edge_flat_rows(cm, model, d, f, rng);
        const std::size_t cols = rows.empty() || rows[0].empty() ? 0 : rows[0][0].size();
        linear_issue.clear();
        for (std::uint64_t mask = 1; mask < brute.size() && linear_issue.empty(); ++mask) {
            std::vector<Vec<PrimeField>> vs;
            for (std::size_t i = 0; i < all.size(); ++i)
                if (mask >> i & 1U) vs.insert(vs.end(), rows[all[i]].begin(), rows[all[i]].end());
            const long dim = static_cast<long>(rank_of_vectors<PrimeField>(vs, cols, f));
            if (dim != brute[mask])
                linear_issue = "mask " + std::to_string(mask) + ": span dimension " + std::to_string(dim) +
                               " vs partition minimum " + std::to_string(brute[mask]);
        }
        if (linear_issue.empty()) break;
    }
    if (!linear_issue.empty()) {
        ++out.mismatches;
        if (out.first_mismatch.empty()) out.first_mismatch = linear_issue;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fuzz harness

struct FuzzConfig {
    Model model = Model::BodyRodBar;
    int d = 3;
    std::size_t cases = 100;
    std::uint64_t seed = 1;
    std::uint64_t prime = kDefaultPrime;
    int trials = 3;
    RandomGraphConfig graphs;
    bool oracle = false;
    std::size_t oracle_edge_limit = 6;
    unsigned threads = 0;  // 0: RIGIKIT_THREADS or the hardware concurrency
};

struct Counterexample {
    std::size_t index = 0;
    std::uint64_t case_seed = 0;
    std::uint64_t analysis_seed = 0;
    Multigraph graph;
    Report report;
    std::string reason;
    bool operator==(const Counterexample&) const = default;
};

struct FuzzSummary {
    Model model = Model::BodyRodBar;
    int d = 3;
    std::uint64_t seed = 1;
    std::uint64_t prime = kDefaultPrime;
    std::size_t cases = 0;
    std::size_t agree = 0;
    std::size_t escalated = 0;  // cases that needed more than the initial trials
    std::size_t bound_violations = 0;
    std::size_t trivial_violations = 0;
    std::size_t oracle_cases = 0;
    std::size_t oracle_subsets = 0;
    std::size_t oracle_mismatches = 0;
    std::vector<Counterexample> counterexamples;

    bool ok() const { return counterexamples.empty(); }
    std::string headline() const { return std::to_string(agree) + "/" + std::to_string(cases) + " agree"; }
    bool operator==(const FuzzSummary&) const = default;
};

/// Worker count: explicit request, else RIGIKIT_THREADS, else the hardware.
inline unsigned fuzz_threads(unsigned requested, std::size_t cases) {
    unsigned n = requested;
    if (n == 0) {
        n = std::max(1U, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("RIGIKIT_THREADS")) {
            const long cap = std::strtol(env, nullptr, 10);
            if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        }
    }
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, cases)));
}

template <class R>
Multigraph random_graph_for(Model model, const RandomGraphConfig& cfg, R& rng) {
    auto c = cfg;
    switch (model) {
        case Model::BodyBar: c.rod_bias = 0.0; return random_multigraph(c, rng);
        case Model::RodBar: c.rod_bias = 1.0; return random_multigraph(c, rng);
        case Model::BodyRodBar: return random_multigraph(c, rng);
        case Model::BodyHinge: return random_body_hinge_graph(c.max_vertices, c.edge_probability, rng);
        case Model::Direction: return random_simple_graph(c.min_vertices, c.max_vertices, c.edge_probability, rng);
    }
    return {};
}

/// Case i uses seed derive_seed(master, i) for the graph, derive_seed(that,
/// 0) for the analysis trials and derive_seed(that, 1) for the oracle.
inline FuzzSummary fuzz_equivalence(const FuzzConfig& cfg) {
    if (cfg.graphs.max_vertices > 8 || cfg.graphs.max_edges > 24)
        throw InputError("fuzz graphs are limited to 8 vertices and 24 edges");
    detail::require_linear_dim(cfg.model, cfg.d);
    (void)CountProfile::body_rod(cfg.d);  // range check
    (void)PrimeField(cfg.prime);

    struct CaseResult {
        bool agree = false;
        bool escalated = false;
        bool bound_violation = false;
        bool trivial_violation = false;
        bool oracle_run = false;
        OracleCheck oracle;
        std::optional<Counterexample> counterexample;
        std::string error;
    };
    std::vector<CaseResult> results(cfg.cases);

    auto run_case = [&](std::size_t i) {
        CaseResult& res = results[i];
        try {
            const auto case_seed = derive_seed(cfg.seed, i);
            Rng rng(case_seed);
            auto g = random_graph_for(cfg.model, cfg.graphs, rng);
            AnalysisOptions opt;
            opt.trials = cfg.trials;
            opt.seed = derive_seed(case_seed, 0);
            opt.prime = cfg.prime;
            auto rep = analyze(g, cfg.model, cfg.d, opt);
            res.agree = rep.agreement;
            res.escalated = static_cast<int>(rep.linear_ranks.size()) > cfg.trials;
            res.bound_violation = !rep.bound_ok;
            res.trivial_violation = !rep.trivial_in_kernel;
            std::string reason;
            if (!rep.agreement) reason = "linear rank differs from combinatorial rank";
            if (!rep.bound_ok) reason = "a trial exceeded the combinatorial rank";
            if (!rep.trivial_in_kernel) reason = "a trivial motion left the kernel";
            if (cfg.oracle && cfg.model != Model::BodyHinge && g.num_edges() <= cfg.oracle_edge_limit) {
                Rng orng(derive_seed(case_seed, 1));
                res.oracle = check_polymatroid(g, cfg.model, cfg.d, cfg.prime, 10, orng);
                res.oracle_run = true;
                if (res.oracle.mismatches && reason.empty()) reason = "polymatroid oracle: " + res.oracle.first_mismatch;
            }
            if (!reason.empty()) res.counterexample = Counterexample{i, case_seed, opt.seed, g, rep, reason};
        } catch (const std::exception& ex) {
            res.error = ex.what();
        }
    };

    const unsigned workers = fuzz_threads(cfg.threads, cfg.cases);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cfg.cases; i = next++) run_case(i);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    FuzzSummary s;
    s.model = cfg.model;
    s.d = cfg.d;
    s.seed = cfg.seed;
    s.prime = cfg.prime;
    s.cases = cfg.cases;
    for (auto& res : results) {
        if (!res.error.empty()) throw SamplingError("fuzz case failed: " + res.error);
        s.agree += res.agree;
        s.escalated += res.escalated;
        s.bound_violations += res.bound_violation;
        s.trivial_violations += res.trivial_violation;
        if (res.oracle_run) {
            ++s.oracle_cases;
            s.oracle_subsets += res.oracle.subsets;
            s.oracle_mismatches += res.oracle.mismatches;
        }
        if (res.counterexample) s.counterexamples.push_back(std::move(*res.counterexample));
    }
    return s;
}

}  // namespace rigikit
