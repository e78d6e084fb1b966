#pragma once

// Rigidity matrices over a field for the body-bar, body-rod-bar,
// identified body-hinge and direction models, plus configuration sampling
// and motion-space analysis.
//
// Motions.  An infinitesimal motion assigns a screw m(v) in the (d-1)-st
// exterior power of W to every vertex.  A bar q (a 2-vector) constrains
// <q, m(u) - m(v)> = 0.  Matrix columns for vertex v hold m(v) in "pairing
// coordinates": column I (a 2-subset) stores (-1)^{sum I} m_{I^c}, so that a
// row carrying q verbatim in block u and -q in block v evaluates exactly
// <q, m(u)> - <q, m(v)>.  screw_to_columns / columns_to_screw convert.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rigikit/error.hpp"
#include "rigikit/exterior.hpp"
#include "rigikit/field.hpp"
#include "rigikit/graph.hpp"
#include "rigikit/linalg.hpp"

namespace rigikit {

/// Rod (or hinge) subspaces, indexed by vertex; empty for bodies.
template <Field F>
struct RodConfig {
    int d = 0;
    std::vector<std::optional<GrassmannPoint<F>>> rods;

    std::size_t size() const {
        return static_cast<std::size_t>(std::count_if(rods.begin(), rods.end(), [](const auto& r) { return r.has_value(); }));
    }
};

/// Bar Plücker vectors, indexed by edge.
template <Field F>
struct BarConfig {
    int d = 0;
    std::vector<KVector<F>> bars;
};

/// Joint positions for the direction model, indexed by vertex.
template <Field F>
using JointConfig = std::vector<Vec<F>>;

template <Field F>
struct RigidityMatrix {
    Matrix<F> matrix;
    std::size_t block = 0;              // columns per vertex
    std::vector<std::size_t> row_edge;  // edge of each row
    Model model = Model::BodyRodBar;
    std::uint64_t seed = 0;

    std::size_t rows() const { return matrix.rows(); }
    std::size_t cols() const { return matrix.cols(); }
};

enum class MotionKind { Constant, RodSpin, Translation, Dilation, Nontrivial };

inline std::string_view to_string(MotionKind k) {
    switch (k) {
        case MotionKind::Constant: return "constant";
        case MotionKind::RodSpin: return "rod-spin";
        case MotionKind::Translation: return "translation";
        case MotionKind::Dilation: return "dilation";
        case MotionKind::Nontrivial: return "nontrivial";
    }
    return "?";
}

template <Field F>
struct MotionBasis {
    std::vector<Vec<F>> vectors;
    std::vector<MotionKind> kinds;

    std::size_t count(MotionKind k) const {
        return static_cast<std::size_t>(std::count(kinds.begin(), kinds.end(), k));
    }
    std::size_t trivial_dimension() const { return vectors.size() - count(MotionKind::Nontrivial); }
};

/// Screw m (degree d-1) to column coordinates of one vertex block.
template <Field F>
Vec<F> screw_to_columns(const KVector<F>& m, const F& f) {
    const int n = m.d + 1;
    if (m.k != n - 2) throw InputError("screw_to_columns: expected a (d-1)-vector");
    Vec<F> col;
    for (const auto& s : k_subsets(n, 2)) {
        const auto& c = m.coords[subset_rank(complement(s, n), n)];
        col.push_back(((s[0] + s[1]) % 2) ? f.neg(c) : c);  // 1-based parity equals 0-based parity
    }
    return col;
}

template <Field F>
KVector<F> columns_to_screw(std::span<const typename F::value_type> col, int d, const F& f) {
    const int n = d + 1;
    auto m = zero_kvector(d, n - 2, f);
    std::size_t idx = 0;
    for (const auto& s : k_subsets(n, 2)) {
        const auto& c = col[idx++];
        m.coords[subset_rank(complement(s, n), n)] = ((s[0] + s[1]) % 2) ? f.neg(c) : c;
    }
    return m;
}

inline constexpr int kMaxConfigRetries = 64;

inline bool is_rod_like(VertexKind k) { return k == VertexKind::Rod || k == VertexKind::Hinge; }

/// One random (d-1)-dimensional subspace per rod or hinge vertex, pairwise
/// non-proportional.
template <Field F, class R>
RodConfig<F> sample_rod_config(const Multigraph& g, int d, const F& f, R& rng) {
    RodConfig<F> cfg{d, std::vector<std::optional<GrassmannPoint<F>>>(g.num_vertices())};
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        if (!is_rod_like(g.kind(v))) continue;
        for (int attempt = 0;; ++attempt) {
            if (attempt == kMaxConfigRetries) throw SamplingError("sample_rod_config: could not draw distinct rods");
            auto r = sample_grassmannian(d - 1, d, f, rng);
            bool distinct = true;
            for (std::size_t u = 0; u < v && distinct; ++u)
                if (cfg.rods[u] && proportional(cfg.rods[u]->plucker, r.plucker, f)) distinct = false;
            if (distinct) {
                cfg.rods[v] = std::move(r);
                break;
            }
        }
    }
    return cfg;
}

/// q_e = x ^ y with x on the rod of u (or anywhere in W if u is a body) and
/// y likewise for v.  Incidence <q_e, r> = 0 holds by construction.
template <Field F, class R>
BarConfig<F> sample_bar_config(const Multigraph& g, const RodConfig<F>& rods, const F& f, R& rng) {
    const int d = rods.d;
    BarConfig<F> cfg{d, {}};
    auto point_on = [&](std::size_t v) {
        if (rods.rods.at(v)) return random_combination(rods.rods[v]->basis, static_cast<std::size_t>(d + 1), f, rng);
        return random_vector<F>(static_cast<std::size_t>(d + 1), f, rng);
    };
    for (const auto& e : g.edges()) {
        for (int attempt = 0;; ++attempt) {
            if (attempt == kMaxConfigRetries) throw SamplingError("sample_bar_config: degenerate bar for '" + e.id + "'");
            auto x = point_on(e.u);
            auto y = point_on(e.v);
            auto q = wedge_list<F>({x, y}, d, f);
            if (!is_zero(q, f)) {
                cfg.bars.push_back(std::move(q));
                break;
            }
        }
    }
    return cfg;
}

namespace detail {

template <Field F>
RigidityMatrix<F> bar_rows(const Multigraph& g, std::size_t block, const std::vector<Vec<F>>& row_vectors,
                           Model model, const F& f) {
    RigidityMatrix<F> m;
    m.block = block;
    m.model = model;
    m.matrix = Matrix<F>(g.num_edges(), block * g.num_vertices(), f);
    m.matrix.set_cols(block * g.num_vertices());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        for (std::size_t i = 0; i < block; ++i) {
            m.matrix(e, ed.u * block + i) = row_vectors[e][i];
            m.matrix(e, ed.v * block + i) = f.neg(row_vectors[e][i]);
        }
        m.row_edge.push_back(e);
    }
    return m;
}

}  // namespace detail

/// |E| x D|V| matrix: row e = uv carries q_e in block u and -q_e in block v.
/// Incidence with rods is not checked.
template <Field F>
RigidityMatrix<F> matrix_body_bar(const Multigraph& g, const BarConfig<F>& bars, const F& f) {
    if (bars.bars.size() != g.num_edges()) throw InputError("bar configuration does not match the graph");
    std::vector<Vec<F>> rows;
    for (const auto& q : bars.bars) rows.push_back(q.coords);
    const std::size_t D = binomial(static_cast<std::size_t>(bars.d + 1), 2);
    return detail::bar_rows(g, D, rows, Model::BodyBar, f);
}

/// Same row pattern with an unconstrained random D-vector per edge (the
/// union of D graphic matroids, no Grassmannian condition).
template <Field F, class R>
RigidityMatrix<F> matrix_unconstrained(const Multigraph& g, int d, const F& f, R& rng) {
    const std::size_t D = binomial(static_cast<std::size_t>(d + 1), 2);
    std::vector<Vec<F>> rows;
    for (std::size_t e = 0; e < g.num_edges(); ++e) rows.push_back(random_vector<F>(D, f, rng));
    return detail::bar_rows(g, D, rows, Model::BodyBar, f);
}

/// Body-rod-bar matrix; every bar must meet the rods at its endpoints.
template <Field F>
RigidityMatrix<F> matrix_body_rod_bar(const Multigraph& g, const RodConfig<F>& rods, const BarConfig<F>& bars,
                                      const F& f) {
    if (bars.bars.size() != g.num_edges()) throw InputError("bar configuration does not match the graph");
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        for (auto v : {ed.u, ed.v}) {
            if (!is_rod_like(g.kind(v))) continue;
            if (!rods.rods.at(v)) throw InputError("rod '" + g.vertex(v).id + "' has no configuration");
            if (!f.is_zero(pairing(bars.bars[e], rods.rods[v]->plucker, f)))
                throw InputError("bar '" + ed.id + "' does not meet rod '" + g.vertex(v).id + "'");
        }
    }
    auto m = matrix_body_bar(g, bars, f);
    m.model = Model::BodyRodBar;
    return m;
}

/// Trivial motions of a body-rod-bar framework: D constant screws and one
/// spin m_v (m_v(v) = r_v, zero elsewhere) per rod.
template <Field F>
MotionBasis<F> trivial_motions(const Multigraph& g, const RodConfig<F>& rods, const F& f) {
    const std::size_t D = binomial(static_cast<std::size_t>(rods.d + 1), 2);
    const std::size_t n = g.num_vertices();
    MotionBasis<F> out;
    for (std::size_t i = 0; i < D; ++i) {
        Vec<F> v(D * n, f.zero());
        for (std::size_t b = 0; b < n; ++b) v[b * D + i] = f.one();
        out.vectors.push_back(std::move(v));
        out.kinds.push_back(MotionKind::Constant);
    }
    for (std::size_t b = 0; b < n; ++b) {
        if (!rods.rods[b]) continue;
        Vec<F> v(D * n, f.zero());
        auto col = screw_to_columns(rods.rods[b]->plucker, f);
        std::copy(col.begin(), col.end(), v.begin() + static_cast<std::ptrdiff_t>(b * D));
        out.vectors.push_back(std::move(v));
        out.kinds.push_back(MotionKind::RodSpin);
    }
    return out;
}

/// Hinges turned into rods, each body-hinge edge into D-1 parallel bars on
/// the hinge.
template <Field F>
struct HingeExpansion {
    Multigraph graph;
    RodConfig<F> rods;
    BarConfig<F> bars;
    std::vector<std::size_t> origin;  // expanded edge -> original edge
};

inline void require_body_hinge_bipartite(const Multigraph& g) {
    for (const auto& v : g.vertices())
        if (v.kind == VertexKind::Rod) throw InputError("vertex '" + v.id + "' is a rod; body-hinge graphs use bodies and hinges");
    for (const auto& e : g.edges()) {
        const bool uh = g.kind(e.u) == VertexKind::Hinge;
        const bool vh = g.kind(e.v) == VertexKind::Hinge;
        if (uh == vh) throw InputError("edge '" + e.id + "' does not join a body to a hinge");
    }
}

/// (D-1)∘G with hinges relabelled as rods.
inline Expansion hinge_to_rod_graph(const Multigraph& g, int d) {
    require_body_hinge_bipartite(g);
    const long D = d * (d + 1) / 2;
    auto ex = expand_edges(g, [&](std::size_t) { return D - 1; });
    auto vs = ex.graph.vertices();
    for (auto& v : vs)
        if (v.kind == VertexKind::Hinge) v.kind = VertexKind::Rod;
    ex.graph = Multigraph::from_parts(std::move(vs), ex.graph.edges());
    return ex;
}

template <Field F, class R>
HingeExpansion<F> expand_hinge(const Multigraph& g, int d, const F& f, R& rng) {
    auto ex = hinge_to_rod_graph(g, d);
    HingeExpansion<F> out;
    out.rods = sample_rod_config(ex.graph, d, f, rng);
    out.bars = sample_bar_config(ex.graph, out.rods, f, rng);
    out.graph = std::move(ex.graph);
    out.origin = std::move(ex.origin);
    return out;
}

template <Field F, class R>
JointConfig<F> sample_joints(const Multigraph& g, int d, const F& f, R& rng) {
    JointConfig<F> p;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) p.push_back(random_vector<F>(static_cast<std::size_t>(d), f, rng));
    return p;
}

/// Direction constraints: for each edge uv, d-1 rows alpha (block u) and
/// -alpha (block v), alpha ranging over a basis of the orthogonal
/// complement of p(u) - p(v).  Block width d.
template <Field F>
RigidityMatrix<F> matrix_direction(const Multigraph& g, int d, const JointConfig<F>& joints, const F& f) {
    if (joints.size() != g.num_vertices()) throw InputError("joint configuration does not match the graph");
    const auto block = static_cast<std::size_t>(d);
    RigidityMatrix<F> m;
    m.block = block;
    m.model = Model::Direction;
    m.matrix = Matrix<F>(0, block * g.num_vertices(), f);
    m.matrix.set_cols(block * g.num_vertices());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        Matrix<F> diff(1, block, f);
        for (std::size_t i = 0; i < block; ++i) diff(0, i) = f.sub(joints[ed.u].at(i), joints[ed.v].at(i));
        if (is_zero_vector<F>(diff.row(0), f))
            throw InputError("edge '" + ed.id + "' joins coincident joints");
        for (const auto& alpha : kernel_of(std::move(diff), f)) {
            Vec<F> row(m.matrix.cols(), f.zero());
            for (std::size_t i = 0; i < block; ++i) {
                row[ed.u * block + i] = alpha[i];
                row[ed.v * block + i] = f.neg(alpha[i]);
            }
            m.matrix.append_row(row);
            m.row_edge.push_back(e);
        }
    }
    return m;
}

/// d translations and the dilation m(v) = p(v).
template <Field F>
MotionBasis<F> trivial_direction_motions(const Multigraph& g, int d, const JointConfig<F>& joints, const F& f) {
    const auto block = static_cast<std::size_t>(d);
    const std::size_t n = g.num_vertices();
    MotionBasis<F> out;
    for (std::size_t i = 0; i < block; ++i) {
        Vec<F> v(block * n, f.zero());
        for (std::size_t b = 0; b < n; ++b) v[b * block + i] = f.one();
        out.vectors.push_back(std::move(v));
        out.kinds.push_back(MotionKind::Translation);
    }
    Vec<F> dil(block * n, f.zero());
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t i = 0; i < block; ++i) dil[b * block + i] = joints[b][i];
    out.vectors.push_back(std::move(dil));
    out.kinds.push_back(MotionKind::Dilation);
    return out;
}

template <Field F>
std::size_t rank_exact(const RigidityMatrix<F>& m, const F& f) {
    return rank_of(m.matrix, f);
}

template <Field F>
bool in_kernel(const RigidityMatrix<F>& m, const Vec<F>& x, const F& f) {
    return is_zero_vector<F>(mat_vec(m.matrix, std::span<const typename F::value_type>(x), f), f);
}

/// Kernel basis: the trivial motions that lie in the kernel (an independent
/// subset, in the given order) extended by further kernel vectors tagged
/// nontrivial.
template <Field F>
MotionBasis<F> kernel_basis(const RigidityMatrix<F>& m, const MotionBasis<F>& trivial, const F& f) {
    MotionBasis<F> out;
    const std::size_t n = m.cols();
    Matrix<F> span(0, n, f);
    span.set_cols(n);
    std::size_t r = 0;
    auto try_add = [&](const Vec<F>& v, MotionKind kind) {
        Matrix<F> trial = span;
        trial.append_row(v);
        const std::size_t tr = rank_of(trial, f);
        if (tr == r) return;
        span = std::move(trial);
        r = tr;
        out.vectors.push_back(v);
        out.kinds.push_back(kind);
    };
    for (std::size_t i = 0; i < trivial.vectors.size(); ++i)
        if (in_kernel(m, trivial.vectors[i], f)) try_add(trivial.vectors[i], trivial.kinds[i]);
    for (const auto& k : kernel_of(m.matrix, f)) try_add(k, MotionKind::Nontrivial);
    return out;
}

/// Kernel basis without a trivial reference (all vectors tagged nontrivial).
template <Field F>
MotionBasis<F> kernel_basis(const RigidityMatrix<F>& m, const F& f) {
    return kernel_basis(m, MotionBasis<F>{}, f);
}

/// The body blocks of a motion as screws.
template <Field F>
KVector<F> motion_at(const Vec<F>& motion, std::size_t vertex, int d, const F& f) {
    const std::size_t D = binomial(static_cast<std::size_t>(d + 1), 2);
    return columns_to_screw<F>(std::span<const typename F::value_type>(motion).subspan(vertex * D, D), d, f);
}

}  // namespace rigikit
