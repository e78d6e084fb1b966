#pragma once

// Multigraphs with a body/rod (or body/hinge) vertex labelling, the counting
// function f(F) = D|B(F)| + (D-1)|R(F)| - D, and the expansion f∘G that
// replaces every edge e by f(e) parallel copies.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rigikit/error.hpp"

namespace rigikit {

enum class VertexKind { Body, Rod, Hinge };

inline std::string_view to_string(VertexKind k) {
    switch (k) {
        case VertexKind::Body: return "body";
        case VertexKind::Rod: return "rod";
        case VertexKind::Hinge: return "hinge";
    }
    return "?";
}

inline VertexKind parse_vertex_kind(std::string_view s) {
    if (s == "body") return VertexKind::Body;
    if (s == "rod") return VertexKind::Rod;
    if (s == "hinge") return VertexKind::Hinge;
    throw InputError("unknown vertex kind '" + std::string(s) + "'");
}

/// Framework models understood by the engines.
enum class Model { BodyBar, RodBar, BodyRodBar, BodyHinge, Direction };

inline std::string_view to_string(Model m) {
    switch (m) {
        case Model::BodyBar: return "body-bar";
        case Model::RodBar: return "rod-bar";
        case Model::BodyRodBar: return "body-rod-bar";
        case Model::BodyHinge: return "body-hinge";
        case Model::Direction: return "direction";
    }
    return "?";
}

inline Model parse_model(std::string_view s) {
    if (s == "body-bar") return Model::BodyBar;
    if (s == "rod-bar") return Model::RodBar;
    if (s == "body-rod-bar") return Model::BodyRodBar;
    if (s == "body-hinge") return Model::BodyHinge;
    if (s == "direction") return Model::Direction;
    throw InputError("unknown model '" + std::string(s) + "'");
}

struct Vertex {
    std::string id;
    VertexKind kind = VertexKind::Body;
    bool operator==(const Vertex&) const = default;
};

struct Edge {
    std::size_t u = 0;  // vertex index
    std::size_t v = 0;
    std::string id;
    bool operator==(const Edge&) const = default;
};

/// Input to build_graph: endpoints by vertex id, optional edge ids
/// (defaulting to "e<k>").
struct GraphSpec {
    std::vector<Vertex> vertices;
    struct EdgeSpec {
        std::string u, v;
        std::string id;
    };
    std::vector<EdgeSpec> edges;
};

/// Loop-free multigraph; immutable once built.
class Multigraph {
public:
    Multigraph() = default;

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }
    const Edge& edge(std::size_t i) const { return edges_.at(i); }
    VertexKind kind(std::size_t v) const { return vertices_.at(v).kind; }

    std::optional<std::size_t> find_vertex(std::string_view id) const {
        auto it = vertex_index_.find(std::string(id));
        if (it == vertex_index_.end()) return std::nullopt;
        return it->second;
    }

    /// Edge indices incident to v, ascending.
    const std::vector<std::size_t>& incident(std::size_t v) const { return incidence_.at(v); }

    std::size_t count_kind(VertexKind k) const {
        return static_cast<std::size_t>(std::count_if(vertices_.begin(), vertices_.end(),
                                                      [k](const Vertex& x) { return x.kind == k; }));
    }

    bool operator==(const Multigraph& o) const { return vertices_ == o.vertices_ && edges_ == o.edges_; }

    /// Validating constructor from indexed data.
    static Multigraph from_parts(std::vector<Vertex> vertices, std::vector<Edge> edges) {
        Multigraph g;
        g.vertices_ = std::move(vertices);
        g.edges_ = std::move(edges);
        g.index();
        return g;
    }

private:
    void index() {
        vertex_index_.clear();
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (!vertex_index_.emplace(vertices_[i].id, i).second)
                throw InputError("duplicate vertex id '" + vertices_[i].id + "'");
        }
        incidence_.assign(vertices_.size(), {});
        std::unordered_map<std::string, std::size_t> edge_ids;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const auto& ed = edges_[e];
            if (ed.u >= vertices_.size() || ed.v >= vertices_.size())
                throw InputError("edge '" + ed.id + "' has a dangling endpoint");
            if (ed.u == ed.v) throw InputError("edge '" + ed.id + "' is a loop at '" + vertices_[ed.u].id + "'");
            if (!edge_ids.emplace(ed.id, e).second) throw InputError("duplicate edge id '" + ed.id + "'");
            incidence_[ed.u].push_back(e);
            incidence_[ed.v].push_back(e);
        }
    }

    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, std::size_t> vertex_index_;
    std::vector<std::vector<std::size_t>> incidence_;
};

/// Same graph with every vertex relabelled to `kind`.
inline Multigraph with_uniform_kind(const Multigraph& g, VertexKind kind) {
    auto vs = g.vertices();
    for (auto& v : vs) v.kind = kind;
    return Multigraph::from_parts(std::move(vs), g.edges());
}

inline Multigraph build_graph(const GraphSpec& spec) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < spec.vertices.size(); ++i) {
        if (!index.emplace(spec.vertices[i].id, i).second)
            throw InputError("duplicate vertex id '" + spec.vertices[i].id + "'");
    }
    std::vector<Edge> edges;
    edges.reserve(spec.edges.size());
    for (std::size_t k = 0; k < spec.edges.size(); ++k) {
        const auto& es = spec.edges[k];
        std::string id = es.id.empty() ? "e" + std::to_string(k) : es.id;
        auto u = index.find(es.u);
        auto v = index.find(es.v);
        if (u == index.end()) throw InputError("edge '" + id + "' references unknown vertex '" + es.u + "'");
        if (v == index.end()) throw InputError("edge '" + id + "' references unknown vertex '" + es.v + "'");
        if (u->second == v->second) throw InputError("edge '" + id + "' is a loop at '" + es.u + "'");
        edges.push_back({u->second, v->second, std::move(id)});
    }
    return Multigraph::from_parts(spec.vertices, std::move(edges));
}

/// Sorted set of edge indices of a host graph.
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(std::vector<std::size_t> ids) : ids_(std::move(ids)) {
        std::sort(ids_.begin(), ids_.end());
        ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    }

    static EdgeSet all(const Multigraph& g) {
        std::vector<std::size_t> ids(g.num_edges());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
        return EdgeSet(std::move(ids));
    }
    /// Subset of `base` selected by the bits of `mask` (bit i <-> base[i]).
    static EdgeSet from_mask(const EdgeSet& base, std::uint64_t mask) {
        std::vector<std::size_t> ids;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (mask >> i & 1U) ids.push_back(base[i]);
        return EdgeSet(std::move(ids));
    }

    void validate(const Multigraph& g) const {
        if (!ids_.empty() && ids_.back() >= g.num_edges())
            throw InputError("edge index " + std::to_string(ids_.back()) + " not in graph");
    }

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    std::size_t operator[](std::size_t i) const { return ids_[i]; }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }
    const std::vector<std::size_t>& ids() const { return ids_; }
    bool contains(std::size_t e) const { return std::binary_search(ids_.begin(), ids_.end(), e); }

    bool operator==(const EdgeSet&) const = default;
    auto operator<=>(const EdgeSet&) const = default;

private:
    std::vector<std::size_t> ids_;
};

inline EdgeSet set_union(const EdgeSet& a, const EdgeSet& b) {
    std::vector<std::size_t> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return EdgeSet(std::move(out));
}
inline EdgeSet set_intersection(const EdgeSet& a, const EdgeSet& b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return EdgeSet(std::move(out));
}
inline EdgeSet set_difference(const EdgeSet& a, const EdgeSet& b) {
    std::vector<std::size_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return EdgeSet(std::move(out));
}

/// Subgraph on all vertices of g keeping only the edges in `keep` (ids preserved).
inline Multigraph edge_subgraph(const Multigraph& g, const EdgeSet& keep) {
    std::vector<Edge> edges;
    for (auto e : keep) edges.push_back(g.edge(e));
    return Multigraph::from_parts(g.vertices(), std::move(edges));
}

/// Parameters of a vertex-weighted count: F is counted against
/// sum_{v in V(F)} capacity(v) - offset.
///
/// The rigidity count has capacity D for bodies, D-1 for rods and offset D
/// (D = (d+1 choose 2)).  The direction count has capacity d for every
/// vertex and offset d+1.
struct CountProfile {
    enum class Kind { BodyRod, Direction };

    int d = 3;
    int D = 6;
    int body_capacity = 6;
    int rod_capacity = 5;
    int offset = 6;
    Kind kind = Kind::BodyRod;

    static constexpr int kMinDim = 2;
    static constexpr int kMaxDim = 6;

    static CountProfile body_rod(int d) {
        check_dim(d);
        const int D = d * (d + 1) / 2;
        return {d, D, D, D - 1, D, Kind::BodyRod};
    }
    static CountProfile direction(int d) {
        check_dim(d);
        return {d, d * (d + 1) / 2, d, d, d + 1, Kind::Direction};
    }

    /// Capacity of a vertex; hinges are never counted directly.
    int capacity(VertexKind k) const {
        switch (k) {
            case VertexKind::Body: return body_capacity;
            case VertexKind::Rod: return kind == Kind::Direction ? body_capacity : rod_capacity;
            case VertexKind::Hinge:
                throw InputError("hinge vertices must be expanded to rods before counting");
        }
        return 0;
    }

    bool operator==(const CountProfile&) const = default;

private:
    static void check_dim(int d) {
        if (d < kMinDim || d > kMaxDim)
            throw InputError("dimension " + std::to_string(d) + " outside supported range [2, 6]");
    }
};

struct VertexCounts {
    std::size_t vertices = 0;
    std::size_t bodies = 0;
    std::size_t rods = 0;
    bool operator==(const VertexCounts&) const = default;
};

/// |V(F)|, |B(F)|, |R(F)| of the vertices spanned by F.  Hinges are counted
/// with rods.
inline VertexCounts vertex_counts(const Multigraph& g, const EdgeSet& F) {
    std::vector<bool> seen(g.num_vertices(), false);
    VertexCounts c;
    auto visit = [&](std::size_t v) {
        if (seen[v]) return;
        seen[v] = true;
        ++c.vertices;
        if (g.kind(v) == VertexKind::Body)
            ++c.bodies;
        else
            ++c.rods;
    };
    for (auto e : F) {
        visit(g.edge(e).u);
        visit(g.edge(e).v);
    }
    return c;
}

/// Vertex indices spanned by F, ascending.
inline std::vector<std::size_t> spanned_vertices(const Multigraph& g, const EdgeSet& F) {
    std::vector<std::size_t> vs;
    for (auto e : F) {
        vs.push_back(g.edge(e).u);
        vs.push_back(g.edge(e).v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

/// Count of a vertex set: sum of capacities minus the offset.
inline long vertex_set_count(const Multigraph& g, const std::vector<std::size_t>& vs, const CountProfile& prof) {
    long s = 0;
    for (auto v : vs) s += prof.capacity(g.kind(v));
    return s - prof.offset;
}

/// f(F) for nonempty F.
inline long f_value(const Multigraph& g, const EdgeSet& F, const CountProfile& prof) {
    if (F.empty()) throw InputError("f is only evaluated on nonempty edge sets");
    return vertex_set_count(g, spanned_vertices(g, F), prof);
}

inline long f_edge(const Multigraph& g, std::size_t e, const CountProfile& prof) {
    const auto& ed = g.edge(e);
    return static_cast<long>(prof.capacity(g.kind(ed.u)) + prof.capacity(g.kind(ed.v))) - prof.offset;
}

/// f∘G together with the map e -> copies of e (indices into the expanded graph).
struct Expansion {
    Multigraph graph;
    std::vector<EdgeSet> copies;  // indexed by original edge
    std::vector<std::size_t> origin;  // expanded edge -> original edge

    EdgeSet lift(const EdgeSet& F) const {
        std::vector<std::size_t> ids;
        for (auto e : F) ids.insert(ids.end(), copies[e].begin(), copies[e].end());
        return EdgeSet(std::move(ids));
    }
};

/// Replace every edge by `multiplicity(e)` parallel copies, ids "<id>#<j>".
template <class Multiplicity>
Expansion expand_edges(const Multigraph& g, Multiplicity&& multiplicity) {
    Expansion out;
    std::vector<Edge> edges;
    out.copies.resize(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const long m = multiplicity(e);
        if (m < 1) throw InputError("edge '" + g.edge(e).id + "' would expand to no copies");
        std::vector<std::size_t> ids;
        for (long j = 0; j < m; ++j) {
            ids.push_back(edges.size());
            out.origin.push_back(e);
            edges.push_back({g.edge(e).u, g.edge(e).v, g.edge(e).id + "#" + std::to_string(j)});
        }
        out.copies[e] = EdgeSet(std::move(ids));
    }
    out.graph = Multigraph::from_parts(g.vertices(), std::move(edges));
    return out;
}

/// f∘G.
inline Expansion expand_f(const Multigraph& g, const CountProfile& prof) {
    return expand_edges(g, [&](std::size_t e) { return f_edge(g, e, prof); });
}

}  // namespace rigikit
