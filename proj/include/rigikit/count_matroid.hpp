#pragma once

// The count matroid M_f(G) and polymatroid PM_f(G) induced by
//   f(F) = sum_{v in V(F)} capacity(v) - offset,
// via a vertex-capacitated pebble game, together with exponential oracles
// (partition minima) used to check it.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigikit/error.hpp"
#include "rigikit/graph.hpp"

namespace rigikit {

/// Rank together with a partition {F0, F1..Fk} of the queried set attaining
/// value = |F0| + sum f(Fi).
struct RankCertificate {
    long value = 0;
    EdgeSet free_part;             // F0
    std::vector<EdgeSet> parts;    // F1..Fk, nonempty
    EdgeSet basis;                 // a maximal independent subset (empty for oracle certificates)

    bool operator==(const RankCertificate&) const = default;
};

inline long certificate_value(const Multigraph& g, const RankCertificate& c, const CountProfile& prof) {
    long v = static_cast<long>(c.free_part.size());
    for (const auto& p : c.parts) v += f_value(g, p, prof);
    return v;
}

inline void require_countable(const Multigraph& g, const CountProfile& prof) {
    for (const auto& v : g.vertices())
        if (v.kind == VertexKind::Hinge)
            throw InputError("vertex '" + v.id + "' is a hinge; count-matroid operations need bodies and rods");
    for (const auto& e : g.edges()) {
        const long need = prof.offset + 1;
        const long have = prof.capacity(g.kind(e.u)) + prof.capacity(g.kind(e.v));
        if (have < need) throw InputError("edge '" + e.id + "' cannot hold offset+1 pebbles");
    }
}

/// Pebble game for the count sum capacity - offset.
///
/// Every vertex starts with capacity(v) pebbles.  An edge uv is accepted iff
/// offset+1 pebbles can be gathered on {u, v} by reversing directed paths;
/// it is then directed out of an endpoint holding a pebble, consuming it.
/// Invariant: pebbles(v) + outdegree(v) = capacity(v).
class PebbleGame {
public:
    PebbleGame(const Multigraph& g, const CountProfile& prof) : g_(&g), prof_(prof) {
        require_countable(g, prof);
        pebbles_.resize(g.num_vertices());
        for (std::size_t v = 0; v < g.num_vertices(); ++v) pebbles_[v] = prof.capacity(g.kind(v));
        out_.assign(g.num_vertices(), {});
        tail_.assign(g.num_edges(), kNone);
    }

    const Multigraph& graph() const { return *g_; }
    int pebbles(std::size_t v) const { return pebbles_[v]; }
    std::size_t outdegree(std::size_t v) const { return out_[v].size(); }
    bool inserted(std::size_t e) const { return tail_[e] != kNone; }
    std::size_t tail(std::size_t e) const { return tail_[e]; }

    /// Try to add edge e; true iff the inserted set stays independent.
    bool try_insert(std::size_t e) {
        if (inserted(e)) throw std::logic_error("edge inserted twice");
        if (gather(e)) return false;
        const auto& ed = g_->edge(e);
        const std::size_t t = pebbles_[ed.u] > 0 ? ed.u : ed.v;
        --pebbles_[t];
        tail_[e] = t;
        add_out(t, e);
        return true;
    }

    /// Remove an inserted edge, returning its pebble to the tail.
    void remove(std::size_t e) {
        if (!inserted(e)) throw std::logic_error("removing an edge that is not inserted");
        const std::size_t t = tail_[e];
        erase_out(t, e);
        tail_[e] = kNone;
        ++pebbles_[t];
    }

    /// Gather offset+1 pebbles on the endpoints of e.  Returns std::nullopt on
    /// success; otherwise the vertex set reachable from {u, v}, which spans a
    /// tight set of inserted edges.
    std::optional<std::vector<std::size_t>> gather(std::size_t e) {
        const auto& ed = g_->edge(e);
        const std::size_t u = ed.u, v = ed.v;
        const int need = prof_.offset + 1;
        while (pebbles_[u] + pebbles_[v] < need) {
            std::vector<char> seen(g_->num_vertices(), 0);
            seen[u] = seen[v] = 1;
            if (find_pebble(u, seen) || find_pebble(v, seen)) continue;
            std::vector<std::size_t> region;
            for (std::size_t w = 0; w < seen.size(); ++w)
                if (seen[w]) region.push_back(w);
            return region;
        }
        return std::nullopt;
    }

    bool invariant_holds() const {
        for (std::size_t v = 0; v < g_->num_vertices(); ++v)
            if (pebbles_[v] < 0 || pebbles_[v] + static_cast<int>(out_[v].size()) != prof_.capacity(g_->kind(v)))
                return false;
        return true;
    }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    std::size_t head(std::size_t e) const {
        const auto& ed = g_->edge(e);
        return tail_[e] == ed.u ? ed.v : ed.u;
    }

    void add_out(std::size_t t, std::size_t e) {
        auto& o = out_[t];
        o.insert(std::lower_bound(o.begin(), o.end(), e), e);
    }
    void erase_out(std::size_t t, std::size_t e) {
        auto& o = out_[t];
        o.erase(std::lower_bound(o.begin(), o.end(), e));
    }

    // Depth-first search along out-edges in ascending edge order for a vertex
    // outside `seen` holding a pebble; reverses the path and moves the pebble
    // to `start`.
    bool find_pebble(std::size_t start, std::vector<char>& seen) {
        std::vector<std::size_t> parent_edge(g_->num_vertices(), kNone);
        std::vector<std::pair<std::size_t, std::size_t>> stack;  // (vertex, next out index)
        stack.emplace_back(start, 0);
        while (!stack.empty()) {
            auto& [x, i] = stack.back();
            if (i == out_[x].size()) {
                stack.pop_back();
                continue;
            }
            const std::size_t e = out_[x][i++];
            const std::size_t w = head(e);
            if (seen[w]) continue;
            seen[w] = 1;
            parent_edge[w] = e;
            if (pebbles_[w] > 0) {
                reverse_path(start, w, parent_edge);
                return true;
            }
            stack.emplace_back(w, 0);
        }
        return false;
    }

    void reverse_path(std::size_t start, std::size_t w, const std::vector<std::size_t>& parent_edge) {
        --pebbles_[w];
        ++pebbles_[start];
        std::size_t cur = w;
        while (cur != start) {
            const std::size_t e = parent_edge[cur];
            const std::size_t prev = tail_[e];
            erase_out(prev, e);
            tail_[e] = cur;
            add_out(cur, e);
            cur = prev;
        }
    }

    const Multigraph* g_;
    CountProfile prof_;
    std::vector<int> pebbles_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::size_t> tail_;
};

namespace detail {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

inline std::size_t shared_count(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t n = 0;
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
        if (a[i] < b[j])
            ++i;
        else if (b[j] < a[i])
            ++j;
        else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

}  // namespace detail

/// Result of inserting a set in order: the game state, accepted and rejected edges.
struct PebbleRun {
    PebbleGame game;
    std::vector<std::size_t> accepted;
    std::vector<std::size_t> rejected;
};

inline PebbleRun run_pebble_game(const Multigraph& g, const EdgeSet& F, const CountProfile& prof) {
    F.validate(g);
    PebbleRun run{PebbleGame(g, prof), {}, {}};
    for (auto e : F) (run.game.try_insert(e) ? run.accepted : run.rejected).push_back(e);
    return run;
}

/// True iff |F'| <= f(F') for every nonempty F' ⊆ F.
inline bool is_independent(const Multigraph& g, const EdgeSet& F, const CountProfile& prof) {
    return run_pebble_game(g, F, prof).rejected.empty();
}

/// Rank of F in M_f with a partition certificate built from the tight
/// regions left at the rejected edges.
inline RankCertificate rank(const Multigraph& g, const EdgeSet& F, const CountProfile& prof) {
    auto run = run_pebble_game(g, F, prof);
    RankCertificate cert;
    cert.value = static_cast<long>(run.accepted.size());
    cert.basis = EdgeSet(run.accepted);
    if (run.rejected.empty()) {
        cert.free_part = F;
        return cert;
    }
    std::vector<std::vector<std::size_t>> regions;
    for (auto e : run.rejected) {
        auto region = run.game.gather(e);
        if (!region) throw std::logic_error("rejected edge became insertable");
        regions.push_back(std::move(*region));
    }
    // Tight regions sharing two or more vertices have a tight union.
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < regions.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < regions.size() && !merged; ++j)
                if (detail::shared_count(regions[i], regions[j]) >= 2) {
                    std::vector<std::size_t> u;
                    std::set_union(regions[i].begin(), regions[i].end(), regions[j].begin(), regions[j].end(),
                                   std::back_inserter(u));
                    regions[i] = std::move(u);
                    regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                }
    }
    std::sort(regions.begin(), regions.end());
    std::vector<char> in_region(g.num_vertices());
    std::vector<std::size_t> free_part;
    std::vector<std::vector<std::size_t>> parts(regions.size());
    for (auto e : F) {
        const auto& ed = g.edge(e);
        bool placed = false;
        for (std::size_t r = 0; r < regions.size() && !placed; ++r) {
            const auto& reg = regions[r];
            if (std::binary_search(reg.begin(), reg.end(), ed.u) && std::binary_search(reg.begin(), reg.end(), ed.v)) {
                parts[r].push_back(e);
                placed = true;
            }
        }
        if (!placed) free_part.push_back(e);
    }
    cert.free_part = EdgeSet(std::move(free_part));
    for (auto& p : parts) cert.parts.emplace_back(std::move(p));
    return cert;
}

/// Exhaustive oracle over all subsets of a base edge set (at most kMaxEdges
/// edges): f on every subset, the partition minimum
///   fhat(S) = min sum f(S_i)  over partitions of S,
/// and the matroid rank
///   r(S) = min |S_0| + sum f(S_i)  over partitions {S_0, S_1..S_k}.
class SubsetOracle {
public:
    static constexpr std::size_t kMaxEdges = 14;
    static constexpr long kInf = std::numeric_limits<long>::max() / 4;

    SubsetOracle(const Multigraph& g, EdgeSet base, const CountProfile& prof) : g_(&g), base_(std::move(base)) {
        base_.validate(g);
        if (base_.size() > kMaxEdges)
            throw InputError("brute-force oracle limited to " + std::to_string(kMaxEdges) + " edges");
        if (g.num_vertices() > 64) throw InputError("brute-force oracle limited to 64 vertices");
        require_countable(g, prof);
        const std::size_t n = base_.size();
        const std::size_t full = std::size_t{1} << n;
        std::vector<std::uint64_t> vmask(full, 0);
        f_.assign(full, 0);
        for (std::size_t m = 1; m < full; ++m) {
            const std::size_t low = static_cast<std::size_t>(std::countr_zero(m));
            const auto& ed = g.edge(base_[low]);
            vmask[m] = vmask[m & (m - 1)] | (1ULL << ed.u) | (1ULL << ed.v);
            long s = -prof.offset;
            for (std::uint64_t vm = vmask[m]; vm; vm &= vm - 1)
                s += prof.capacity(g.kind(static_cast<std::size_t>(std::countr_zero(vm))));
            f_[m] = s;
        }
        fhat_.assign(full, kInf);
        fhat_choice_.assign(full, 0);
        rank_.assign(full, kInf);
        rank_choice_.assign(full, 0);
        fhat_[0] = 0;
        rank_[0] = 0;
        for (std::size_t m = 1; m < full; ++m) {
            const std::size_t low = m & (~m + 1);
            const std::size_t rest = m ^ low;
            // lowest element sits in free part
            rank_[m] = rank_[rest] + 1;
            rank_choice_[m] = 0;
            // or in a part T containing it
            for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
                const std::size_t T = sub | low;
                const long fv = f_[T];
                if (fhat_[m ^ T] + fv < fhat_[m]) {
                    fhat_[m] = fhat_[m ^ T] + fv;
                    fhat_choice_[m] = T;
                }
                if (rank_[m ^ T] + fv < rank_[m]) {
                    rank_[m] = rank_[m ^ T] + fv;
                    rank_choice_[m] = T;
                }
                if (sub == 0) break;
            }
        }
    }

    const EdgeSet& base() const { return base_; }
    std::size_t full_mask() const { return (std::size_t{1} << base_.size()) - 1; }

    long f(std::size_t mask) const { return f_.at(mask); }
    long fhat(std::size_t mask) const { return fhat_.at(mask); }
    long rank(std::size_t mask) const { return rank_.at(mask); }

    /// |S'| <= f(S') for all nonempty S' ⊆ S.
    bool independent(std::size_t mask) const { return rank_.at(mask) == std::popcount(mask); }

    RankCertificate rank_certificate(std::size_t mask) const {
        RankCertificate c;
        c.value = rank_.at(mask);
        std::vector<std::size_t> free_part;
        std::size_t m = mask;
        while (m) {
            const std::size_t T = rank_choice_[m];
            if (T == 0) {
                const std::size_t low = m & (~m + 1);
                free_part.push_back(base_[static_cast<std::size_t>(std::countr_zero(low))]);
                m ^= low;
            } else {
                c.parts.push_back(EdgeSet::from_mask(base_, T));
                m ^= T;
            }
        }
        c.free_part = EdgeSet(std::move(free_part));
        return c;
    }

    /// A partition of S attaining fhat(S).
    std::vector<EdgeSet> fhat_partition(std::size_t mask) const {
        std::vector<EdgeSet> parts;
        for (std::size_t m = mask; m; m ^= fhat_choice_[m]) parts.push_back(EdgeSet::from_mask(base_, fhat_choice_[m]));
        return parts;
    }

    /// Mask of an edge set contained in the base.
    std::size_t mask_of(const EdgeSet& F) const {
        std::size_t m = 0;
        for (auto e : F) {
            auto it = std::lower_bound(base_.begin(), base_.end(), e);
            if (it == base_.end() || *it != e) throw InputError("edge set not contained in oracle base");
            m |= std::size_t{1} << static_cast<std::size_t>(it - base_.begin());
        }
        return m;
    }

private:
    const Multigraph* g_;
    EdgeSet base_;
    std::vector<long> f_, fhat_, rank_;
    std::vector<std::size_t> fhat_choice_, rank_choice_;
};

inline constexpr std::size_t kBruteForceRankLimit = 12;

/// Exact minimum of |F0| + sum f(Fi) over partitions of F (|F| <= 12).
inline RankCertificate rank_bruteforce(const Multigraph& g, const EdgeSet& F, const CountProfile& prof) {
    if (F.size() > kBruteForceRankLimit)
        throw InputError("rank_bruteforce limited to " + std::to_string(kBruteForceRankLimit) + " edges");
    SubsetOracle oracle(g, F, prof);
    return oracle.rank_certificate(oracle.full_mask());
}

/// fhat(F) = min sum f(F_i) over partitions, computed as r_f(f∘F) in M_f(f∘G).
inline long fhat(const Multigraph& g, const EdgeSet& F, const CountProfile& prof) {
    F.validate(g);
    require_countable(g, prof);
    auto ex = expand_f(g, prof);
    return rank(ex.graph, ex.lift(F), prof).value;
}

/// Partition minimum of sum f(F_i) by enumeration (|F| <= 12).
inline long fhat_bruteforce(const Multigraph& g, const EdgeSet& F, const CountProfile& prof) {
    if (F.size() > kBruteForceRankLimit)
        throw InputError("fhat_bruteforce limited to " + std::to_string(kBruteForceRankLimit) + " edges");
    SubsetOracle oracle(g, F, prof);
    return oracle.fhat(oracle.full_mask());
}

struct Decomposition {
    enum class Kind { M, P };
    Kind kind = Kind::M;
    std::vector<EdgeSet> components;  // ordered by smallest edge index

    bool operator==(const Decomposition&) const = default;
};

/// M-connected components of M_f(G): the classes of the fundamental circuits
/// of one basis, merged.
inline Decomposition m_components(const Multigraph& g, const CountProfile& prof) {
    auto run = run_pebble_game(g, EdgeSet::all(g), prof);
    detail::UnionFind uf(g.num_edges());
    for (auto e : run.rejected) {
        PebbleGame probe = run.game;
        auto region = probe.gather(e);
        if (!region) throw std::logic_error("rejected edge became insertable");
        const auto& reg = *region;
        auto inside = [&](std::size_t v) { return std::binary_search(reg.begin(), reg.end(), v); };
        for (auto b : run.accepted) {
            const auto& eb = g.edge(b);
            if (!inside(eb.u) || !inside(eb.v)) continue;
            PebbleGame swap = run.game;
            swap.remove(b);
            if (swap.try_insert(e)) uf.unite(e, b);
        }
    }
    std::vector<std::vector<std::size_t>> groups(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) groups[uf.find(e)].push_back(e);
    Decomposition d{Decomposition::Kind::M, {}};
    for (auto& grp : groups)
        if (!grp.empty()) d.components.emplace_back(std::move(grp));
    std::sort(d.components.begin(), d.components.end(),
              [](const EdgeSet& a, const EdgeSet& b) { return a[0] < b[0]; });
    return d;
}

/// P-connected components of PM_f(G), pulled back from the M-components of
/// M_f(f∘G).  The result minimizes sum f(C_i) over partitions of E.
inline Decomposition p_components(const Multigraph& g, const CountProfile& prof) {
    require_countable(g, prof);
    auto ex = expand_f(g, prof);
    auto mc = m_components(ex.graph, prof);
    std::vector<std::size_t> comp_of(g.num_edges(), SIZE_MAX);
    Decomposition d{Decomposition::Kind::P, {}};
    for (const auto& comp : mc.components) {
        std::vector<std::size_t> orig;
        for (auto c : comp) orig.push_back(ex.origin[c]);
        EdgeSet os(std::move(orig));
        if (os.size() == 1 && comp_of[os[0]] != SIZE_MAX) continue;  // another coloop copy of a trivial edge
        for (auto e : os) {
            if (comp_of[e] != SIZE_MAX)
                throw std::logic_error("copies of edge '" + g.edge(e).id + "' split across M-components");
            comp_of[e] = d.components.size();
        }
        d.components.push_back(std::move(os));
    }
    std::sort(d.components.begin(), d.components.end(),
              [](const EdgeSet& a, const EdgeSet& b) { return a[0] < b[0]; });
    return d;
}

/// Whether the nonempty set C is P-connected in PM_f(G).
inline bool is_p_connected(const Multigraph& g, const EdgeSet& C, const CountProfile& prof) {
    if (C.empty()) return false;
    auto sub = edge_subgraph(g, C);
    return p_components(sub, prof).components.size() == 1;
}

/// Replace a nontrivial P-connected set C by a star: a new body joined once
/// to every vertex of V(C).
inline Multigraph simplify_component(const Multigraph& g, const EdgeSet& C, const CountProfile& prof) {
    C.validate(g);
    if (C.size() < 2) throw InputError("only nontrivial P-connected components can be simplified");
    if (!is_p_connected(g, C, prof)) throw InputError("edge set is not P-connected");
    auto vertices = g.vertices();
    std::string center = "v_c";
    for (int k = 1; g.find_vertex(center); ++k) center = "v_c" + std::to_string(k);
    const std::size_t c = vertices.size();
    vertices.push_back({center, VertexKind::Body});
    std::vector<Edge> edges;
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        if (!C.contains(e)) edges.push_back(g.edge(e));
    for (auto w : spanned_vertices(g, C)) edges.push_back({c, w, center + "-" + g.vertex(w).id});
    return Multigraph::from_parts(std::move(vertices), std::move(edges));
}

/// Combinatorial verdict for a counting model.
struct CountVerdict {
    Model model = Model::BodyRodBar;
    long edges = 0;
    long global_count = 0;  // D|B| + (D-1)|R| - D, specialised per model
    long rank = 0;
    bool independent = false;       // every nonempty subset satisfies the count
    bool rigid = false;             // rank == global count
    bool minimally_rigid = false;   // independent and |E| == global count

    bool operator==(const CountVerdict&) const = default;
};

/// The graph as seen by a counting model: body-bar makes every vertex a
/// body, rod-bar every vertex a rod, body-rod-bar keeps the labels.
inline Multigraph as_model(const Multigraph& g, Model model) {
    switch (model) {
        case Model::BodyBar: return with_uniform_kind(g, VertexKind::Body);
        case Model::RodBar: return with_uniform_kind(g, VertexKind::Rod);
        case Model::BodyRodBar: return g;
        default: throw InputError("check_counts supports body-bar, rod-bar and body-rod-bar");
    }
}

/// Counts are checked through rank(E) rather than subset enumeration.
/// A single-vertex graph is rigid only for body models.
inline CountVerdict check_counts(const Multigraph& g, const CountProfile& prof, Model model) {
    auto h = as_model(g, model);
    CountVerdict v;
    v.model = model;
    v.edges = static_cast<long>(h.num_edges());
    std::vector<std::size_t> all(h.num_vertices());
    std::iota(all.begin(), all.end(), 0);
    v.global_count = vertex_set_count(h, all, prof);
    v.rank = rank(h, EdgeSet::all(h), prof).value;
    v.independent = v.rank == v.edges;
    const bool enough_vertices = h.num_vertices() >= 2 || (h.num_vertices() == 1 && h.kind(0) == VertexKind::Body);
    v.rigid = enough_vertices && v.rank == v.global_count;
    v.minimally_rigid = v.rigid && v.independent;
    return v;
}

}  // namespace rigikit
