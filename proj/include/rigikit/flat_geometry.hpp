#pragma once

// Families of projective flats, stored by a spanning basis of the underlying
// linear subspace: span ranks, connectivity, representative-point matroids
// and Dilworth truncation by a hyperplane.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rigikit/error.hpp"
#include "rigikit/field.hpp"
#include "rigikit/linalg.hpp"

namespace rigikit {

template <Field F>
struct Flat {
    std::size_t ambient = 0;        // N, the flat lives in P^{N-1}
    std::vector<Vec<F>> basis;      // independent
    std::size_t rank() const { return basis.size(); }
};

/// Flat spanned by arbitrary vectors; a basis is extracted by elimination.
template <Field F>
Flat<F> make_flat(std::size_t ambient, const std::vector<Vec<F>>& spanning, const F& f) {
    Matrix<F> m(0, ambient, f);
    m.set_cols(ambient);
    for (const auto& v : spanning) {
        if (v.size() != ambient) throw InputError("flat vector has wrong ambient dimension");
        m.append_row(v);
    }
    auto pivots = rref_in_place(m, f);
    Flat<F> flat{ambient, {}};
    for (std::size_t r = 0; r < pivots.size(); ++r) flat.basis.emplace_back(m.row(r).begin(), m.row(r).end());
    return flat;
}

template <Field F>
struct FlatFamily {
    std::size_t ambient = 0;
    std::vector<std::string> ids;
    std::vector<Flat<F>> flats;

    std::size_t size() const { return flats.size(); }

    void add(std::string id, Flat<F> flat) {
        if (flats.empty() && ambient == 0) ambient = flat.ambient;
        if (flat.ambient != ambient) throw InputError("flat '" + id + "' has a different ambient dimension");
        ids.push_back(std::move(id));
        flats.push_back(std::move(flat));
    }
};

/// Indices into a family.
using FlatSubset = std::vector<std::size_t>;

template <Field F>
FlatSubset all_flats(const FlatFamily<F>& fam) {
    FlatSubset s(fam.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
    return s;
}

/// rank of the span of the flats in S (0 for empty S).
template <Field F>
std::size_t span_rank(const FlatFamily<F>& fam, const FlatSubset& S, const F& f) {
    std::vector<Vec<F>> vs;
    for (auto i : S) {
        const auto& fl = fam.flats.at(i);
        if (fl.ambient != fam.ambient) throw InputError("ambient mismatch");
        vs.insert(vs.end(), fl.basis.begin(), fl.basis.end());
    }
    return rank_of_vectors<F>(vs, fam.ambient, f);
}

namespace detail {

inline constexpr std::size_t kMaxEnumeratedFlats = 16;

template <Field F>
std::vector<std::size_t> subset_span_ranks(const FlatFamily<F>& fam, const FlatSubset& S, const F& f) {
    const std::size_t n = S.size();
    std::vector<std::size_t> r(std::size_t{1} << n, 0);
    for (std::size_t m = 1; m < r.size(); ++m) {
        FlatSubset sub;
        for (std::size_t i = 0; i < n; ++i)
            if (m >> i & 1U) sub.push_back(S[i]);
        r[m] = span_rank(fam, sub, f);
    }
    return r;
}

}  // namespace detail

/// Finest partition of S into parts whose span ranks add up to span_rank(S).
/// Found by recursive search for additive bipartitions (at most 16 flats).
template <Field F>
std::vector<FlatSubset> connectivity(const FlatFamily<F>& fam, const FlatSubset& S, const F& f) {
    if (S.size() > detail::kMaxEnumeratedFlats) throw InputError("connectivity limited to 16 flats");
    if (S.empty()) return {};
    const auto ranks = detail::subset_span_ranks(fam, S, f);
    std::vector<FlatSubset> out;
    // Recurse on masks over S.
    std::vector<std::size_t> work{ranks.size() - 1};
    while (!work.empty()) {
        const std::size_t m = work.back();
        work.pop_back();
        bool split = false;
        if (std::popcount(m) > 1) {
            const std::size_t low = m & (~m + 1);
            const std::size_t rest = m ^ low;
            // bipartitions {A, m\A} with the lowest element in A and A != m
            for (std::size_t sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
                const std::size_t A = sub | low;
                if (ranks[A] + ranks[m ^ A] == ranks[m]) {
                    work.push_back(A);
                    work.push_back(m ^ A);
                    split = true;
                    break;
                }
                if (sub == 0) break;
            }
        }
        if (!split) {
            FlatSubset part;
            for (std::size_t i = 0; i < S.size(); ++i)
                if (m >> i & 1U) part.push_back(S[i]);
            out.push_back(std::move(part));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Rank of one uniformly random representative point per flat, maximised
/// over `trials` independent draws.
template <Field F, class R>
std::size_t generic_matroid_rank(const FlatFamily<F>& fam, const FlatSubset& S, const F& f, R& rng, int trials) {
    std::size_t best = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<Vec<F>> points;
        for (auto i : S) points.push_back(random_combination(fam.flats.at(i).basis, fam.ambient, f, rng));
        best = std::max(best, rank_of_vectors<F>(points, fam.ambient, f));
    }
    return best;
}

/// min over F ⊆ S of |S \ F| + span_rank(F), by enumeration.
template <Field F>
std::size_t generic_matroid_rank_bruteforce(const FlatFamily<F>& fam, const FlatSubset& S, const F& f) {
    if (S.size() > detail::kMaxEnumeratedFlats) throw InputError("enumeration limited to 16 flats");
    const auto ranks = detail::subset_span_ranks(fam, S, f);
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t m = 0; m < ranks.size(); ++m)
        best = std::min(best, S.size() - static_cast<std::size_t>(std::popcount(m)) + ranks[m]);
    return best;
}

/// min over partitions {A_1..A_k} of the family of sum (span_rank(A_i) - 1).
template <Field F>
long truncation_rhs_bruteforce(const FlatFamily<F>& fam, const F& f) {
    constexpr std::size_t kLimit = 8;
    if (fam.size() > kLimit) throw InputError("truncation_rhs_bruteforce limited to 8 flats");
    const auto ranks = detail::subset_span_ranks(fam, all_flats(fam), f);
    const std::size_t full = ranks.size();
    std::vector<long> best(full, std::numeric_limits<long>::max() / 4);
    best[0] = 0;
    for (std::size_t m = 1; m < full; ++m) {
        const std::size_t low = m & (~m + 1);
        const std::size_t rest = m ^ low;
        for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
            const std::size_t T = sub | low;
            best[m] = std::min(best[m], best[m ^ T] + static_cast<long>(ranks[T]) - 1);
            if (sub == 0) break;
        }
    }
    return best[full - 1];
}

/// Intersection of a flat with the hyperplane {x : h . x = 0}.  Returns
/// std::nullopt if the flat lies inside the hyperplane.
template <Field F>
std::optional<Flat<F>> intersect_hyperplane(const Flat<F>& flat, const Vec<F>& h, const F& f) {
    if (h.size() != flat.ambient) throw InputError("hyperplane has wrong ambient dimension");
    Vec<F> values;
    for (const auto& b : flat.basis) values.push_back(dot<F>(b, h, f));
    if (is_zero_vector<F>(values, f)) return std::nullopt;
    Matrix<F> m(1, values.size(), f);
    for (std::size_t i = 0; i < values.size(); ++i) m(0, i) = values[i];
    std::vector<Vec<F>> spanning;
    for (const auto& coeffs : kernel_of(std::move(m), f)) {
        Vec<F> v(flat.ambient, f.zero());
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            for (std::size_t j = 0; j < flat.ambient; ++j) v[j] = f.add(v[j], f.mul(coeffs[i], flat.basis[i][j]));
        spanning.push_back(std::move(v));
    }
    return make_flat(flat.ambient, spanning, f);
}

/// Intersect every flat with one given hyperplane; throws if a flat is
/// contained in it.
template <Field F>
FlatFamily<F> truncate_by(const FlatFamily<F>& fam, const Vec<F>& h, const F& f) {
    FlatFamily<F> out;
    out.ambient = fam.ambient;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        auto cut = intersect_hyperplane(fam.flats[i], h, f);
        if (!cut) throw InputError("flat '" + fam.ids[i] + "' lies inside the hyperplane");
        out.add(fam.ids[i], std::move(*cut));
    }
    return out;
}

/// Dilworth truncation by one uniformly random hyperplane, resampled while
/// some flat lies inside it.
template <Field F, class R>
FlatFamily<F> dilworth_truncate(const FlatFamily<F>& fam, const F& f, R& rng) {
    for (const auto& fl : fam.flats)
        if (fl.rank() == 0) throw InputError("dilworth_truncate needs flats of rank >= 1");
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto h = random_vector<F>(fam.ambient, f, rng);
        bool ok = true;
        for (const auto& fl : fam.flats) {
            Vec<F> values;
            for (const auto& b : fl.basis) values.push_back(dot<F>(b, h, f));
            if (is_zero_vector<F>(values, f)) {
                ok = false;
                break;
            }
        }
        if (ok) return truncate_by(fam, h, f);
    }
    throw SamplingError("dilworth_truncate: every sampled hyperplane contained a flat");
}

/// Three distinct hyperplanes of P^3 through the common line spanned by
/// e1 and e2, plus the hyperplane x4 = 0 through that line.
template <Field F>
struct PencilExample {
    FlatFamily<F> family;
    Vec<F> hyperplane_through_line;  // normal vector of a hyperplane containing the line
};

template <Field F>
PencilExample<F> hyperplane_pencil_example(const F& f) {
    auto e = [&](int i) {
        Vec<F> v(4, f.zero());
        v[static_cast<std::size_t>(i)] = f.one();
        return v;
    };
    auto sum = [&](Vec<F> a, const Vec<F>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = f.add(a[i], b[i]);
        return a;
    };
    PencilExample<F> ex;
    ex.family.add("A1", make_flat<F>(4, {e(0), e(1), e(2)}, f));
    ex.family.add("A2", make_flat<F>(4, {e(0), e(1), e(3)}, f));
    ex.family.add("A3", make_flat<F>(4, {e(0), e(1), sum(e(2), e(3))}, f));
    // H = {x : x3 - 2 x4 = 0} contains e1, e2 and differs from every A_i.
    Vec<F> h(4, f.zero());
    h[2] = f.one();
    h[3] = f.from_int(-2);
    ex.hyperplane_through_line = h;
    return ex;
}

}  // namespace rigikit
