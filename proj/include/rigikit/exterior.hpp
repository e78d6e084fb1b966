#pragma once

// Exterior algebra of W = F^{d+1}: k-vectors in Plücker coordinates, the
// Hodge star, the complementary-degree pairing and Grassmannian sampling.
//
// Coordinates of a degree-k element are indexed by the sorted k-subsets of
// {1..d+1} in plain lexicographic order; for d = 3, k = 2 that is
// (12, 13, 14, 23, 24, 34).  Internally subsets are 0-based.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rigikit/error.hpp"
#include "rigikit/field.hpp"
#include "rigikit/linalg.hpp"

namespace rigikit {

using IndexSet = std::vector<int>;

constexpr std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// All k-subsets of {0..n-1}, lexicographic.
inline std::vector<IndexSet> k_subsets(int n, int k) {
    std::vector<IndexSet> out;
    if (k < 0 || k > n) return out;
    IndexSet cur(static_cast<std::size_t>(k));
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

/// Position of a sorted subset in the lexicographic list of k-subsets of {0..n-1}.
inline std::size_t subset_rank(const IndexSet& s, int n) {
    std::size_t idx = 0;
    const int k = static_cast<int>(s.size());
    int prev = -1;
    for (int i = 0; i < k; ++i) {
        for (int v = prev + 1; v < s[static_cast<std::size_t>(i)]; ++v)
            idx += binomial(static_cast<std::size_t>(n - v - 1), static_cast<std::size_t>(k - i - 1));
        prev = s[static_cast<std::size_t>(i)];
    }
    return idx;
}

inline IndexSet complement(const IndexSet& s, int n) {
    IndexSet out;
    std::size_t j = 0;
    for (int v = 0; v < n; ++v) {
        if (j < s.size() && s[j] == v)
            ++j;
        else
            out.push_back(v);
    }
    return out;
}

/// Sign of the permutation listing s followed by its complement.
inline int shuffle_sign(const IndexSet& s, int n) {
    auto seq = s;
    auto c = complement(s, n);
    seq.insert(seq.end(), c.begin(), c.end());
    int inversions = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) ++inversions;
    return inversions % 2 ? -1 : 1;
}

/// Degree-k element of the exterior algebra of F^{d+1}.
template <Field F>
struct KVector {
    int d = 0;
    int k = 0;
    Vec<F> coords;

    int ambient() const { return d + 1; }
    bool operator==(const KVector&) const = default;
};

template <Field F>
KVector<F> zero_kvector(int d, int k, const F& f) {
    return {d, k, Vec<F>(binomial(static_cast<std::size_t>(d + 1), static_cast<std::size_t>(k)), f.zero())};
}

/// Unit basis element e_{i1} ^ ... ^ e_{ik} (0-based sorted indices).
template <Field F>
KVector<F> basis_kvector(int d, const IndexSet& s, const F& f) {
    auto x = zero_kvector(d, static_cast<int>(s.size()), f);
    x.coords[subset_rank(s, d + 1)] = f.one();
    return x;
}

template <Field F>
bool is_zero(const KVector<F>& x, const F& f) {
    return is_zero_vector<F>(x.coords, f);
}

/// Two-vector wedge in the screw-coordinate sign convention: the (i,j)
/// coordinate is (-1)^{i+j+1} (a_i b_j - a_j b_i), 1-based i < j.  It differs
/// from wedge_list({a, b}) by that sign on each coordinate.
template <Field F>
KVector<F> wedge2(std::span<const typename F::value_type> a, std::span<const typename F::value_type> b,
                  const F& f) {
    if (a.size() != b.size() || a.size() < 2)
        throw InputError("wedge2: vectors must have equal length >= 2");
    const int n = static_cast<int>(a.size());
    auto out = zero_kvector(n - 1, 2, f);
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto minor = f.sub(f.mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]),
                               f.mul(a[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(i)]));
            // 1-based (i+1)+(j+1)+1 has the parity of i+j+1.
            out.coords[idx++] = ((i + j + 1) % 2) ? f.neg(minor) : minor;
        }
    return out;
}

/// v1 ^ ... ^ vk: coordinates are the k x k minors of the stacked k x (d+1) matrix.
template <Field F>
KVector<F> wedge_list(const std::vector<Vec<F>>& vs, int d, const F& f) {
    const int n = d + 1;
    const int k = static_cast<int>(vs.size());
    if (k > n) throw InputError("wedge_list: more vectors than the ambient dimension");
    for (const auto& v : vs)
        if (static_cast<int>(v.size()) != n) throw InputError("wedge_list: vector length does not match d+1");
    auto out = zero_kvector(d, k, f);
    if (k == 0) {
        out.coords[0] = f.one();
        return out;
    }
    std::size_t idx = 0;
    for (const auto& cols : k_subsets(n, k)) {
        Matrix<F> m(static_cast<std::size_t>(k), static_cast<std::size_t>(k), f);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                    vs[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols[static_cast<std::size_t>(c)])];
        out.coords[idx++] = determinant(std::move(m), f);
    }
    return out;
}

/// *(e_I) = sign(I, I^c) e_{I^c}.
template <Field F>
KVector<F> hodge_star(const KVector<F>& x, const F& f) {
    const int n = x.d + 1;
    auto out = zero_kvector(x.d, n - x.k, f);
    std::size_t idx = 0;
    for (const auto& s : k_subsets(n, x.k)) {
        const auto& a = x.coords[idx++];
        if (f.is_zero(a)) continue;
        auto c = complement(s, n);
        out.coords[subset_rank(c, n)] = shuffle_sign(s, n) > 0 ? a : f.neg(a);
    }
    return out;
}

/// <p, q> = sum over k-subsets I of (-1)^{i1+...+ik} p_I q_{I^c}  (1-based indices).
/// For decomposable p, q it vanishes iff the two subspaces meet nontrivially.
template <Field F>
typename F::value_type pairing(const KVector<F>& p, const KVector<F>& q, const F& f) {
    if (p.d != q.d || p.k + q.k != p.d + 1) throw InputError("pairing: degrees are not complementary");
    const int n = p.d + 1;
    auto acc = f.zero();
    std::size_t idx = 0;
    for (const auto& s : k_subsets(n, p.k)) {
        const auto& a = p.coords[idx++];
        if (f.is_zero(a)) continue;
        // 1-based sum = 0-based sum + k
        int parity = std::accumulate(s.begin(), s.end(), p.k) % 2;
        auto term = f.mul(a, q.coords[subset_rank(complement(s, n), n)]);
        acc = parity ? f.sub(acc, term) : f.add(acc, term);
    }
    return acc;
}

/// Constant c with <p, q> = c * (p . *q) for all p of degree k, q of degree d+1-k.
/// Evaluated on the basis pair (e_I, e_{I^c}) with I = {1..k}; the ratio is
/// the same for every I.
inline int pairing_star_sign(int d, int k) {
    const int n = d + 1;
    IndexSet first(static_cast<std::size_t>(k));
    std::iota(first.begin(), first.end(), 0);
    const int pair_sign = (std::accumulate(first.begin(), first.end(), k) % 2) ? -1 : 1;
    const int star_sign = shuffle_sign(complement(first, n), n);
    return pair_sign * star_sign;
}

/// All quadratic Plücker relations p_ij p_kl - p_ik p_jl + p_il p_jk = 0, i<j<k<l.
template <Field F>
bool grassmann_check(const KVector<F>& x, const F& f) {
    if (x.k != 2) throw InputError("grassmann_check: expected a 2-vector");
    const int n = x.d + 1;
    auto at = [&](int i, int j) -> const auto& { return x.coords[subset_rank({i, j}, n)]; };
    for (const auto& q : k_subsets(n, 4)) {
        const int i = q[0], j = q[1], k = q[2], l = q[3];
        auto v = f.add(f.sub(f.mul(at(i, j), at(k, l)), f.mul(at(i, k), at(j, l))), f.mul(at(i, l), at(j, k)));
        if (!f.is_zero(v)) return false;
    }
    return true;
}

/// Decomposability for the degrees this library handles (0, 1, 2, d-1, d, d+1).
template <Field F>
bool is_decomposable(const KVector<F>& x, const F& f) {
    const int n = x.d + 1;
    if (x.k <= 1 || x.k >= n - 1) return true;
    if (x.k == 2) return grassmann_check(x, f);
    if (x.k == n - 2) return grassmann_check(hodge_star(x, f), f);
    throw InputError("is_decomposable: degree " + std::to_string(x.k) + " not supported");
}

/// Whether two k-vectors span the same projective point (or either is zero).
template <Field F>
bool proportional(const KVector<F>& a, const KVector<F>& b, const F& f) {
    return rank_of_vectors<F>({a.coords, b.coords}, a.coords.size(), f) < 2;
}

/// A subspace of W together with its Plücker vector.
template <Field F>
struct GrassmannPoint {
    std::vector<Vec<F>> basis;
    KVector<F> plucker;
};

inline constexpr int kMaxSampleRetries = 64;

/// Wedge of k independent uniform vectors of F^{d+1}; resamples on dependence.
template <Field F, class R>
GrassmannPoint<F> sample_grassmannian(int k, int d, const F& f, R& rng) {
    for (int attempt = 0; attempt < kMaxSampleRetries; ++attempt) {
        std::vector<Vec<F>> basis;
        for (int i = 0; i < k; ++i) basis.push_back(random_vector<F>(static_cast<std::size_t>(d + 1), f, rng));
        auto p = wedge_list(basis, d, f);
        if (!is_zero(p, f)) return {std::move(basis), std::move(p)};
    }
    throw SamplingError("sample_grassmannian: exhausted retries drawing independent vectors");
}

}  // namespace rigikit
