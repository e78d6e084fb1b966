#include <gtest/gtest.h>

#include "rigikit/exterior.hpp"

using namespace rigikit;

namespace {

using V = Vec<PrimeField>;

V unit(int n, int i, const PrimeField& f) {
    V v(static_cast<std::size_t>(n), f.zero());
    v[static_cast<std::size_t>(i)] = f.one();
    return v;
}

KVector<PrimeField> w2(const V& a, const V& b, const PrimeField& f) {
    return wedge2<PrimeField>(std::span<const std::uint64_t>(a), std::span<const std::uint64_t>(b), f);
}

KVector<PrimeField> from_ints(int d, int k, std::initializer_list<long> xs, const PrimeField& f) {
    auto x = zero_kvector(d, k, f);
    std::size_t i = 0;
    for (auto v : xs) x.coords[i++] = f.from_int(v);
    return x;
}

}  // namespace

TEST(Subsets, LexicographicOrderAndRanks) {
    const auto s = k_subsets(4, 2);
    ASSERT_EQ(s.size(), 6U);
    EXPECT_EQ(s[0], (IndexSet{0, 1}));
    EXPECT_EQ(s[2], (IndexSet{0, 3}));
    EXPECT_EQ(s[5], (IndexSet{2, 3}));
    for (int n = 1; n <= 7; ++n)
        for (int k = 0; k <= n; ++k) {
            const auto all = k_subsets(n, k);
            EXPECT_EQ(all.size(), binomial(n, k));
            for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(subset_rank(all[i], n), i);
        }
}

TEST(Wedge2, BasisWedgeAndAlternation) {
    PrimeField f;
    auto e12 = w2(unit(4, 0, f), unit(4, 1, f), f);
    EXPECT_EQ(e12, from_ints(3, 2, {1, 0, 0, 0, 0, 0}, f));
    Rng rng(1);
    auto a = random_vector<PrimeField>(4, f, rng);
    EXPECT_TRUE(is_zero(w2(a, a, f), f));
    EXPECT_THROW(w2(V(4, 1), V(3, 1), f), InputError);
}

TEST(Wedge2, DiffersFromMinorsByCoordinateSign) {
    PrimeField f;
    Rng rng(2);
    for (int d = 2; d <= 5; ++d) {
        auto a = random_vector<PrimeField>(static_cast<std::size_t>(d + 1), f, rng);
        auto b = random_vector<PrimeField>(static_cast<std::size_t>(d + 1), f, rng);
        auto signed_form = w2(a, b, f);
        auto minors = wedge_list<PrimeField>({a, b}, d, f);
        std::size_t idx = 0;
        for (const auto& s : k_subsets(d + 1, 2)) {
            // (-1)^{i+j+1} with 1-based indices equals (-1)^{s0+s1+1} 0-based
            const bool flip = (s[0] + s[1] + 1) % 2 != 0;
            EXPECT_EQ(signed_form.coords[idx], flip ? f.neg(minors.coords[idx]) : minors.coords[idx]);
            ++idx;
        }
    }
}

TEST(Wedge2, ScrewFormOfABar) {
    // Bar through q2 = (1,0,0) and q1 = (0,0,0) in homogeneous form.
    PrimeField f;
    V q2{1, 0, 0, 1}, q1{0, 0, 0, 1};
    auto signed_form = w2(q2, q1, f);
    // Only the (1,4) minor is nonzero: 1*1 - 1*0 = 1, with sign (-1)^{1+4+1} = +1.
    EXPECT_EQ(signed_form, from_ints(3, 2, {0, 0, 1, 0, 0, 0}, f));
    auto minors = wedge_list<PrimeField>({q2, q1}, 3, f);
    EXPECT_EQ(minors, from_ints(3, 2, {0, 0, 1, 0, 0, 0}, f));
}

TEST(WedgeList, MinorsAndDependence) {
    PrimeField f;
    auto e123 = wedge_list<PrimeField>({unit(4, 0, f), unit(4, 1, f), unit(4, 2, f)}, 3, f);
    EXPECT_EQ(e123, basis_kvector(3, {0, 1, 2}, f));
    Rng rng(3);
    auto a = random_vector<PrimeField>(4, f, rng), b = random_vector<PrimeField>(4, f, rng);
    V c(4);
    for (std::size_t i = 0; i < 4; ++i) c[i] = f.add(a[i], f.mul(7, b[i]));
    EXPECT_TRUE(is_zero(wedge_list<PrimeField>({a, b, c}, 3, f), f));
}

TEST(WedgeList, SwappingArgumentsNegates) {
    PrimeField f;
    Rng rng(4);
    auto a = random_vector<PrimeField>(5, f, rng), b = random_vector<PrimeField>(5, f, rng),
         c = random_vector<PrimeField>(5, f, rng);
    auto x = wedge_list<PrimeField>({a, b, c}, 4, f);
    auto y = wedge_list<PrimeField>({b, a, c}, 4, f);
    for (std::size_t i = 0; i < x.coords.size(); ++i) EXPECT_EQ(x.coords[i], f.neg(y.coords[i]));
}

TEST(WedgeList, FullRankTripleMeetsComplementaryLineOnlyWhenSharingAVector) {
    // A 3-space and a 1-space in F^4 meet iff the line lies in the 3-space.
    PrimeField f;
    Rng rng(5);
    auto a = random_vector<PrimeField>(4, f, rng), b = random_vector<PrimeField>(4, f, rng),
         c = random_vector<PrimeField>(4, f, rng);
    auto plane = wedge_list<PrimeField>({a, b, c}, 3, f);
    auto inside = wedge_list<PrimeField>({random_combination<PrimeField>({a, b, c}, 4, f, rng)}, 3, f);
    auto outside = wedge_list<PrimeField>({random_vector<PrimeField>(4, f, rng)}, 3, f);
    EXPECT_TRUE(f.is_zero(pairing(plane, inside, f)));
    EXPECT_FALSE(f.is_zero(pairing(plane, outside, f)));
}

TEST(HodgeStar, ExplicitFormulaInDimensionThree) {
    PrimeField f;
    auto q = from_ints(3, 2, {1, 2, 3, 4, 5, 6}, f);  // q12 q13 q14 q23 q24 q34
    EXPECT_EQ(hodge_star(q, f), from_ints(3, 2, {6, -5, 4, 3, -2, 1}, f));
    EXPECT_EQ(hodge_star(basis_kvector(3, {0, 1}, f), f), basis_kvector(3, {2, 3}, f));
}

TEST(HodgeStar, DoubleStarSign) {
    PrimeField f;
    for (int d = 2; d <= 6; ++d) {
        const int n = d + 1;
        for (int k = 0; k <= n; ++k)
            for (const auto& s : k_subsets(n, k)) {
                auto e = basis_kvector(d, s, f);
                auto ss = hodge_star(hodge_star(e, f), f);
                const bool negate = (k * (n - k)) % 2 != 0;
                auto expected = e;
                if (negate)
                    for (auto& c : expected.coords) c = f.neg(c);
                EXPECT_EQ(ss, expected) << "d=" << d << " k=" << k;
            }
    }
}

TEST(Pairing, ExpansionInDimensionThree) {
    // The explicit d = 3 expansion p12 q34 - p13 q24 + p14 q23 + p23 q14 - p24 q13 + p34 q12
    // equals the signed-sum formula up to the global factor -1.
    PrimeField f;
    Rng rng(6);
    for (int t = 0; t < 50; ++t) {
        KVector<PrimeField> p{3, 2, random_vector<PrimeField>(6, f, rng)};
        KVector<PrimeField> q{3, 2, random_vector<PrimeField>(6, f, rng)};
        const auto& a = p.coords;
        const auto& b = q.coords;
        auto expansion = f.zero();
        expansion = f.add(expansion, f.mul(a[0], b[5]));
        expansion = f.sub(expansion, f.mul(a[1], b[4]));
        expansion = f.add(expansion, f.mul(a[2], b[3]));
        expansion = f.add(expansion, f.mul(a[3], b[2]));
        expansion = f.sub(expansion, f.mul(a[4], b[1]));
        expansion = f.add(expansion, f.mul(a[5], b[0]));
        EXPECT_EQ(pairing(p, q, f), f.neg(expansion));
    }
}

TEST(Pairing, IntersectionCriterion) {
    PrimeField f;
    auto e12 = basis_kvector(3, {0, 1}, f);
    auto e34 = basis_kvector(3, {2, 3}, f);
    EXPECT_TRUE(f.is_zero(pairing(e12, e12, f)));
    EXPECT_FALSE(f.is_zero(pairing(e12, e34, f)));
    EXPECT_THROW(pairing(e12, basis_kvector(3, {0}, f), f), InputError);
}

TEST(Pairing, DotProductWithStarUpToConstantSign) {
    PrimeField f;
    Rng rng(7);
    for (int d = 2; d <= 6; ++d)
        for (int k = 1; k <= d; ++k) {
            const auto len = binomial(d + 1, k), clen = binomial(d + 1, d + 1 - k);
            KVector<PrimeField> p{d, k, random_vector<PrimeField>(len, f, rng)};
            KVector<PrimeField> q{d, d + 1 - k, random_vector<PrimeField>(clen, f, rng)};
            const auto dotted = dot<PrimeField>(p.coords, hodge_star(q, f).coords, f);
            const auto expected = pairing_star_sign(d, k) > 0 ? dotted : f.neg(dotted);
            EXPECT_EQ(pairing(p, q, f), expected) << "d=" << d << " k=" << k;
        }
}

TEST(Pairing, SharedVectorGivesZero) {
    // A 2-vector and a (d-1)-vector built on a common vector always pair to zero.
    PrimeField f;
    Rng rng(8);
    for (int d = 3; d <= 6; ++d)
        for (int t = 0; t < 10; ++t) {
            std::vector<V> rod;
            for (int i = 0; i < d - 1; ++i) rod.push_back(random_vector<PrimeField>(d + 1, f, rng));
            auto r = wedge_list<PrimeField>(rod, d, f);
            auto x = random_combination<PrimeField>(rod, d + 1, f, rng);
            auto y = random_vector<PrimeField>(d + 1, f, rng);
            EXPECT_TRUE(f.is_zero(pairing(wedge_list<PrimeField>({x, y}, d, f), r, f)));
            EXPECT_FALSE(f.is_zero(pairing(wedge_list<PrimeField>({random_vector<PrimeField>(d + 1, f, rng), y}, d, f), r, f)));
        }
}

TEST(Pairing, ScrewFormAgreesWithMinorsInDimensionThree) {
    // For d = 3 the coordinate signs of the screw form cancel in the pairing.
    PrimeField f;
    Rng rng(9);
    for (int t = 0; t < 30; ++t) {
        auto a = random_vector<PrimeField>(4, f, rng), b = random_vector<PrimeField>(4, f, rng),
             c = random_vector<PrimeField>(4, f, rng), e = random_vector<PrimeField>(4, f, rng);
        EXPECT_EQ(pairing(w2(a, b, f), w2(c, e, f), f),
                  pairing(wedge_list<PrimeField>({a, b}, 3, f), wedge_list<PrimeField>({c, e}, 3, f), f));
    }
}

TEST(Grassmann, RelationHoldsExactlyOnDecomposables) {
    PrimeField f;
    EXPECT_FALSE(grassmann_check(from_ints(3, 2, {1, 0, 0, 0, 0, 1}, f), f));
    EXPECT_TRUE(grassmann_check(zero_kvector(3, 2, f), f));
    // Every wedge on a small integer grid.
    for (int a0 = -1; a0 <= 1; ++a0)
        for (int a1 = -1; a1 <= 1; ++a1)
            for (int b2 = -1; b2 <= 1; ++b2)
                for (int b3 = -1; b3 <= 1; ++b3) {
                    V a{f.from_int(a0), f.from_int(a1), 1, f.from_int(b3)};
                    V b{1, f.from_int(b2), f.from_int(a0), f.from_int(b3)};
                    EXPECT_TRUE(grassmann_check(w2(a, b, f), f));
                }
    Rng rng(10);
    for (int d = 2; d <= 6; ++d)
        for (int t = 0; t < 10; ++t) {
            auto a = random_vector<PrimeField>(d + 1, f, rng), b = random_vector<PrimeField>(d + 1, f, rng);
            EXPECT_TRUE(grassmann_check(w2(a, b, f), f));
            EXPECT_TRUE(grassmann_check(wedge_list<PrimeField>({a, b}, d, f), f));
        }
}

TEST(Grassmann, SampledPointsAreDecomposableAndNonzero) {
    PrimeField f;
    Rng rng(11);
    for (int d = 3; d <= 6; ++d) {
        auto line = sample_grassmannian(2, d, f, rng);
        EXPECT_FALSE(is_zero(line.plucker, f));
        EXPECT_TRUE(grassmann_check(line.plucker, f));
        auto rod = sample_grassmannian(d - 1, d, f, rng);
        EXPECT_TRUE(is_decomposable(rod.plucker, f));
        EXPECT_TRUE(grassmann_check(hodge_star(rod.plucker, f), f));
        auto other = sample_grassmannian(d - 1, d, f, rng);
        EXPECT_FALSE(proportional(rod.plucker, other.plucker, f));
    }
}

TEST(Exterior, RationalFieldAgrees) {
    RationalField q;
    using QV = Vec<RationalField>;
    QV a{1, 2, 0, -1}, b{0, 1, 3, 2};
    auto x = wedge_list<RationalField>({a, b}, 3, q);
    EXPECT_TRUE(grassmann_check(x, q));
    EXPECT_EQ(x.coords[0], RationalField::value_type(1));  // 1*1 - 2*0
    EXPECT_TRUE(q.is_zero(pairing(x, x, q)));
}
