#include <gtest/gtest.h>

#include "rigikit/analysis.hpp"
#include "rigikit/flat_geometry.hpp"

using namespace rigikit;

namespace {

const PrimeField f;

Vec<PrimeField> unit(std::size_t n, std::size_t i) {
    Vec<PrimeField> v(n, 0);
    v[i] = 1;
    return v;
}

FlatFamily<PrimeField> blocks(std::size_t count, std::size_t width) {
    FlatFamily<PrimeField> fam;
    const std::size_t n = count * width;
    for (std::size_t b = 0; b < count; ++b) {
        std::vector<Vec<PrimeField>> span;
        for (std::size_t i = 0; i < width; ++i) span.push_back(unit(n, b * width + i));
        fam.add("B" + std::to_string(b), make_flat(n, span, f));
    }
    return fam;
}

}  // namespace

TEST(Flats, MakeFlatExtractsBasis) {
    auto fl = make_flat<PrimeField>(4, {unit(4, 0), unit(4, 1), unit(4, 0)}, f);
    EXPECT_EQ(fl.rank(), 2U);
    EXPECT_THROW(make_flat<PrimeField>(4, {unit(3, 0)}, f), InputError);
    FlatFamily<PrimeField> fam;
    fam.add("a", fl);
    EXPECT_THROW(fam.add("b", make_flat<PrimeField>(5, {unit(5, 0)}, f)), InputError);
}

TEST(SpanRank, Examples) {
    FlatFamily<PrimeField> fam;
    fam.add("l", make_flat<PrimeField>(4, {unit(4, 0), unit(4, 1)}, f));
    fam.add("l2", make_flat<PrimeField>(4, {unit(4, 0), unit(4, 1)}, f));
    EXPECT_EQ(span_rank(fam, {0}, f), 2U);
    EXPECT_EQ(span_rank(fam, {0, 1}, f), 2U);
    EXPECT_EQ(span_rank(fam, {}, f), 0U);
    auto ex = hyperplane_pencil_example(f);
    EXPECT_EQ(span_rank(ex.family, all_flats(ex.family), f), 4U);
    // pairwise intersections are the common line
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            EXPECT_EQ(6U - span_rank(ex.family, {i, j}, f), 2U);
}

TEST(Connectivity, Examples) {
    auto two = blocks(2, 2);
    EXPECT_EQ(connectivity(two, all_flats(two), f).size(), 2U);
    FlatFamily<PrimeField> shared;
    shared.add("a", make_flat<PrimeField>(3, {unit(3, 0), unit(3, 1)}, f));
    shared.add("b", make_flat<PrimeField>(3, {unit(3, 0), unit(3, 2)}, f));
    EXPECT_EQ(connectivity(shared, all_flats(shared), f).size(), 1U);
    auto ex = hyperplane_pencil_example(f);
    EXPECT_EQ(connectivity(ex.family, all_flats(ex.family), f).size(), 1U);
}

TEST(GenericMatroid, Examples) {
    Rng rng(3);
    for (std::size_t k = 1; k <= 4; ++k) {
        FlatFamily<PrimeField> fam;
        for (std::size_t i = 0; i < k; ++i) fam.add("l" + std::to_string(i), make_flat<PrimeField>(4, {unit(4, 0), unit(4, 1)}, f));
        EXPECT_EQ(generic_matroid_rank_bruteforce(fam, all_flats(fam), f), std::min<std::size_t>(k, 2));
        EXPECT_EQ(generic_matroid_rank(fam, all_flats(fam), f, rng, 3), std::min<std::size_t>(k, 2));
    }
    auto b = blocks(3, 2);
    EXPECT_EQ(generic_matroid_rank(b, all_flats(b), f, rng, 3), 3U);
    auto ex = hyperplane_pencil_example(f);
    EXPECT_EQ(generic_matroid_rank_bruteforce(ex.family, all_flats(ex.family), f), 3U);
    EXPECT_EQ(generic_matroid_rank(ex.family, all_flats(ex.family), f, rng, 3), 3U);
}

TEST(GenericMatroid, NeverExceedsTheMinimumAndUsuallyAttainsIt) {
    Rng rng(4);
    for (int t = 0; t < 30; ++t) {
        auto fam = random_flat_family(6, 12, f, rng);
        const auto S = all_flats(fam);
        const auto brute = generic_matroid_rank_bruteforce(fam, S, f);
        EXPECT_LE(generic_matroid_rank(fam, S, f, rng, 1), brute);
        EXPECT_EQ(generic_matroid_rank(fam, S, f, rng, 3), brute);
    }
}

TEST(Truncation, RhsExamples) {
    auto two = blocks(2, 2);
    EXPECT_EQ(truncation_rhs_bruteforce(two, f), 2);
    auto ex = hyperplane_pencil_example(f);
    EXPECT_EQ(truncation_rhs_bruteforce(ex.family, f), 3);
    FlatFamily<PrimeField> one;
    one.add("p", make_flat<PrimeField>(5, {unit(5, 0), unit(5, 1), unit(5, 2)}, f));
    EXPECT_EQ(truncation_rhs_bruteforce(one, f), 2);
    auto nine = blocks(9, 1);
    EXPECT_THROW(truncation_rhs_bruteforce(nine, f), InputError);
}

TEST(Truncation, SingleLineBecomesPoint) {
    Rng rng(5);
    FlatFamily<PrimeField> fam;
    fam.add("l", make_flat<PrimeField>(4, {unit(4, 0), unit(4, 1)}, f));
    auto cut = dilworth_truncate(fam, f, rng);
    EXPECT_EQ(cut.flats[0].rank(), 1U);
}

TEST(Truncation, PencilCounterexample) {
    Rng rng(6);
    auto ex = hyperplane_pencil_example(f);
    auto forced = truncate_by(ex.family, ex.hyperplane_through_line, f);
    EXPECT_EQ(span_rank(forced, all_flats(forced), f), 2U);
    for (int t = 0; t < 5; ++t) {
        auto cut = dilworth_truncate(ex.family, f, rng);
        EXPECT_EQ(span_rank(cut, all_flats(cut), f), 3U);
    }
}

TEST(Truncation, FlatInsideHyperplaneIsRejected) {
    FlatFamily<PrimeField> fam;
    fam.add("l", make_flat<PrimeField>(3, {unit(3, 0), unit(3, 1)}, f));
    EXPECT_THROW(truncate_by(fam, unit(3, 2), f), InputError);
    EXPECT_FALSE(intersect_hyperplane(fam.flats[0], unit(3, 2), f).has_value());
    FlatFamily<PrimeField> zero;
    zero.add("z", make_flat<PrimeField>(3, {}, f));
    Rng rng(1);
    EXPECT_THROW(dilworth_truncate(zero, f, rng), InputError);
}

TEST(Truncation, UpperBoundForEveryHyperplane) {
    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        auto fam = random_flat_family(5, 8, f, rng);
        const long rhs = truncation_rhs_bruteforce(fam, f);
        auto cut = dilworth_truncate(fam, f, rng);
        EXPECT_EQ(static_cast<long>(span_rank(cut, all_flats(cut), f)), rhs);
        // the coordinate hyperplane x0 = 0 is far from generic
        Vec<PrimeField> h(fam.ambient, 0);
        h[0] = 1;
        try {
            auto special = truncate_by(fam, h, f);
            EXPECT_LE(static_cast<long>(span_rank(special, all_flats(special), f)), rhs);
        } catch (const InputError&) {
        }
    }
}
