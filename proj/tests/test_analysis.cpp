#include <gtest/gtest.h>

#include "helpers.hpp"
#include "rigikit/analysis.hpp"

using namespace rigikit;
using namespace rigikit::testing;

namespace {

constexpr auto B = VertexKind::Body;
constexpr auto R = VertexKind::Rod;
constexpr auto H = VertexKind::Hinge;

}  // namespace

TEST(Analyze, TwoRodsFourBars) {
    auto r = analyze(parallel_pair(R, R, 4), Model::RodBar, 3);
    EXPECT_EQ(r.combinatorial_rank, 4);
    EXPECT_EQ(r.max_linear_rank, 4);
    EXPECT_EQ(r.target, 4);
    EXPECT_EQ(r.kernel_dimension, 8);
    EXPECT_EQ(r.trivial_dimension, 8);
    EXPECT_EQ(r.verdict, "minimally rigid");
    EXPECT_TRUE(r.agreement);
    EXPECT_TRUE(r.independent);
}

TEST(Analyze, SixBarsBetweenTwoBodies) {
    auto r = analyze(parallel_pair(B, B, 6), Model::BodyBar, 3);
    EXPECT_EQ(r.verdict, "minimally rigid");
    auto seven = analyze(parallel_pair(B, B, 7), Model::BodyBar, 3);
    EXPECT_EQ(seven.verdict, "rigid");
    EXPECT_FALSE(seven.independent);
    auto five = analyze(parallel_pair(B, B, 5), Model::BodyBar, 3);
    EXPECT_EQ(five.verdict, "flexible");
    EXPECT_EQ(five.kernel_dimension, 7);
}

TEST(Analyze, Direction) {
    auto path = make_graph({{"a", B}, {"b", B}, {"c", B}}, {{"a", "b"}, {"b", "c"}});
    auto p = analyze(path, Model::Direction, 2);
    EXPECT_EQ(p.combinatorial_rank, 2);
    EXPECT_EQ(p.verdict, "flexible");
    auto k3 = analyze(triangle(B), Model::Direction, 2);
    EXPECT_EQ(k3.combinatorial_rank, 3);
    EXPECT_EQ(k3.max_linear_rank, 3);
    EXPECT_EQ(k3.verdict, "minimally rigid");
}

TEST(Analyze, FixedJointsUseOneTrial) {
    AnalysisOptions opt;
    opt.joints = JointConfig<PrimeField>{{0, 0}, {1, 0}, {0, 1}};
    auto r = analyze(triangle(B), Model::Direction, 2, opt);
    EXPECT_TRUE(r.fixed_configuration);
    EXPECT_EQ(r.linear_ranks.size(), 1U);
    EXPECT_EQ(r.max_linear_rank, 3);
    // collinear joints lose one rank
    opt.joints = JointConfig<PrimeField>{{0, 0}, {1, 0}, {2, 0}};
    auto c = analyze(triangle(B), Model::Direction, 2, opt);
    EXPECT_EQ(c.max_linear_rank, 2);
    EXPECT_FALSE(c.agreement);
    AnalysisOptions bad;
    bad.joints = JointConfig<PrimeField>{{0, 0}, {1, 0}};
    EXPECT_THROW(analyze(parallel_pair(B, B, 1), Model::BodyBar, 3, bad), InputError);
}

TEST(Analyze, SharedHinge) {
    auto g = make_graph({{"b1", B}, {"b2", B}, {"h", H}}, {{"b1", "h"}, {"b2", "h"}});
    auto r = analyze(g, Model::BodyHinge, 3);
    EXPECT_EQ(r.combinatorial_rank, 10);
    EXPECT_EQ(r.target, 11);
    EXPECT_EQ(r.max_linear_rank, 10);
    EXPECT_EQ(r.verdict, "flexible");
}

TEST(Analyze, SingleVertex) {
    auto g = make_graph({{"r", R}}, {});
    auto r = analyze(g, Model::RodBar, 3);
    EXPECT_EQ(r.verdict, "trivially rigid");
    EXPECT_EQ(r.target, 0);
    EXPECT_EQ(r.trivial_dimension, 6);
    EXPECT_EQ(r.kernel_dimension, 6);
}

TEST(Analyze, ModelKindMismatchIsAnError) {
    EXPECT_THROW(analyze(parallel_pair(R, B, 1), Model::BodyBar, 3), InputError);
    EXPECT_THROW(analyze(parallel_pair(B, B, 1), Model::RodBar, 3), InputError);
    EXPECT_THROW(analyze(parallel_pair(R, R, 1), Model::RodBar, 2), InputError);
    EXPECT_THROW(analyze(make_graph({}, {}), Model::BodyBar, 3), InputError);
    AnalysisOptions zero;
    zero.trials = 0;
    EXPECT_THROW(analyze(parallel_pair(B, B, 1), Model::BodyBar, 3, zero), InputError);
}

TEST(Analyze, DeterministicForASeed) {
    Rng rng(1);
    RandomGraphConfig cfg;
    auto g = random_multigraph(cfg, rng);
    AnalysisOptions opt;
    opt.seed = 77;
    EXPECT_EQ(analyze(g, Model::BodyRodBar, 3, opt), analyze(g, Model::BodyRodBar, 3, opt));
    EXPECT_EQ(analyze(g, Model::BodyRodBar, 3, opt).trial_seeds.front(), derive_seed(77, 0));
}

TEST(Analyze, MinimalRigidityNeedsEveryEdge) {
    // seven bars between two bodies: one more than needed
    auto g = make_graph({{"a", B}, {"b", B}}, {{"a", "b"}, {"a", "b"}, {"a", "b"}, {"a", "b"}, {"a", "b"}, {"a", "b"},
                                               {"a", "b"}});
    auto r = analyze(g, Model::BodyBar, 3);
    EXPECT_TRUE(r.rigid);
    EXPECT_FALSE(r.minimally_rigid);
    // a coloop next to a rigid part: the verdict stays flexible
    auto h = make_graph({{"a", R}, {"b", R}, {"c", R}},
                        {{"a", "b"}, {"a", "b"}, {"a", "b"}, {"a", "b"}, {"b", "c"}});
    auto s = analyze(h, Model::RodBar, 3);
    EXPECT_EQ(s.combinatorial_rank, 5);
    EXPECT_EQ(s.verdict, "flexible");
}

TEST(Analyze, PComponents) {
    auto g = make_graph({{"a", B}, {"b", B}, {"c", B}}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
    auto r = analyze(g, Model::BodyBar, 3);
    ASSERT_EQ(r.p_components.size(), 1U);
    EXPECT_EQ(r.p_components[0].size(), 3U);
}

TEST(Generators, RespectBounds) {
    Rng rng(3);
    RandomGraphConfig cfg;
    for (int t = 0; t < 50; ++t) {
        auto g = random_multigraph(cfg, rng);
        EXPECT_GE(g.num_vertices(), cfg.min_vertices);
        EXPECT_LE(g.num_vertices(), cfg.max_vertices);
        EXPECT_LE(g.num_edges(), cfg.max_edges);
        auto s = random_simple_graph(2, 6, 0.5, rng);
        for (std::size_t i = 0; i < s.num_edges(); ++i)
            for (std::size_t j = i + 1; j < s.num_edges(); ++j) {
                auto a = std::minmax(s.edge(i).u, s.edge(i).v), b = std::minmax(s.edge(j).u, s.edge(j).v);
                EXPECT_NE(a, b);
            }
        auto h = random_body_hinge_graph(6, 0.5, rng);
        EXPECT_LE(h.num_vertices(), 6U);
        EXPECT_NO_THROW(require_body_hinge_bipartite(h));
    }
}

TEST(Polymatroid, OracleAgreesOnSmallGraphs) {
    Rng rng(4);
    for (int t = 0; t < 10; ++t) {
        RandomGraphConfig cfg;
        cfg.max_vertices = 4;
        cfg.max_edges = 5;
        auto g = random_multigraph(cfg, rng);
        if (g.num_edges() == 0) continue;
        auto chk = check_polymatroid(g, Model::BodyRodBar, 3, kDefaultPrime, 10, rng);
        EXPECT_EQ(chk.mismatches, 0U) << chk.first_mismatch;
        EXPECT_EQ(chk.subsets, (std::size_t{1} << g.num_edges()) - 1);
    }
    auto s = random_simple_graph(3, 5, 0.6, rng);
    EXPECT_EQ(check_polymatroid(s, Model::Direction, 2, kDefaultPrime, 10, rng).mismatches, 0U);
}

TEST(Fuzz, AgreesAndIsDeterministic) {
    FuzzConfig cfg;
    cfg.cases = 40;
    cfg.seed = 42;
    cfg.oracle = true;
    cfg.threads = 4;
    auto a = fuzz_equivalence(cfg);
    EXPECT_TRUE(a.ok());
    EXPECT_EQ(a.headline(), "40/40 agree");
    EXPECT_EQ(a.bound_violations, 0U);
    EXPECT_EQ(a.trivial_violations, 0U);
    EXPECT_EQ(a.oracle_mismatches, 0U);
    cfg.threads = 1;
    EXPECT_EQ(fuzz_equivalence(cfg), a);
}

TEST(Fuzz, EveryModel) {
    for (auto m : {Model::BodyBar, Model::RodBar, Model::BodyHinge, Model::Direction}) {
        FuzzConfig cfg;
        cfg.model = m;
        cfg.d = m == Model::Direction ? 2 : 3;
        cfg.cases = 20;
        cfg.seed = 5;
        auto s = fuzz_equivalence(cfg);
        EXPECT_TRUE(s.ok()) << to_string(m);
    }
}

TEST(Fuzz, LimitsAreEnforced) {
    FuzzConfig cfg;
    cfg.graphs.max_vertices = 9;
    EXPECT_THROW(fuzz_equivalence(cfg), InputError);
    cfg.graphs.max_vertices = 7;
    cfg.d = 2;
    EXPECT_THROW(fuzz_equivalence(cfg), InputError);
}
