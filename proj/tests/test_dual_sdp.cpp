#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "stablecut/dual_sdp.hpp"
#include "stablecut/generators.hpp"
#include "stablecut/oracle.hpp"

namespace stablecut {
namespace {

TEST(SolveMinTrace, Examples) {
  const DualSolution k2 = solve_min_trace(fixtures::k2());
  EXPECT_TRUE(k2.converged);
  EXPECT_NEAR(k2.trace, 2.0, 1e-9);
  EXPECT_NEAR(k2.gap, 0.0, 1e-9);
  EXPECT_NEAR((k2.d - Vector::Ones(2)).cwiseAbs().maxCoeff(), 0.0, 1e-9);

  const DualSolution c4 = solve_min_trace(fixtures::c4());
  EXPECT_TRUE(c4.converged);
  EXPECT_NEAR(c4.trace, 8.0, 1e-9);
  EXPECT_NEAR((c4.d - Vector::Constant(4, 2.0)).cwiseAbs().maxCoeff(), 0.0, 1e-9);

  const DualSolution empty = solve_min_trace(WeightedGraph::empty(3));
  EXPECT_TRUE(empty.converged);
  EXPECT_DOUBLE_EQ(empty.trace, 0.0);
  EXPECT_EQ(empty.d, Vector::Zero(3));

  EXPECT_THROW(solve_min_trace(WeightedGraph::empty(0)), DimensionError);
}

TEST(SolveMinTrace, IterationLimitIsNotAnError) {
  DualOptions opts;
  opts.max_iter = 3;
  opts.record_log = true;
  const DualSolution s = solve_min_trace(fixtures::unit_triangle(), opts);
  EXPECT_FALSE(s.converged);
  EXPECT_EQ(s.iterations, 3);
  EXPECT_EQ(s.log.size(), 3U);
  EXPECT_GE(s.gap, -1e-9);
}

TEST(SolveMinTrace, WeakDualityAndFeasibility) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const WeightedGraph g = fixtures::random_weighted(4 + static_cast<Index>(seed % 8), 0.6, seed);
    DualOptions opts;
    opts.max_iter = 300;
    opts.seed = seed;
    opts.record_log = true;
    const DualSolution s = solve_min_trace(g, opts);
    EXPECT_GE(s.gap, -1e-9);
    EXPECT_GE(s.lambda_min, -1e-9 * std::max(1.0, inf_norm(shifted(g, s.d))));
    const double best = brute_force_max_cut(g).value;
    EXPECT_GE(s.trace, cut_objective(g, Cut::from_mask(g.size(), 0)) - 1e-9);
    EXPECT_GE(s.trace + 1e-9, 2.0 * (2.0 * best - g.total_weight()));
    for (const DualIterate& it : s.log) EXPECT_GE(it.gap, -1e-9);
  }
}

TEST(SolveMinTrace, Deterministic) {
  const WeightedGraph g = fixtures::random_weighted(10, 0.7, 42);
  DualOptions opts;
  opts.max_iter = 200;
  opts.seed = 9;
  const DualSolution a = solve_min_trace(g, opts);
  const DualSolution b = solve_min_trace(g, opts);
  EXPECT_EQ(a.d, b.d);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.lower_bound, b.lower_bound);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.best_cut, b.best_cut);
}

TEST(CertifyCut, Examples) {
  const CutCertificate c4 = certify_cut(fixtures::c4(), Cut{1, -1, 1, -1});
  EXPECT_TRUE(c4.psd);
  EXPECT_DOUBLE_EQ(c4.residual, 0.0);
  EXPECT_TRUE(c4.m_check);

  EXPECT_FALSE(certify_cut(fixtures::c4(), Cut::from_side(4, {0})).psd);
  EXPECT_TRUE(certify_cut(fixtures::k2(), Cut{1, -1}).psd);
}

TEST(ExtendedSpectral, Examples) {
  const ExtendedSpectralResult c4 = extended_spectral_solve(fixtures::c4());
  EXPECT_TRUE(c4.certified);
  EXPECT_TRUE(c4.cut.same_partition(Cut{1, -1, 1, -1}));

  const PlantedInstance inst = gen_planted(14, WeightDistribution::uniform(0.5, 1.5), 4.0, 1);
  const ExtendedSpectralResult planted = extended_spectral_solve(inst.graph);
  const MaxCutResult truth = brute_force_max_cut(inst.graph);
  EXPECT_TRUE(planted.certified);
  EXPECT_EQ(planted.cut, truth.cut);

  DualOptions quick;
  quick.max_iter = 200;
  const ExtendedSpectralResult tri = extended_spectral_solve(fixtures::unit_triangle(), quick);
  EXPECT_DOUBLE_EQ(tri.value, 2.0);
  EXPECT_FALSE(tri.certified);
}

TEST(ExtendedSpectral, JitterCertifiesOnTheOriginalWeights) {
  // The unit triangle has three tied maximum cuts, so the plain solve cannot
  // certify and jitter is tried. Certification is always judged on the
  // unjittered weights, where a tie can never be certified.
  DualOptions opts;
  opts.jitter = true;
  opts.max_iter = 500;
  const WeightedGraph tri = fixtures::unit_triangle();
  const ExtendedSpectralResult r = extended_spectral_solve(tri, opts);
  EXPECT_DOUBLE_EQ(r.value, 2.0);
  EXPECT_TRUE(r.jittered);
  EXPECT_FALSE(r.certified);
  EXPECT_EQ(r.certified, certify_cut(tri, r.cut).psd);
}

// Strong duality whenever the maximum cut certifies, and soundness of the
// certified flag.
TEST(ExtendedSpectral, CertificateSoundness) {
  int certified = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Index n = 4 + 2 * static_cast<Index>(seed % 5);
    const double gamma = 1.0 + 0.5 * static_cast<double>(seed % 6);
    const PlantedInstance inst = gen_planted(n, WeightDistribution::uniform(0.5, 1.5), gamma, seed);
    const MaxCutResult truth = brute_force_max_cut(inst.graph);
    const ExtendedSpectralResult r = extended_spectral_solve(inst.graph);
    if (r.certified) {
      ++certified;
      EXPECT_EQ(r.cut, truth.cut) << "seed " << seed;
    }
    if (certify_cut(inst.graph, truth.cut).psd) {
      EXPECT_TRUE(r.certified) << "seed " << seed;
      EXPECT_LE(r.dual.gap, 1e-6 * std::max(1.0, std::abs(r.dual.trace)));
    }
  }
  EXPECT_GT(certified, 20);
}

TEST(JitterWeights, SmallAndDeterministic) {
  const WeightedGraph g = fixtures::random_weighted(8, 0.6, 3);
  const WeightedGraph a = jitter_weights(g, 1e-6, 5);
  EXPECT_EQ(a, jitter_weights(g, 1e-6, 5));
  for (Index i = 0; i < 8; ++i) {
    for (Index j = 0; j < 8; ++j) {
      EXPECT_GE(a.weight(i, j), g.weight(i, j));
      EXPECT_LE(a.weight(i, j), g.weight(i, j) * (1.0 + 1e-6));
    }
  }
}

}  // namespace
}  // namespace stablecut
