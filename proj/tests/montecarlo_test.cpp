#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rcore/montecarlo.hpp"

using namespace rcore;

namespace {

void expect_within(const McEstimate& est, double want, double sigmas) {
  const double slack = sigmas * std::max(est.std_error, 1.0 / static_cast<double>(est.trials));
  EXPECT_NEAR(est.mean, want, slack) << "successes=" << est.successes << " trials=" << est.trials;
}

}  // namespace

TEST(McLocal, Examples) {
  for (auto pred : {LocalPredicate::connectivity, LocalPredicate::min_degree}) {
    const auto full = mc_local(3, 3, 1.0, 1, pred, 100, Seed{1});
    EXPECT_EQ(full.mean, 1.0);
    EXPECT_EQ(full.trials, 100);
  }
  expect_within(mc_local(3, 3, 0.5, 1, LocalPredicate::connectivity, 100000, Seed{17}), 0.5, 3);
  expect_within(mc_local(4, 3, 0.5, 1, LocalPredicate::connectivity, 100000, Seed{18}), 0.6875, 3);
}

TEST(McLocal, ConnectivityPredicateIsFirstOrderOnly) {
  EXPECT_THROW(mc_local(4, 3, 0.5, 2, LocalPredicate::connectivity, 10, Seed{1}), std::invalid_argument);
  EXPECT_THROW(mc_local(4, 3, 1.5, 1, LocalPredicate::min_degree, 10, Seed{1}), std::invalid_argument);
  EXPECT_THROW(mc_local(4, 3, 0.5, 1, LocalPredicate::min_degree, 0, Seed{1}), std::invalid_argument);
}

TEST(McGlobal, Examples) {
  EXPECT_EQ(mc_global(2, 3, 0.9, 1, 1000, Seed{3}).mean, 0.0);
  expect_within(mc_global(3, 3, 0.7, 1, 100000, Seed{4}), 0.7, 3);
  expect_within(mc_global(5, 3, 0.5, 2, 100000, Seed{5}), exact_global(5, 3, 0.5, 2), 3);
}

TEST(McEstimate, ReproducibleAndWorkerIndependent) {
  const auto a = mc_global(9, 3, 0.1, 2, 5000, Seed{77}, 1);
  const auto b = mc_global(9, 3, 0.1, 2, 5000, Seed{77}, 4);
  EXPECT_EQ(a, b);
  const auto c = mc_global(9, 3, 0.1, 2, 5000, Seed{78}, 1);
  EXPECT_NE(a.successes, c.successes);
}

TEST(McEstimate, PartitionedBlocksMergeToFullRun) {
  const std::int64_t trials = 10 * kTrialsPerBlock + 300;
  const Seed seed{99};
  const auto full = mc_local(6, 3, 0.3, 2, LocalPredicate::min_degree, trials, seed);
  const std::int64_t blocks = block_count(trials);
  ASSERT_EQ(blocks, 11);
  const auto left = mc_local_blocks(6, 3, 0.3, 2, LocalPredicate::min_degree, trials, seed, 0, 4);
  const auto right = mc_local_blocks(6, 3, 0.3, 2, LocalPredicate::min_degree, trials, seed, 4, blocks);
  const auto merged = merge(left, right);
  EXPECT_EQ(merged.successes, full.successes);
  EXPECT_EQ(merged.trials, full.trials);
  EXPECT_EQ(merged.mean, full.mean);

  const auto g_full = mc_global(7, 3, 0.2, 1, trials, seed);
  auto g = mc_global_blocks(7, 3, 0.2, 1, trials, seed, 0, 1);
  for (std::int64_t b = 1; b < blocks; ++b) g = merge(g, mc_global_blocks(7, 3, 0.2, 1, trials, seed, b, b + 1));
  EXPECT_EQ(g.successes, g_full.successes);
}

TEST(McEstimate, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(Seed{1}, 0).value, derive_seed(Seed{1}, 1).value);
  EXPECT_NE(derive_seed(Seed{1}, 0).value, derive_seed(Seed{2}, 0).value);
  EXPECT_EQ(derive_seed(Seed{5}, 3).value, derive_seed(Seed{5}, 3).value);
}

TEST(ExactGlobal, Examples) {
  for (double p : {0.0, 0.3, 0.9}) EXPECT_NEAR(exact_global(3, 3, p, 1), p, 1e-15);
  EXPECT_NEAR(exact_global(4, 3, 0.5, 1), 15.0 / 16.0, 1e-15);
  EXPECT_NEAR(exact_global(5, 3, 0.5, 2), 0.84765625, 1e-12);
}

TEST(ExactGlobal, MatchesIndependentOracle) {
  for (int v = 3; v <= 5; ++v)
    for (int r : {1, 2, 3})
      for (double p : {0.2, 0.5, 0.8})
        EXPECT_NEAR(exact_global(v, 3, p, r), oracle::brute_global(v, 3, p, r), 1e-12) << v << ' ' << r << ' ' << p;
  // frozen from the first run of the oracle
  EXPECT_NEAR(exact_global(5, 3, 0.2, 1), 0.8926258176, 1e-10);
  EXPECT_NEAR(exact_global(5, 3, 0.8, 2), 0.9992667136, 1e-10);
}

TEST(ExactGlobal, CompleteHypergraphHasCoreIffDegreeSuffices) {
  for (int v = 3; v <= 6; ++v)
    for (int r = 1; r <= 12; ++r) {
      const double c = exact_global(v, 3, 1.0, r);
      const bool want = choose(v - 1, 2) >= r;
      EXPECT_EQ(c, want ? 1.0 : 0.0) << v << ' ' << r;
    }
}

TEST(ExactGlobal, AgreesWithMonteCarlo) {
  std::uint64_t s = 1000;
  for (int v = 3; v <= 5; ++v)
    for (int r : {1, 2})
      for (double p : {0.2, 0.5, 0.8}) expect_within(mc_global(v, 3, p, r, 100000, Seed{++s}), exact_global(v, 3, p, r), 4);
}

TEST(ExactExactlyOne, Examples) {
  for (auto sem : {CoreSemantics::minimal, CoreSemantics::maximal}) {
    EXPECT_NEAR(exact_exactly_one(3, 3, 0.4, 1, sem), 0.4, 1e-15);
    EXPECT_EQ(exact_exactly_one(5, 3, 0.0, 2, sem), 0.0);
  }
  EXPECT_NEAR(exact_exactly_one(4, 3, 0.5, 1, CoreSemantics::maximal), 15.0 / 16.0, 1e-15);
  EXPECT_NEAR(exact_exactly_one(4, 3, 0.5, 1, CoreSemantics::minimal), 0.25, 1e-15);
  EXPECT_NEAR(exact_exactly_one(5, 3, 0.5, 2, CoreSemantics::minimal), 407.0 / 1024.0, 1e-15);
  EXPECT_NEAR(exact_exactly_one(5, 3, 0.5, 2, CoreSemantics::maximal), 217.0 / 256.0, 1e-15);
}

TEST(ExactExactlyOne, NeverExceedsAtLeastOne) {
  for (int v = 3; v <= 5; ++v)
    for (double p : {0.1, 0.5, 0.9})
      for (auto sem : {CoreSemantics::minimal, CoreSemantics::maximal})
        EXPECT_LE(exact_exactly_one(v, 3, p, 2, sem), exact_global(v, 3, p, 2) + 1e-15);
}
