#include <gtest/gtest.h>

#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rcore/numerics.hpp"

using namespace rcore;

TEST(Choose, SmallValues) {
  EXPECT_EQ(choose(4, 3), 4);
  EXPECT_EQ(choose(2, 3), 0);
  EXPECT_EQ(choose(200, 3), 1313400);
  EXPECT_EQ(choose(5, -1), 0);
  EXPECT_EQ(choose(0, 0), 1);
}

TEST(Choose, ArbitraryWidth) {
  // C(100, 50) = 100891344545564193334812497256
  EXPECT_EQ(choose(100, 50), BigInt("100891344545564193334812497256"));
  EXPECT_THROW(choose(-1, 0), std::domain_error);
}

TEST(Choose, Vandermonde) {
  for (int n = 0; n <= 24; ++n)
    for (int k = 0; k <= n; ++k)
      for (int i = 0; i <= n; ++i) {
        BigInt sum = 0;
        for (int j = 0; j <= k; ++j) sum += choose(i, j) * choose(n - i, k - j);
        ASSERT_EQ(sum, choose(n, k)) << n << ' ' << k << ' ' << i;
      }
}

TEST(Choose, CheckedConversion) {
  EXPECT_EQ(checked_to_double(choose(200, 3)), 1313400.0);
  EXPECT_FALSE(checked_to_double(choose(2000, 1000)).has_value());
  EXPECT_TRUE(std::isinf(to_double_or_inf(choose(2000, 1000))));
  // log of a value far beyond double range
  EXPECT_NEAR(log_of(choose(2000, 1000)), std::lgamma(2001.0) - 2 * std::lgamma(1001.0), 1e-6);
}

TEST(BinomialTable, MatchesExact) {
  BinomialTable table(60);
  for (int n = 0; n <= 60; ++n)
    for (int k = 0; k <= n; ++k) {
      const double exact = choose(n, k).convert_to<double>();
      ASSERT_DOUBLE_EQ(table.value(n, k), exact);
      ASSERT_NEAR(table.log(n, k), std::log(exact), 1e-12 * std::max(1.0, std::log(exact)));
    }
  EXPECT_EQ(table.value(5, 7), 0.0);
  EXPECT_EQ(table.value(80, 40), choose(80, 40).convert_to<double>());  // grows on demand
}

TEST(BinomPmf, Examples) {
  EXPECT_EQ(binom_pmf(0, 5, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(binom_pmf(1, 2, 0.5), 0.5);
  EXPECT_NEAR(binom_pmf(2, 4, 0.3), 0.2646, 1e-15);
  EXPECT_EQ(binom_pmf(-1, 4, 0.3), 0.0);
  EXPECT_EQ(binom_pmf(5, 4, 0.3), 0.0);
}

TEST(BinomPmf, DomainErrors) {
  EXPECT_THROW(binom_pmf(0, 4, 1.5), std::domain_error);
  EXPECT_THROW(binom_pmf(0, 4, -0.1), std::domain_error);
  EXPECT_THROW(binom_pmf(0, -1, 0.5), std::domain_error);
  EXPECT_THROW(binom_cdf(0, 4, 2.0), std::domain_error);
}

TEST(BinomPmf, NormalizesAndSurvivesTails) {
  for (std::int64_t n : {1, 7, 50, 1000, 10000})
    for (double p : {0.0, 1e-4, 0.05, 0.3, 0.5, 0.97, 1.0}) {
      ExactSum acc;
      for (std::int64_t x = 0; x <= n; ++x) acc.add(binom_pmf(x, n, p));
      EXPECT_NEAR(acc.value(), 1.0, 1e-12) << n << ' ' << p;
    }
  // deep tail of a large binomial stays positive and tiny instead of NaN
  const double tail = binom_pmf(30, 1313400, 200.0 / 1313400.0);
  EXPECT_GT(tail, 0.0);
  EXPECT_LT(tail, 1e-40);
}

TEST(BinomCdf, Examples) {
  EXPECT_EQ(binom_cdf(-1, 10, 0.5), 0.0);
  EXPECT_EQ(binom_cdf(10, 10, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(binom_cdf(1, 3, 0.5), 0.5);
}

TEST(BinomCdf, MonotoneInXAndP) {
  const std::int64_t n = 40;
  for (double p : {0.1, 0.35, 0.6, 0.9}) {
    double prev = 0.0;
    for (std::int64_t x = -1; x <= n; ++x) {
      const double c = binom_cdf(x, n, p);
      ASSERT_GE(c, prev);
      prev = c;
    }
  }
  for (std::int64_t x = 0; x < n; ++x) {
    double prev = 1.0;
    for (double p = 0.0; p <= 1.0; p += 0.05) {
      const double c = binom_cdf(x, n, p);
      ASSERT_LE(c, prev + 1e-15) << x << ' ' << p;
      prev = c;
    }
  }
}

TEST(BinomSf, ComplementOfCdf) {
  for (std::int64_t n : {1, 5, 80})
    for (double p : {0.01, 0.5, 0.99})
      for (std::int64_t x = -1; x <= n; ++x) EXPECT_NEAR(binom_sf(x, n, p), 1.0 - binom_cdf(x, n, p), 1e-14);
  // upper tail far below double epsilon is resolved, not rounded to zero
  EXPECT_NEAR(binom_sf(9, 10, 0.01), 1e-20, 1e-30);
}

TEST(StableSum, Examples) {
  EXPECT_EQ(stable_sum({}), 0.0);
  const std::vector<double> cancel{1e16, 1.0, -1e16};
  EXPECT_EQ(stable_sum(cancel), 1.0);
  const std::vector<double> tenths(10, 0.1);
  EXPECT_NEAR(stable_sum(tenths), 1.0, 1e-15);
}

TEST(StableSum, ExactAgainstRationalArithmetic) {
  using boost::multiprecision::cpp_rational;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-60, 60);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> terms;
    cpp_rational exact = 0;
    for (int i = 0; i < 50; ++i) {
      const double t = std::ldexp(mant(rng), expo(rng));
      terms.push_back(t);
      exact += cpp_rational(t);
    }
    const double got = stable_sum(terms);
    const double want = exact.convert_to<double>();
    // within 2 ulp of the exact sum
    EXPECT_LE(std::abs(got - want), 2 * std::abs(std::nextafter(want, INFINITY) - want)) << trial;
  }
}
