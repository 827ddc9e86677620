// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsa/counting.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "rmsa/errors.hpp"
#include "test_support.hpp"

namespace rmsa {
namespace {

TEST(CountingMoments, ClosedForms) {
  EXPECT_DOUBLE_EQ(CountingMeasure::dirac(7).mean(), 7.0);
  EXPECT_DOUBLE_EQ(CountingMeasure::dirac(7).variance(), 0.0);

  EXPECT_DOUBLE_EQ(CountingMeasure::binomial(10, 0.5).mean(), 5.0);
  EXPECT_DOUBLE_EQ(CountingMeasure::binomial(10, 0.5).variance(), 2.5);

  EXPECT_DOUBLE_EQ(CountingMeasure::poisson(3.7).mean(), 3.7);
  EXPECT_DOUBLE_EQ(CountingMeasure::poisson(3.7).variance(), 3.7);

  EXPECT_DOUBLE_EQ(CountingMeasure::orthogonal_die(0, 4).mean(), 2.0);
  EXPECT_DOUBLE_EQ(CountingMeasure::orthogonal_die(0, 4).variance(), 2.0);

  const auto nb = CountingMeasure::negative_binomial(2, 0.5);
  EXPECT_DOUBLE_EQ(nb.mean(), 2.0);
  EXPECT_DOUBLE_EQ(nb.variance(), 4.0);

  // zeta(3)/zeta(4) and zeta(2)/zeta(4) - mean^2, 40-digit references.
  const auto zeta4 = CountingMeasure::zeta(4.0);
  EXPECT_NEAR(zeta4.mean(), 1.1106265353261481, 1e-12);
  EXPECT_NEAR(zeta4.variance(), 0.28632645366450284, 1e-12);
}

TEST(CountingMoments, DefectColumn) {
  EXPECT_DOUBLE_EQ(CountingMeasure::dirac(5).defect(), -5.0);        // -c
  EXPECT_NEAR(CountingMeasure::binomial(10, 0.3).defect(), -0.9, 1e-12);  // -n p^2
  EXPECT_DOUBLE_EQ(CountingMeasure::poisson(3.7).defect(), 0.0);
  EXPECT_DOUBLE_EQ(CountingMeasure::orthogonal_die(1, 7).defect(), 0.0);
  EXPECT_NEAR(CountingMeasure::negative_binomial(2, 0.5).defect(), 2.0, 1e-12);  // r(p/(1-p))^2

  for (const auto& k : test::all_kind_examples()) {
    EXPECT_DOUBLE_EQ(k.defect(), k.variance() - k.mean());
  }
}

TEST(CountingMoments, OrthogonalityClassification) {
  EXPECT_TRUE(CountingMeasure::poisson(1.0).is_orthogonal());
  EXPECT_TRUE(CountingMeasure::orthogonal_die(1, 7).is_orthogonal());
  EXPECT_FALSE(CountingMeasure::dirac(3).is_orthogonal());
  EXPECT_FALSE(CountingMeasure::binomial(10, 0.3).is_orthogonal());
  EXPECT_FALSE(CountingMeasure::negative_binomial(2, 0.5).is_orthogonal());
  EXPECT_FALSE(CountingMeasure::zeta(4.0).is_orthogonal());
}

TEST(CountingValidation, ConstructorContracts) {
  EXPECT_THROW(CountingMeasure::dirac(-1), ValidationError);
  EXPECT_NO_THROW(CountingMeasure::dirac(0));  // zero stones is a valid degenerate law
  EXPECT_THROW(CountingMeasure::binomial(0, 0.5), ValidationError);
  EXPECT_THROW(CountingMeasure::binomial(10, 1.5), ValidationError);
  EXPECT_THROW(CountingMeasure::poisson(0.0), ValidationError);
  EXPECT_THROW(CountingMeasure::poisson(-1.0), ValidationError);
  EXPECT_THROW(CountingMeasure::negative_binomial(0.0, 0.5), ValidationError);
  EXPECT_THROW(CountingMeasure::negative_binomial(2.0, 1.0), ValidationError);
  EXPECT_THROW(CountingMeasure::zeta(3.0), ValidationError);
  EXPECT_THROW(CountingMeasure::zeta(2.5), ValidationError);
  EXPECT_NO_THROW(CountingMeasure::zeta(3.0001));
}

TEST(CountingValidation, OrthogonalDieMeanVarianceEquality) {
  EXPECT_NO_THROW(CountingMeasure::orthogonal_die(0, 4));
  EXPECT_NO_THROW(CountingMeasure::orthogonal_die(1, 7));
  EXPECT_NO_THROW(CountingMeasure::orthogonal_die(5, 15));
  EXPECT_NO_THROW(CountingMeasure::orthogonal_die(8, 20));
  EXPECT_THROW(CountingMeasure::orthogonal_die(0, 5), ValidationError);
  EXPECT_THROW(CountingMeasure::orthogonal_die(2, 7), ValidationError);
  EXPECT_THROW(CountingMeasure::orthogonal_die(1, 6), ValidationError);
  EXPECT_THROW(CountingMeasure::orthogonal_die(4, 2), ValidationError);
}

TEST(CountingValidation, OrthogonalDiePairs) {
  using Pairs = std::vector<std::pair<std::int64_t, std::int64_t>>;
  EXPECT_EQ(orthogonal_die_pairs(3), Pairs{});
  EXPECT_EQ(orthogonal_die_pairs(4), (Pairs{{0, 4}}));
  // Spans 4, 6 and 10 admit solutions up to span 10; the span-10 die is
  // (5, 15). (The bound is inclusive in the span n - m.)
  EXPECT_EQ(orthogonal_die_pairs(10), (Pairs{{0, 4}, {1, 7}, {5, 15}}));
  EXPECT_EQ(orthogonal_die_pairs(16), (Pairs{{0, 4}, {1, 7}, {5, 15}, {8, 20}, {16, 32}}));

  for (const auto& [m, n] : orthogonal_die_pairs(60)) {
    const auto die = CountingMeasure::orthogonal_die(m, n);
    EXPECT_TRUE(die.is_orthogonal());
    EXPECT_DOUBLE_EQ(die.defect(), 0.0);
  }
}

TEST(CountingPmf, SumsToOneOverTruncatedSupport) {
  const std::vector<CountingMeasure> laws = {
      CountingMeasure::dirac(7),
      CountingMeasure::binomial(10, 0.3),
      CountingMeasure::poisson(3.7),
      CountingMeasure::poisson(1000.0),
      CountingMeasure::orthogonal_die(5, 15),
      CountingMeasure::negative_binomial(2.5, 0.6),
      CountingMeasure::zeta(3.5),
      CountingMeasure::zeta(4.0),
  };
  for (const auto& k : laws) {
    double sum = 0.0;
    for (std::int64_t i = k.support_min(); i <= k.support_max(1e-12); ++i) sum += k.pmf(i);
    EXPECT_NEAR(sum, 1.0, 1e-9) << kind_name(k.kind());
  }
}

TEST(CountingPmf, ZetaForm) {
  const auto k = CountingMeasure::zeta(4.0);
  // k^-4 / zeta(4)
  EXPECT_NEAR(k.pmf(1), 0.92393840292159017, 1e-13);
  EXPECT_NEAR(k.pmf(2), 0.057746150182599385, 1e-13);
  EXPECT_NEAR(k.pmf(3), 0.011406646949649261, 1e-13);
  EXPECT_DOUBLE_EQ(k.pmf(0), 0.0);
}

TEST(CountingPmf, OutsideSupportIsZero) {
  EXPECT_DOUBLE_EQ(CountingMeasure::dirac(7).pmf(6), 0.0);
  EXPECT_DOUBLE_EQ(CountingMeasure::binomial(10, 0.3).pmf(11), 0.0);
  EXPECT_DOUBLE_EQ(CountingMeasure::orthogonal_die(5, 15).pmf(4), 0.0);
  EXPECT_DOUBLE_EQ(CountingMeasure::orthogonal_die(5, 15).pmf(16), 0.0);
}

TEST(CountingSampling, DiracIsExact) {
  RandomSource rng(7);
  const auto k = CountingMeasure::dirac(9);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(k.sample(rng), 9);
}

TEST(CountingSampling, DieStaysOnSupport) {
  RandomSource rng(11);
  const auto k = CountingMeasure::orthogonal_die(0, 4);
  for (int i = 0; i < 1000; ++i) {
    const auto v = k.sample(rng);
    EXPECT_GE(v, 0);
    EXPECT_LE(v, 4);
  }
}

TEST(CountingSampling, PoissonLargeMeanBand) {
  RandomSource rng(2026);
  const auto k = CountingMeasure::poisson(1000.0);
  const std::int64_t reps = 100000;
  double sum = 0.0;
  for (std::int64_t i = 0; i < reps; ++i) sum += static_cast<double>(k.sample(rng));
  const double mean = sum / static_cast<double>(reps);
  // 4 sigma band with sigma = sqrt(1000 / 1e5) = 0.1.
  EXPECT_NEAR(mean, 1000.0, 0.4);
}

// Empirical mean and variance over a million draws stay within five
// standard errors of the closed forms. The Zeta exponent is chosen large
// enough that the variance estimator itself has finite variance.
TEST(CountingSampling, MomentsWithinFiveStandardErrors) {
  const std::vector<CountingMeasure> laws = {
      CountingMeasure::dirac(7),               CountingMeasure::binomial(12, 0.4),
      CountingMeasure::poisson(6.5),           CountingMeasure::orthogonal_die(5, 15),
      CountingMeasure::negative_binomial(2.5, 0.4), CountingMeasure::zeta(7.5),
  };
  const std::int64_t reps = 1000000;
  std::uint64_t seed = 90210;
  for (const auto& k : laws) {
    RandomSource rng(seed++);
    double mean = 0.0, m2 = 0.0;
    std::vector<double> draws;
    draws.reserve(static_cast<std::size_t>(reps));
    for (std::int64_t i = 0; i < reps; ++i) {
      const double x = static_cast<double>(k.sample(rng));
      draws.push_back(x);
      const double d = x - mean;
      mean += d / static_cast<double>(i + 1);
      m2 += d * (x - mean);
    }
    const double var_hat = m2 / static_cast<double>(reps - 1);
    double m4 = 0.0;
    for (double x : draws) {
      const double d = x - mean;
      m4 += d * d * d * d;
    }
    m4 /= static_cast<double>(reps);

    const double se_mean = std::sqrt(k.variance() / static_cast<double>(reps));
    const double se_var =
        std::sqrt(std::max(m4 - var_hat * var_hat, 0.0) / static_cast<double>(reps));
    EXPECT_NEAR(mean, k.mean(), 5.0 * se_mean) << kind_name(k.kind());
    EXPECT_NEAR(var_hat, k.variance(), 5.0 * se_var) << kind_name(k.kind());
  }
}

// The die-to-Poisson limit acts through the random measure: thinned counts
// Binomial(K, q) with matched mean converge to the Poisson law as the die
// grows, which pmf enumeration shows directly. Note the raw pmfs do NOT get
// closer in total variation for (5,15) vs (0,4) -- both comparisons are
// pinned here against 40-digit enumeration values.
TEST(CountingLimits, ThinnedDieApproachesPoisson) {
  const auto poisson2 = test::pmf_table(CountingMeasure::poisson(2.0));
  const auto poisson10 = test::pmf_table(CountingMeasure::poisson(10.0));

  const double tv_raw_small = test::tv_distance(
      test::pmf_table(CountingMeasure::orthogonal_die(0, 4)), poisson2);
  const double tv_raw_big = test::tv_distance(
      test::pmf_table(CountingMeasure::orthogonal_die(5, 15)), poisson10);
  EXPECT_NEAR(tv_raw_small, 0.19399415029016192, 1e-9);
  EXPECT_NEAR(tv_raw_big, 0.19478346662866063, 1e-9);
  // Raw pmf distances are nearly equal and slightly increasing.
  EXPECT_GT(tv_raw_big, tv_raw_small);

  // Thinned to common mean 2 the convergence is clear and monotone.
  const double tv_small = test::tv_distance(test::thinned_die_pmf(0, 4, 1.0), poisson2);
  const double tv_mid = test::tv_distance(test::thinned_die_pmf(5, 15, 0.2), poisson2);
  const double tv_big = test::tv_distance(test::thinned_die_pmf(8, 20, 1.0 / 7.0), poisson2);
  EXPECT_NEAR(tv_small, 0.19399415029016192, 1e-9);
  EXPECT_NEAR(tv_mid, 0.0037672309517811120, 1e-9);
  EXPECT_NEAR(tv_big, 0.0018213201804117999, 1e-9);
  EXPECT_LT(tv_mid, tv_small);
  EXPECT_LT(tv_big, tv_mid);
}

}  // namespace
}  // namespace rmsa
