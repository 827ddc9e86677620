// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace rmsa {

/// Random engine shared by every sampling routine in the library. Callers
/// own and seed the source; all sampling is deterministic given the stream.
using RandomSource = std::mt19937_64;

enum class CountingKind {
  Dirac,
  Binomial,
  Poisson,
  OrthogonalDie,
  NegativeBinomial,
  Zeta,
};

/// Short lowercase name ("dirac", "orthogonal_die", ...) used in reports
/// and serialized forms.
std::string_view kind_name(CountingKind kind);

// Parameter records, one per distribution family.
struct DiracLaw {
  std::int64_t count;
};
struct BinomialLaw {
  std::int64_t trials;
  double success_prob;
};
struct PoissonLaw {
  double mean;
};
struct OrthogonalDieLaw {
  std::int64_t lo;
  std::int64_t hi;
};
struct NegativeBinomialLaw {
  double successes;  // r > 0, not necessarily integer
  double success_prob;
};
struct ZetaLaw {
  double exponent;  // s > 3 so that both mean and variance are finite
};

using CountingLaw = std::variant<DiracLaw, BinomialLaw, PoissonLaw, OrthogonalDieLaw,
                                 NegativeBinomialLaw, ZetaLaw>;

/// A probability distribution on counts, the kappa component of a random
/// measure. Immutable after construction and safe to share across threads.
///
/// The defect, variance minus mean, classifies the correlation structure of
/// the random measure built on top: negative defect means counts on disjoint
/// sets are negatively correlated, zero defect means uncorrelated
/// (orthogonal), positive defect means positively correlated.
///
/// Limit relations between the families (binomial to Dirac or Poisson, die
/// to Poisson through thinned counts) are analytic facts, not code paths.
class CountingMeasure {
 public:
  /// Validates the parameters and throws ValidationError on any violation.
  /// OrthogonalDie(lo, hi) additionally requires exact mean-variance
  /// equality, which holds iff 6 (lo + hi) == (hi - lo + 1)^2 - 1.
  explicit CountingMeasure(CountingLaw law);

  static CountingMeasure dirac(std::int64_t count);
  static CountingMeasure binomial(std::int64_t trials, double success_prob);
  static CountingMeasure poisson(double mean);
  static CountingMeasure orthogonal_die(std::int64_t lo, std::int64_t hi);
  static CountingMeasure negative_binomial(double successes, double success_prob);
  static CountingMeasure zeta(double exponent);

  CountingKind kind() const noexcept;
  const CountingLaw& law() const noexcept { return law_; }

  double mean() const;
  double variance() const;
  double defect() const { return variance() - mean(); }

  /// True iff the defect vanishes. Poisson and OrthogonalDie short-circuit
  /// to true; other kinds compare |defect| against 1e-12.
  bool is_orthogonal() const;

  /// P(K = k); zero outside the support.
  double pmf(std::int64_t k) const;

  std::int64_t support_min() const;
  bool bounded_support() const;

  /// A point M such that P(K > M) <= tail_mass. Exact upper end for bounded
  /// kinds regardless of tail_mass; for unbounded kinds the bound is found
  /// by cumulative enumeration (Poisson, NegativeBinomial) or an integral
  /// tail estimate (Zeta) and need not be the smallest such point.
  std::int64_t support_max(double tail_mass = 1e-12) const;

  /// One draw K ~ kappa.
  std::int64_t sample(RandomSource& rng) const;

 private:
  CountingLaw law_;
  // Cached zeta(s), zeta(s-1), zeta(s-2) and sampling cap for the Zeta kind.
  double zeta_s_ = 0.0;
  double zeta_s1_ = 0.0;
  double zeta_s2_ = 0.0;
  std::int64_t zeta_cap_ = 0;
};

/// All (m, n) with n - m <= max_span whose discrete uniform distribution on
/// {m, ..., n} has equal mean and variance, in ascending span order. The
/// smallest solution is (0, 4); spans below 4 yield an empty list.
std::vector<std::pair<std::int64_t, std::int64_t>> orthogonal_die_pairs(std::int64_t max_span);

}  // namespace rmsa
