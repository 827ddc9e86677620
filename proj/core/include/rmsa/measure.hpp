// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rmsa/counting.hpp"

namespace rmsa {

/// A probability measure with finite support: ordered labeled points with
/// nonnegative weights summing to one (tolerance 1e-12).
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(std::vector<std::pair<std::string, double>> weighted_points);

  static DiscreteMeasure uniform(std::vector<std::string> labels);

  const std::vector<std::string>& points() const noexcept { return labels_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return labels_.size(); }

  bool contains(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;  // throws on unknown label
  double weight(std::string_view label) const;

  /// One point drawn from the measure (inverse-CDF over the stored order).
  std::size_t sample_index(RandomSource& rng) const;
  const std::string& sample_point(RandomSource& rng) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// A real-valued function given by its values on support points.
///
/// Values may be negative: the moment formulas only need square
/// integrability, and signed endpoint summaries (e.g. change in tumor size)
/// appear in practice.
class MeasurableFn {
 public:
  explicit MeasurableFn(std::map<std::string, double, std::less<>> values);

  /// 1 on `on`, 0 on the rest of nu's support.
  static MeasurableFn indicator(const DiscreteMeasure& nu, const std::vector<std::string>& on);
  static MeasurableFn constant(const DiscreteMeasure& nu, double value);

  double at(std::string_view label) const;  // throws, naming the point
  bool has(std::string_view label) const;
  const std::map<std::string, double, std::less<>>& values() const noexcept { return values_; }

 private:
  std::map<std::string, double, std::less<>> values_;
};

// Per-point measurement laws of a transition kernel.
struct BernoulliKernelLaw {
  double success_prob;
};
struct MomentOnlyKernelLaw {
  double mean;
  double variance;
};
struct EmpiricalKernelLaw {
  std::vector<double> draws;
};
using MeasurementLaw = std::variant<BernoulliKernelLaw, MomentOnlyKernelLaw, EmpiricalKernelLaw>;

/// Transition kernel: a measurement law attached to each support point.
/// Bernoulli and Empirical laws can be sampled; MomentOnly laws carry the
/// first two moments and reject sampling paths.
class Kernel {
 public:
  explicit Kernel(std::map<std::string, MeasurementLaw, std::less<>> laws);

  const MeasurementLaw& law(std::string_view label) const;
  bool has(std::string_view label) const;
  bool defined_on(const DiscreteMeasure& nu) const;

  double point_mean(std::string_view label) const;
  double point_variance(std::string_view label) const;

  /// True when every per-point law can be sampled.
  bool samplable() const;
  double sample(std::string_view label, RandomSource& rng) const;

  const std::map<std::string, MeasurementLaw, std::less<>>& laws() const noexcept {
    return laws_;
  }

 private:
  std::map<std::string, MeasurementLaw, std::less<>> laws_;
};

/// The pair (kappa, nu) defining a random counting measure via stone
/// throwing: draw K ~ kappa, then K iid points from nu.
struct RandomMeasure {
  CountingMeasure kappa;
  DiscreteMeasure nu;
};

/// One stone-throwing realization: the multiset of landed points. Stones
/// are stored in draw order, but no operation depends on the order.
struct PointSample {
  std::vector<std::string> stones;

  std::map<std::string, std::int64_t> counts() const;
};

/// nu f = sum_i weight_i f(point_i).
double integrate(const DiscreteMeasure& nu, const MeasurableFn& f);

/// Moments of the product measure nu x Q for integrands of the forms
/// 1_A(x) y and 1_A(x) y^2: first(A) = sum_{x in A} nu{x} c_x and
/// second(A) = sum_{x in A} nu{x} (c_x^2 + delta_x^2).
class ProductMoments {
 public:
  ProductMoments(const DiscreteMeasure& nu, const Kernel& q);

  double first(std::string_view label) const;
  double second(std::string_view label) const;
  double first(const std::vector<std::string>& region) const;
  double second(const std::vector<std::string>& region) const;

 private:
  std::map<std::string, std::pair<double, double>, std::less<>> moments_;
};

ProductMoments product(const DiscreteMeasure& nu, const Kernel& q);

/// E Nf = c nu(f).
double mean_nf(const RandomMeasure& n, const MeasurableFn& f);

/// Var Nf = c nu(f^2) + (delta^2 - c) (nu f)^2.
double var_nf(const RandomMeasure& n, const MeasurableFn& f);

/// Cov(Nf, Ng) = c nu(fg) + (delta^2 - c) (nu f)(nu g).
double cov_nf(const RandomMeasure& n, const MeasurableFn& f, const MeasurableFn& g);

// Moments of Mf for f = 1_A(x) y under the product measure (kappa, nu x Q).
double mean_mf(const CountingMeasure& kappa, const ProductMoments& pm,
               const std::vector<std::string>& region);
double var_mf(const CountingMeasure& kappa, const ProductMoments& pm,
              const std::vector<std::string>& region);
/// Covariance of Mf_A and Mf_B for disjoint regions A and B.
double cov_mf(const CountingMeasure& kappa, const ProductMoments& pm,
              const std::vector<std::string>& region_a, const std::vector<std::string>& region_b);

/// Stone-throwing realization of the random measure.
PointSample sample_measure(const RandomMeasure& n, RandomSource& rng);

struct McMoments {
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> covariance;
  std::int64_t reps = 0;
};

/// Empirical moments of Nf (and optionally the covariance with Ng) over
/// independent stone-throwing replications. Requires reps >= 2; variance and
/// covariance use the unbiased 1/(reps-1) normalization.
McMoments mc_moments(const RandomMeasure& n, const MeasurableFn& f, std::int64_t reps,
                     RandomSource& rng);
McMoments mc_moments(const RandomMeasure& n, const MeasurableFn& f, const MeasurableFn& g,
                     std::int64_t reps, RandomSource& rng);

/// Function of a stone and its kernel measurement, e.g. 1_T(x) y.
using PairFn = std::function<double(std::string_view label, double measurement)>;

/// Kernel variants: each stone additionally draws a measurement from the
/// kernel. MomentOnly kernels reject this path ("kernel has no sampling
/// law").
McMoments mc_moments(const RandomMeasure& n, const Kernel& q, const PairFn& f, std::int64_t reps,
                     RandomSource& rng);
McMoments mc_moments(const RandomMeasure& n, const Kernel& q, const PairFn& f, const PairFn& g,
                     std::int64_t reps, RandomSource& rng);

}  // namespace rmsa
