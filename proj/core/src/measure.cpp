// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsa/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rmsa/errors.hpp"

namespace rmsa {

namespace {

constexpr double kWeightSumTol = 1e-12;

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

// Streaming mean / second central moment / co-moment accumulator.
struct Accumulator {
  std::int64_t n = 0;
  double mean_x = 0.0, mean_y = 0.0;
  double m2_x = 0.0, c_xy = 0.0;

  void add(double x, double y) {
    ++n;
    const double dx = x - mean_x;
    mean_x += dx / static_cast<double>(n);
    m2_x += dx * (x - mean_x);
    const double dy = y - mean_y;
    mean_y += dy / static_cast<double>(n);
    c_xy += dx * (y - mean_y);
  }
};

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<std::pair<std::string, double>> weighted_points) {
  if (weighted_points.empty()) {
    throw ValidationError("a discrete measure needs at least one support point");
  }
  labels_.reserve(weighted_points.size());
  weights_.reserve(weighted_points.size());
  double sum = 0.0;
  for (auto& [label, w] : weighted_points) {
    if (!(w >= 0.0)) {
      throw ValidationError("negative weight " + std::to_string(w) + " at support point \"" +
                            label + "\"");
    }
    if (!index_.emplace(label, labels_.size()).second) {
      throw ValidationError("duplicate support point \"" + label + "\"");
    }
    sum += w;
    labels_.push_back(std::move(label));
    weights_.push_back(w);
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw ValidationError("weights sum to " + std::to_string(sum) + ", expected 1 within 1e-12");
  }
  cumulative_.resize(weights_.size());
  std::partial_sum(weights_.begin(), weights_.end(), cumulative_.begin());
}

DiscreteMeasure DiscreteMeasure::uniform(std::vector<std::string> labels) {
  if (labels.empty()) {
    throw ValidationError("a discrete measure needs at least one support point");
  }
  const double w = 1.0 / static_cast<double>(labels.size());
  std::vector<std::pair<std::string, double>> pts;
  pts.reserve(labels.size());
  for (auto& l : labels) pts.emplace_back(std::move(l), w);
  return DiscreteMeasure(std::move(pts));
}

bool DiscreteMeasure::contains(std::string_view label) const {
  return index_.find(label) != index_.end();
}

std::size_t DiscreteMeasure::index_of(std::string_view label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) {
    throw ValidationError("unknown support point \"" + std::string(label) + "\"");
  }
  return it->second;
}

double DiscreteMeasure::weight(std::string_view label) const { return weights_[index_of(label)]; }

std::size_t DiscreteMeasure::sample_index(RandomSource& rng) const {
  std::uniform_real_distribution<double> unif(0.0, cumulative_.back());
  const double u = unif(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<std::size_t>(std::min<std::ptrdiff_t>(
      it - cumulative_.begin(), static_cast<std::ptrdiff_t>(labels_.size()) - 1));
}

const std::string& DiscreteMeasure::sample_point(RandomSource& rng) const {
  return labels_[sample_index(rng)];
}

MeasurableFn::MeasurableFn(std::map<std::string, double, std::less<>> values)
    : values_(std::move(values)) {}

MeasurableFn MeasurableFn::indicator(const DiscreteMeasure& nu,
                                     const std::vector<std::string>& on) {
  std::map<std::string, double, std::less<>> v;
  for (const auto& l : nu.points()) v[l] = 0.0;
  for (const auto& l : on) {
    nu.index_of(l);  // reject labels outside the support
    v[l] = 1.0;
  }
  return MeasurableFn(std::move(v));
}

MeasurableFn MeasurableFn::constant(const DiscreteMeasure& nu, double value) {
  std::map<std::string, double, std::less<>> v;
  for (const auto& l : nu.points()) v[l] = value;
  return MeasurableFn(std::move(v));
}

double MeasurableFn::at(std::string_view label) const {
  const auto it = values_.find(label);
  if (it == values_.end()) {
    throw ValidationError("function has no value at support point \"" + std::string(label) +
                          "\"");
  }
  return it->second;
}

bool MeasurableFn::has(std::string_view label) const {
  return values_.find(label) != values_.end();
}

Kernel::Kernel(std::map<std::string, MeasurementLaw, std::less<>> laws) : laws_(std::move(laws)) {
  for (const auto& [label, law] : laws_) {
    std::visit(Overload{
                   [&](const BernoulliKernelLaw& b) {
                     if (!(b.success_prob >= 0.0 && b.success_prob <= 1.0)) {
                       throw ValidationError("bernoulli kernel probability at \"" + label +
                                             "\" must lie in [0, 1]");
                     }
                   },
                   [&](const MomentOnlyKernelLaw& m) {
                     if (!(m.variance >= 0.0)) {
                       throw ValidationError("moment-only kernel variance at \"" + label +
                                             "\" must be nonnegative");
                     }
                   },
                   [&](const EmpiricalKernelLaw& e) {
                     if (e.draws.empty()) {
                       throw ValidationError("empirical kernel at \"" + label +
                                             "\" needs at least one draw");
                     }
                   },
               },
               law);
  }
}

const MeasurementLaw& Kernel::law(std::string_view label) const {
  const auto it = laws_.find(label);
  if (it == laws_.end()) {
    throw ValidationError("kernel undefined at support point \"" + std::string(label) + "\"");
  }
  return it->second;
}

bool Kernel::has(std::string_view label) const { return laws_.find(label) != laws_.end(); }

bool Kernel::defined_on(const DiscreteMeasure& nu) const {
  return std::all_of(nu.points().begin(), nu.points().end(),
                     [this](const std::string& l) { return has(l); });
}

double Kernel::point_mean(std::string_view label) const {
  return std::visit(Overload{
                        [](const BernoulliKernelLaw& b) { return b.success_prob; },
                        [](const MomentOnlyKernelLaw& m) { return m.mean; },
                        [](const EmpiricalKernelLaw& e) {
                          double s = 0.0;
                          for (double d : e.draws) s += d;
                          return s / static_cast<double>(e.draws.size());
                        },
                    },
                    law(label));
}

double Kernel::point_variance(std::string_view label) const {
  return std::visit(
      Overload{
          [](const BernoulliKernelLaw& b) { return b.success_prob * (1.0 - b.success_prob); },
          [](const MomentOnlyKernelLaw& m) { return m.variance; },
          [](const EmpiricalKernelLaw& e) {
            // Variance of the empirical law itself, i.e. 1/n normalization.
            double s = 0.0;
            for (double d : e.draws) s += d;
            const double mean = s / static_cast<double>(e.draws.size());
            double v = 0.0;
            for (double d : e.draws) v += (d - mean) * (d - mean);
            return v / static_cast<double>(e.draws.size());
          },
      },
      law(label));
}

bool Kernel::samplable() const {
  return std::none_of(laws_.begin(), laws_.end(), [](const auto& kv) {
    return std::holds_alternative<MomentOnlyKernelLaw>(kv.second);
  });
}

double Kernel::sample(std::string_view label, RandomSource& rng) const {
  return std::visit(
      Overload{
          [&rng](const BernoulliKernelLaw& b) {
            std::bernoulli_distribution dist(b.success_prob);
            return dist(rng) ? 1.0 : 0.0;
          },
          [&label](const MomentOnlyKernelLaw&) -> double {
            throw ValidationError("kernel has no sampling law at support point \"" +
                                  std::string(label) + "\"");
          },
          [&rng](const EmpiricalKernelLaw& e) {
            std::uniform_int_distribution<std::size_t> dist(0, e.draws.size() - 1);
            return e.draws[dist(rng)];
          },
      },
      law(label));
}

std::map<std::string, std::int64_t> PointSample::counts() const {
  std::map<std::string, std::int64_t> c;
  for (const auto& s : stones) ++c[s];
  return c;
}

double integrate(const DiscreteMeasure& nu, const MeasurableFn& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    sum += nu.weights()[i] * f.at(nu.points()[i]);
  }
  return sum;
}

ProductMoments::ProductMoments(const DiscreteMeasure& nu, const Kernel& q) {
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const auto& label = nu.points()[i];
    const double w = nu.weights()[i];
    const double c = q.point_mean(label);   // throws if the kernel misses the point
    const double d2 = q.point_variance(label);
    moments_[label] = {w * c, w * (c * c + d2)};
  }
}

double ProductMoments::first(std::string_view label) const {
  const auto it = moments_.find(label);
  if (it == moments_.end()) {
    throw ValidationError("unknown support point \"" + std::string(label) + "\"");
  }
  return it->second.first;
}

double ProductMoments::second(std::string_view label) const {
  const auto it = moments_.find(label);
  if (it == moments_.end()) {
    throw ValidationError("unknown support point \"" + std::string(label) + "\"");
  }
  return it->second.second;
}

double ProductMoments::first(const std::vector<std::string>& region) const {
  double s = 0.0;
  for (const auto& l : region) s += first(l);
  return s;
}

double ProductMoments::second(const std::vector<std::string>& region) const {
  double s = 0.0;
  for (const auto& l : region) s += second(l);
  return s;
}

ProductMoments product(const DiscreteMeasure& nu, const Kernel& q) {
  return ProductMoments(nu, q);
}

double mean_nf(const RandomMeasure& n, const MeasurableFn& f) {
  return n.kappa.mean() * integrate(n.nu, f);
}

double var_nf(const RandomMeasure& n, const MeasurableFn& f) {
  double nu_f = 0.0, nu_f2 = 0.0;
  for (std::size_t i = 0; i < n.nu.size(); ++i) {
    const double w = n.nu.weights()[i];
    const double v = f.at(n.nu.points()[i]);
    nu_f += w * v;
    nu_f2 += w * (v * v);
  }
  return n.kappa.mean() * nu_f2 + n.kappa.defect() * (nu_f * nu_f);
}

double cov_nf(const RandomMeasure& n, const MeasurableFn& f, const MeasurableFn& g) {
  // Products are grouped so the result is bit-identical under f <-> g.
  double nu_f = 0.0, nu_g = 0.0, nu_fg = 0.0;
  for (std::size_t i = 0; i < n.nu.size(); ++i) {
    const double w = n.nu.weights()[i];
    const double vf = f.at(n.nu.points()[i]);
    const double vg = g.at(n.nu.points()[i]);
    nu_f += w * vf;
    nu_g += w * vg;
    nu_fg += w * (vf * vg);
  }
  return n.kappa.mean() * nu_fg + n.kappa.defect() * (nu_f * nu_g);
}

double mean_mf(const CountingMeasure& kappa, const ProductMoments& pm,
               const std::vector<std::string>& region) {
  return kappa.mean() * pm.first(region);
}

double var_mf(const CountingMeasure& kappa, const ProductMoments& pm,
              const std::vector<std::string>& region) {
  const double m1 = pm.first(region);
  return kappa.mean() * pm.second(region) + kappa.defect() * m1 * m1;
}

double cov_mf(const CountingMeasure& kappa, const ProductMoments& pm,
              const std::vector<std::string>& region_a,
              const std::vector<std::string>& region_b) {
  for (const auto& a : region_a) {
    if (std::find(region_b.begin(), region_b.end(), a) != region_b.end()) {
      throw ValidationError("cov_mf regions must be disjoint; both contain \"" + a + "\"");
    }
  }
  return kappa.defect() * pm.first(region_a) * pm.first(region_b);
}

PointSample sample_measure(const RandomMeasure& n, RandomSource& rng) {
  const std::int64_t k = n.kappa.sample(rng);
  PointSample sample;
  sample.stones.reserve(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) {
    sample.stones.push_back(n.nu.sample_point(rng));
  }
  return sample;
}

namespace {

// Values of f aligned with nu's point order, so the replication loop can
// work with indices instead of label lookups.
std::vector<double> aligned_values(const DiscreteMeasure& nu, const MeasurableFn& f) {
  std::vector<double> v;
  v.reserve(nu.size());
  for (const auto& label : nu.points()) v.push_back(f.at(label));
  return v;
}

void check_reps(std::int64_t reps) {
  if (reps < 2) {
    throw ValidationError("mc_moments needs reps >= 2, got " + std::to_string(reps));
  }
}

McMoments run_replications(const RandomMeasure& n, std::int64_t reps, RandomSource& rng,
                           const std::function<void(std::size_t)>& on_stone,
                           const std::function<std::pair<double, double>()>& totals,
                           bool with_cov) {
  Accumulator acc;
  for (std::int64_t r = 0; r < reps; ++r) {
    const std::int64_t k = n.kappa.sample(rng);
    for (std::int64_t i = 0; i < k; ++i) on_stone(n.nu.sample_index(rng));
    const auto [x, y] = totals();
    acc.add(x, y);
  }
  McMoments out;
  out.reps = reps;
  out.mean = acc.mean_x;
  out.variance = acc.m2_x / static_cast<double>(reps - 1);
  if (with_cov) out.covariance = acc.c_xy / static_cast<double>(reps - 1);
  return out;
}

}  // namespace

McMoments mc_moments(const RandomMeasure& n, const MeasurableFn& f, std::int64_t reps,
                     RandomSource& rng) {
  check_reps(reps);
  const auto fv = aligned_values(n.nu, f);
  double sum = 0.0;
  return run_replications(
      n, reps, rng, [&](std::size_t idx) { sum += fv[idx]; },
      [&]() {
        const double x = sum;
        sum = 0.0;
        return std::pair{x, 0.0};
      },
      false);
}

McMoments mc_moments(const RandomMeasure& n, const MeasurableFn& f, const MeasurableFn& g,
                     std::int64_t reps, RandomSource& rng) {
  check_reps(reps);
  const auto fv = aligned_values(n.nu, f);
  const auto gv = aligned_values(n.nu, g);
  double sum_f = 0.0, sum_g = 0.0;
  return run_replications(
      n, reps, rng,
      [&](std::size_t idx) {
        sum_f += fv[idx];
        sum_g += gv[idx];
      },
      [&]() {
        const std::pair out{sum_f, sum_g};
        sum_f = sum_g = 0.0;
        return out;
      },
      true);
}

namespace {

void check_kernel_samplable(const RandomMeasure& n, const Kernel& q) {
  for (const auto& label : n.nu.points()) {
    if (std::holds_alternative<MomentOnlyKernelLaw>(q.law(label))) {
      throw ValidationError("kernel has no sampling law at support point \"" + label + "\"");
    }
  }
}

}  // namespace

McMoments mc_moments(const RandomMeasure& n, const Kernel& q, const PairFn& f, std::int64_t reps,
                     RandomSource& rng) {
  check_reps(reps);
  check_kernel_samplable(n, q);
  double sum = 0.0;
  return run_replications(
      n, reps, rng,
      [&](std::size_t idx) {
        const auto& label = n.nu.points()[idx];
        sum += f(label, q.sample(label, rng));
      },
      [&]() {
        const double x = sum;
        sum = 0.0;
        return std::pair{x, 0.0};
      },
      false);
}

McMoments mc_moments(const RandomMeasure& n, const Kernel& q, const PairFn& f, const PairFn& g,
                     std::int64_t reps, RandomSource& rng) {
  check_reps(reps);
  check_kernel_samplable(n, q);
  double sum_f = 0.0, sum_g = 0.0;
  return run_replications(
      n, reps, rng,
      [&](std::size_t idx) {
        const auto& label = n.nu.points()[idx];
        const double y = q.sample(label, rng);
        sum_f += f(label, y);
        sum_g += g(label, y);
      },
      [&]() {
        const std::pair out{sum_f, sum_g};
        sum_f = sum_g = 0.0;
        return out;
      },
      true);
}

}  // namespace rmsa
