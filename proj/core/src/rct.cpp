// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsa/rct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmsa/errors.hpp"
#include "rmsa/sensitivity.hpp"

namespace rmsa {

namespace {

// Linear interpolation between order statistics (the common "type 7" rule).
double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double h = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

VaccineTrial::VaccineTrial(std::int64_t enrollees_in, std::int64_t cases_treatment_in,
                           std::int64_t cases_control_in, std::array<double, 2> weights)
    : enrollees(enrollees_in),
      cases_treatment(cases_treatment_in),
      cases_control(cases_control_in),
      group_weights(weights) {
  if (enrollees < 1) {
    throw ValidationError("trial needs a positive number of enrollees, got " +
                          std::to_string(enrollees));
  }
  if (cases_treatment < 0 || cases_control < 0) {
    throw ValidationError("case counts must be nonnegative");
  }
  if (cases_treatment > enrollees || cases_control > enrollees) {
    throw ValidationError("case counts cannot exceed the number of enrollees");
  }
  if (!(group_weights[0] > 0.0) || !(group_weights[1] > 0.0) ||
      std::abs(group_weights[0] + group_weights[1] - 1.0) > 1e-12) {
    throw ValidationError("group weights must be positive and sum to 1");
  }
}

double VaccineTrial::prob_treatment() const {
  return static_cast<double>(cases_treatment) /
         (static_cast<double>(enrollees) * group_weights[0]);
}

double VaccineTrial::prob_control() const {
  return static_cast<double>(cases_control) /
         (static_cast<double>(enrollees) * group_weights[1]);
}

std::string_view dispersion_rule_name(DispersionRule r) {
  return r == DispersionRule::Normal392 ? "normal392" : "quarterwidth";
}

DispersionRule dispersion_rule_from_name(std::string_view name) {
  if (name == "normal392") return DispersionRule::Normal392;
  if (name == "quarterwidth") return DispersionRule::QuarterWidth;
  throw ValidationError("unknown dispersion rule \"" + std::string(name) +
                        "\" (expected normal392 or quarterwidth)");
}

GroupMoments dispersion_to_variance(const GroupStat& g, DispersionRule rule) {
  if (const auto* ci = std::get_if<Ci95>(&g.dispersion)) {
    if (ci->lower > ci->upper) {
      throw ValidationError("confidence interval has lower > upper");
    }
    const double width = ci->upper - ci->lower;
    if (rule == DispersionRule::Normal392) {
      const double sd = width / 3.92;
      return {g.mean, sd * sd};
    }
    return {g.mean, width / 4.0};
  }
  const double sd = std::get<Sd>(g.dispersion).value;
  if (sd < 0.0) {
    throw ValidationError("standard deviation must be nonnegative");
  }
  return {g.mean, sd * sd};
}

double efficacy(const VaccineTrial& t) {
  if (t.cases_control == 0) {
    throw DegenerateError("efficacy undefined: no cases in the control arm");
  }
  return 1.0 - t.prob_treatment() / t.prob_control();
}

double risk_uncertainty(double eff) {
  if (!(eff >= 0.0 && eff <= 1.0)) {
    throw ValidationError("risk uncertainty needs eff in [0, 1], got " + std::to_string(eff));
  }
  return 2.0 * std::min(1.0 - eff, eff);
}

SensitivitySplit vaccine_sensitivity(const VaccineTrial& t) {
  if (t.cases_treatment + t.cases_control == 0) {
    throw DegenerateError("sensitivity undefined: no cases in either arm");
  }
  // The infection indicator has second moment equal to its mean, so the
  // sensitivity masses are w P(arm); the arm denominators cancel the
  // weights and leave the case-count ratio.
  const double a = t.group_weights[0] * t.prob_treatment();
  const double b = t.group_weights[1] * t.prob_control();
  const double s_t = a / (a + b);
  return {s_t, 1.0 - s_t, binary_entropy(s_t)};
}

VaccineCi vaccine_ci(double s_control, std::int64_t enrollees, std::int64_t reps,
                     RandomSource& rng) {
  if (!(s_control >= 0.0 && s_control <= 1.0)) {
    throw ValidationError("s_control must lie in [0, 1]");
  }
  if (enrollees < 1) {
    throw ValidationError("enrollees must be positive");
  }
  if (reps < 100) {
    throw ValidationError("vaccine_ci needs reps >= 100, got " + std::to_string(reps));
  }

  std::poisson_distribution<std::int64_t> trials(static_cast<double>(enrollees));
  std::vector<double> s_hat, h_hat;
  s_hat.reserve(static_cast<std::size_t>(reps));
  h_hat.reserve(static_cast<std::size_t>(reps));
  for (std::int64_t r = 0; r < reps; ++r) {
    std::int64_t k = 0;
    do {
      k = trials(rng);
    } while (k == 0);
    std::binomial_distribution<std::int64_t> successes(k, s_control);
    const double s = static_cast<double>(successes(rng)) / static_cast<double>(k);
    s_hat.push_back(s);
    h_hat.push_back(binary_entropy(s));
  }
  std::sort(s_hat.begin(), s_hat.end());
  std::sort(h_hat.begin(), h_hat.end());
  return {{quantile_sorted(s_hat, 0.025), quantile_sorted(s_hat, 0.975)},
          {quantile_sorted(h_hat, 0.025), quantile_sorted(h_hat, 0.975)}};
}

SensitivitySplit endpoint_sensitivity(const EndpointRecord& e, std::array<double, 2> weights,
                                      DispersionRule rule) {
  if (!(weights[0] > 0.0) || !(weights[1] > 0.0) ||
      std::abs(weights[0] + weights[1] - 1.0) > 1e-12) {
    throw ValidationError("group weights must be positive and sum to 1");
  }
  const GroupMoments t = dispersion_to_variance(e.treatment, rule);
  const GroupMoments c = dispersion_to_variance(e.control, rule);
  const double a = weights[0] * (t.mean * t.mean + t.variance);
  const double b = weights[1] * (c.mean * c.mean + c.variance);
  if (!(a + b > 0.0)) {
    throw DegenerateError("endpoint \"" + e.name +
                          "\" has zero mean and dispersion in both arms");
  }
  const double s_t = a / (a + b);
  return {s_t, 1.0 - s_t, binary_entropy(s_t)};
}

ArmMoments vaccine_theoretical_moments(const VaccineTrial& t, const CountingMeasure& kappa) {
  const double c = kappa.mean();
  const double defect = kappa.defect();
  const double wt = t.group_weights[0];
  const double wc = t.group_weights[1];
  const double pt = t.prob_treatment();
  const double pc = t.prob_control();
  return {c * wt * pt + defect * wt * wt * pt * pt,
          c * wc * pc + defect * wc * wc * pc * pc,
          defect * wt * wc * pt * pc};
}

std::vector<CurveRow> uncertainty_curve(double step) {
  if (!(step > 0.0 && step <= 0.5)) {
    throw ValidationError("curve step must lie in (0, 0.5], got " + std::to_string(step));
  }
  std::vector<CurveRow> rows;
  for (std::int64_t i = 0;; ++i) {
    const double p = static_cast<double>(i) * step;
    if (p >= 1.0 - 1e-12) break;
    rows.push_back({p, 2.0 * std::min(p, 1.0 - p), binary_entropy(p)});
  }
  rows.push_back({1.0, 0.0, 0.0});
  return rows;
}

VaccineReport analyze_vaccine_trial(const VaccineTrial& t, std::int64_t reps,
                                    std::uint64_t seed) {
  const double eff = efficacy(t);
  const SensitivitySplit split = vaccine_sensitivity(t);
  RandomSource rng(seed);
  const VaccineCi ci = vaccine_ci(split.s_control, t.enrollees, reps, rng);
  return {eff,      risk_uncertainty(eff), split.s_treatment, split.s_control,
          split.h2, ci.s_control,          ci.h2};
}

}  // namespace rmsa
