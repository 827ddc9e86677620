// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rmsa/counting.hpp"

namespace rmsa {

/// A two-arm vaccine trial summarized by enrollment and case counts.
/// Group weights are (nu{T}, nu{C}); both must be positive and sum to one.
struct VaccineTrial {
  VaccineTrial(std::int64_t enrollees, std::int64_t cases_treatment, std::int64_t cases_control,
               std::array<double, 2> group_weights = {0.5, 0.5});

  std::int64_t enrollees;
  std::int64_t cases_treatment;
  std::int64_t cases_control;
  std::array<double, 2> group_weights;

  /// Infection probability estimates with arm denominators n * nu{arm}.
  double prob_treatment() const;
  double prob_control() const;
};

// Published dispersion of an arm: a 95% confidence interval or a standard
// deviation.
struct Ci95 {
  double lower;
  double upper;
};
struct Sd {
  double value;
};

struct GroupStat {
  double mean;
  std::variant<Ci95, Sd> dispersion;
};

struct EndpointRecord {
  std::string name;
  GroupStat treatment;
  GroupStat control;
};

/// How a 95% CI is turned into a variance. Normal392 reads the half-width as
/// 1.96 standard errors (sd = width / 3.92, squared); QuarterWidth takes
/// width / 4 as the variance directly.
enum class DispersionRule { Normal392, QuarterWidth };

std::string_view dispersion_rule_name(DispersionRule r);
DispersionRule dispersion_rule_from_name(std::string_view name);

struct GroupMoments {
  double mean;
  double variance;
};

/// (mean, delta^2) of an arm under the given rule. An SD entry is squared
/// under either rule.
GroupMoments dispersion_to_variance(const GroupStat& g,
                                    DispersionRule rule = DispersionRule::Normal392);

/// Eff = 1 - P(T)/P(C). Throws DegenerateError when the control arm has no
/// cases.
double efficacy(const VaccineTrial& t);

/// Unc(eff) = 2 min(1 - eff, eff); requires eff in [0, 1] and refuses to
/// clamp values outside it.
double risk_uncertainty(double eff);

struct SensitivitySplit {
  double s_treatment;
  double s_control;
  double h2;  // binary entropy of the split
};

/// Sensitivity probabilities of the infection-indicator measure. With arm
/// denominators the weights cancel and s_control reduces to the case-count
/// ratio. Throws DegenerateError when neither arm has cases.
SensitivitySplit vaccine_sensitivity(const VaccineTrial& t);

struct Interval {
  double lower;
  double upper;
};

struct VaccineCi {
  Interval s_control;
  Interval h2;
};

/// 95% Monte Carlo confidence intervals for the control-arm sensitivity and
/// its binary entropy: per replicate K ~ Poisson(n) (redrawn on K = 0),
/// successes ~ Binomial(K, s_control), then empirical 2.5% / 97.5% quantiles
/// with linear interpolation between order statistics. Requires reps >= 100;
/// deterministic given the random source state.
VaccineCi vaccine_ci(double s_control, std::int64_t enrollees, std::int64_t reps,
                     RandomSource& rng);

/// Eq.-style sensitivity of a clinical endpoint from per-arm summaries:
/// s_T = w_T (c_T^2 + d_T^2) / (w_T (c_T^2 + d_T^2) + w_C (c_C^2 + d_C^2)).
SensitivitySplit endpoint_sensitivity(const EndpointRecord& e,
                                      std::array<double, 2> weights = {0.5, 0.5},
                                      DispersionRule rule = DispersionRule::Normal392);

struct ArmMoments {
  double var_treatment;
  double var_control;
  double cov;
};

/// Plug-in variance/covariance of the arm counts under a given counting law:
/// Var Mf_T = c w_T P(T) + (d^2 - c) w_T^2 P(T)^2 and
/// Cov = (d^2 - c) w_T w_C P(T) P(C). Zero covariance for orthogonal laws.
ArmMoments vaccine_theoretical_moments(const VaccineTrial& t, const CountingMeasure& kappa);

struct CurveRow {
  double p;
  double unc;
  double h2;
};

/// Grid of (p, Unc(p), H2(p)) for p = 0, step, ..., 1. H2 dominates Unc
/// everywhere, with equality exactly at 0, 1/2 and 1.
std::vector<CurveRow> uncertainty_curve(double step);

struct VaccineReport {
  double eff;
  double unc;
  double s_treatment;
  double s_control;
  double h2;
  Interval ci_s_control;
  Interval ci_h2;
};

/// Full analysis: efficacy, risk uncertainty, sensitivity split with
/// entropy, and both Monte Carlo intervals from a fresh source seeded with
/// `seed`.
VaccineReport analyze_vaccine_trial(const VaccineTrial& t, std::int64_t reps, std::uint64_t seed);

}  // namespace rmsa
