// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsa/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "rmsa/errors.hpp"

namespace rmsa {

namespace {

constexpr double kProbSumTol = 1e-12;
constexpr double kDefectTol = 1e-12;

std::vector<std::string> split_label(const std::string& label, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : label) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

}  // namespace

Partition::Partition(std::vector<Cell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) {
    throw ValidationError("a partition needs at least one cell");
  }
  std::set<std::string> cell_labels;
  std::set<std::string> members;
  for (const auto& [label, pts] : cells_) {
    if (!cell_labels.insert(label).second) {
      throw ValidationError("duplicate partition cell \"" + label + "\"");
    }
    if (pts.empty()) {
      throw ValidationError("partition cell \"" + label + "\" is empty");
    }
    for (const auto& p : pts) {
      if (!members.insert(p).second) {
        throw ValidationError("point \"" + p + "\" appears in more than one cell");
      }
    }
  }
}

Partition Partition::singletons(const DiscreteMeasure& nu) {
  std::vector<Cell> cells;
  cells.reserve(nu.size());
  for (const auto& p : nu.points()) cells.push_back({p, {p}});
  return Partition(std::move(cells));
}

Partition Partition::single_cell(const DiscreteMeasure& nu, std::string label) {
  return Partition({{std::move(label), nu.points()}});
}

void Partition::validate_against(const DiscreteMeasure& nu) const {
  std::set<std::string> covered;
  for (const auto& [label, pts] : cells_) {
    for (const auto& p : pts) {
      if (!nu.contains(p)) {
        throw ValidationError("partition cell \"" + label + "\" names point \"" + p +
                              "\" outside the measure's support");
      }
      covered.insert(p);
    }
  }
  for (const auto& p : nu.points()) {
    if (covered.find(p) == covered.end()) {
      throw ValidationError("partition does not cover support point \"" + p + "\"");
    }
  }
}

double AnovaDecomposition::parts_total() const {
  double s = 0.0;
  for (const auto& [cell, v] : cell_variances) s += v;
  for (const auto& [pair, c] : pair_covariances) s += 2.0 * c;
  return s;
}

double AnovaDecomposition::identity_residual() const { return total_variance - parts_total(); }

AnovaDecomposition anova_decompose(const RandomMeasure& n, const MeasurableFn& f,
                                   const Partition& p) {
  p.validate_against(n.nu);

  const double c = n.kappa.mean();
  const double defect = n.kappa.defect();

  // Per-cell restricted integrals nu(f 1_D) and nu(f^2 1_D).
  std::vector<double> nu_f(p.size(), 0.0), nu_f2(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (const auto& point : p.cells()[i].second) {
      const double w = n.nu.weight(point);
      const double v = f.at(point);
      nu_f[i] += w * v;
      nu_f2[i] += w * (v * v);
    }
  }

  AnovaDecomposition out;
  out.total_variance = var_nf(n, f);
  out.degenerate = !(out.total_variance > 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.cell_variances[p.cells()[i].first] = c * nu_f2[i] + defect * (nu_f[i] * nu_f[i]);
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      out.pair_covariances[{p.cells()[i].first, p.cells()[j].first}] =
          defect * (nu_f[i] * nu_f[j]);
    }
  }
  return out;
}

std::string_view defectiveness_name(Defectiveness d) {
  switch (d) {
    case Defectiveness::None:
      return "none";
    case Defectiveness::Positive:
      return "positive";
    case Defectiveness::Negative:
      return "negative";
  }
  return "unknown";
}

SensitivityReport sensitivity_indices(const AnovaDecomposition& d) {
  if (d.degenerate || !(d.total_variance > 0.0)) {
    throw DegenerateError("cannot normalize sensitivity indices: total variance is zero");
  }
  SensitivityReport r;
  for (const auto& [cell, v] : d.cell_variances) {
    r.structural[cell] = v / d.total_variance;
    r.correlative[cell] = 0.0;
    r.s_a_total += v / d.total_variance;
  }
  for (const auto& [pair, cov] : d.pair_covariances) {
    const double share = cov / d.total_variance;
    r.correlative[pair.first] += share;
    r.correlative[pair.second] += share;
  }
  for (const auto& [cell, v] : r.correlative) r.s_b_total += v;

  if (r.s_b_total < -kDefectTol) {
    r.defectiveness = Defectiveness::Negative;
  } else if (r.s_b_total > kDefectTol) {
    r.defectiveness = Defectiveness::Positive;
  } else {
    r.defectiveness = Defectiveness::None;
  }
  return r;
}

SensitivityMeasure::SensitivityMeasure(std::map<std::string, double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw ValidationError("a sensitivity measure needs at least one atom");
  }
  double sum = 0.0;
  for (const auto& [label, p] : probs_) {
    if (!(p >= 0.0)) {
      throw ValidationError("negative sensitivity mass at \"" + label + "\"");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTol) {
    throw ValidationError("sensitivity masses sum to " + std::to_string(sum) +
                          ", expected 1 within 1e-12");
  }
}

double SensitivityMeasure::mass(std::string_view label) const {
  const auto it = probs_.find(std::string(label));
  if (it == probs_.end()) {
    throw ValidationError("unknown sensitivity atom \"" + std::string(label) + "\"");
  }
  return it->second;
}

double SensitivityMeasure::cell_mass(const std::vector<std::string>& members) const {
  double s = 0.0;
  for (const auto& m : members) s += mass(m);
  return s;
}

SensitivityMeasure sensitivity_measure(const DiscreteMeasure& nu, const MeasurableFn& f) {
  double nu_f2 = 0.0;
  std::map<std::string, double> masses;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const double v = f.at(nu.points()[i]);
    const double m = nu.weights()[i] * v * v;
    masses[nu.points()[i]] = m;
    nu_f2 += m;
  }
  if (!(nu_f2 > 0.0)) {
    throw DegenerateError(
        "sensitivity measure undefined: f vanishes nu-almost-everywhere (nu(f^2) = 0)");
  }
  for (auto& [label, m] : masses) m /= nu_f2;
  return SensitivityMeasure(std::move(masses));
}

SensitivityMeasure structural_measure(const SensitivityReport& r) {
  if (r.defectiveness != Defectiveness::None) {
    throw ValidationError(
        "structural indices are " + std::string(defectiveness_name(r.defectiveness)) +
        "ly defective and do not form a probability vector");
  }
  return SensitivityMeasure(r.structural);
}

SensitivityMeasure marginal_sensitivity(const SensitivityMeasure& s,
                                        const std::vector<std::size_t>& coords, char separator) {
  if (coords.empty()) {
    throw ValidationError("marginal_sensitivity needs a nonempty coordinate subset");
  }

  std::size_t arity = 0;
  std::map<std::string, double> projected;
  std::vector<std::size_t> u(coords);
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());

  for (const auto& [label, mass] : s.probs()) {
    const auto parts = split_label(label, separator);
    if (arity == 0) {
      arity = parts.size();
      if (u.back() >= arity) {
        throw ValidationError("coordinate index " + std::to_string(u.back()) +
                              " out of range for arity " + std::to_string(arity));
      }
    } else if (parts.size() != arity) {
      throw ValidationError("support label \"" + label +
                            "\" does not match the product arity " + std::to_string(arity));
    }
    std::string key;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (i > 0) key.push_back(separator);
      key += parts[u[i]];
    }
    projected[key] += mass;
  }
  if (u.size() == arity) return s;  // identity projection
  return SensitivityMeasure(std::move(projected));
}

namespace {

double entropy_of_masses(const std::vector<double>& masses, EntropyBase base) {
  double h = 0.0;
  for (double m : masses) {
    if (m > 0.0) h -= m * std::log(m);
  }
  if (base == EntropyBase::Binary) h /= std::log(2.0);
  // Guard against -0.0 from rounding of a degenerate vector.
  return h <= 0.0 ? 0.0 : h;
}

}  // namespace

double entropy(const SensitivityMeasure& s, EntropyBase base) {
  std::vector<double> masses;
  masses.reserve(s.probs().size());
  for (const auto& [label, m] : s.probs()) masses.push_back(m);
  return entropy_of_masses(masses, base);
}

double entropy(const SensitivityMeasure& s, const Partition& p, EntropyBase base) {
  std::set<std::string> covered;
  std::vector<double> masses;
  masses.reserve(p.size());
  for (const auto& [label, members] : p.cells()) {
    double cell = 0.0;
    for (const auto& m : members) {
      cell += s.mass(m);  // throws on unknown atoms
      covered.insert(m);
    }
    masses.push_back(cell);
  }
  for (const auto& [atom, mass] : s.probs()) {
    if (covered.find(atom) == covered.end()) {
      throw ValidationError("partition does not cover sensitivity atom \"" + atom + "\"");
    }
  }
  return entropy_of_masses(masses, base);
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("binary_entropy needs p in [0, 1], got " + std::to_string(p));
  }
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h <= 0.0 ? 0.0 : h;
}

}  // namespace rmsa
