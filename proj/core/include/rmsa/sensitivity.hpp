// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rmsa/measure.hpp"

namespace rmsa {

/// A disjoint partition of a measure's support into labeled cells.
class Partition {
 public:
  using Cell = std::pair<std::string, std::vector<std::string>>;

  /// Cell labels must be unique, members pairwise disjoint and nonempty.
  explicit Partition(std::vector<Cell> cells);
  Partition(std::initializer_list<Cell> cells) : Partition(std::vector<Cell>(cells)) {}

  static Partition singletons(const DiscreteMeasure& nu);
  static Partition single_cell(const DiscreteMeasure& nu, std::string label = "E");

  const std::vector<Cell>& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }

  /// Checks that the cells cover nu's support exactly; throws naming any
  /// missing or extraneous point.
  void validate_against(const DiscreteMeasure& nu) const;

 private:
  std::vector<Cell> cells_;
};

/// Variance of Nf split over a partition: per-cell variances plus
/// covariances between distinct cells. The identity
///   total = sum(cell variances) + 2 * sum(unordered pair covariances)
/// holds up to floating-point reassociation; total_variance is computed
/// independently from the unpartitioned f, so identity_residual() is a
/// genuine cross-check rather than zero by construction.
struct AnovaDecomposition {
  double total_variance = 0.0;
  std::map<std::string, double> cell_variances;
  std::map<std::pair<std::string, std::string>, double> pair_covariances;  // unordered pairs
  bool degenerate = false;  // total variance is zero

  double parts_total() const;
  double identity_residual() const;  // total_variance - parts_total()
};

AnovaDecomposition anova_decompose(const RandomMeasure& n, const MeasurableFn& f,
                                   const Partition& p);

/// Sign of the index-vector defect. Matches the correlation structure of
/// the counting law: Negative for under-dispersed kinds (structural sum
/// above one), Positive for over-dispersed ones, None when orthogonal.
enum class Defectiveness { None, Positive, Negative };

std::string_view defectiveness_name(Defectiveness d);

/// Structural (own-variance) and correlative (cross-covariance) sensitivity
/// indices per cell. The totals satisfy s_a_total + s_b_total = 1; for an
/// orthogonal counting law the structural indices form a probability vector
/// and every correlative index vanishes.
struct SensitivityReport {
  std::map<std::string, double> structural;
  std::map<std::string, double> correlative;
  double s_a_total = 0.0;
  double s_b_total = 0.0;
  Defectiveness defectiveness = Defectiveness::None;
};

/// Normalizes a decomposition into indices. Throws DegenerateError when the
/// total variance is zero.
SensitivityReport sensitivity_indices(const AnovaDecomposition& d);

/// A probability distribution of uncertainty over support points or cells:
/// nonnegative masses summing to one within 1e-12.
class SensitivityMeasure {
 public:
  explicit SensitivityMeasure(std::map<std::string, double> probs);

  const std::map<std::string, double>& probs() const noexcept { return probs_; }
  double mass(std::string_view label) const;
  double cell_mass(const std::vector<std::string>& members) const;

 private:
  std::map<std::string, double> probs_;
};

/// S(dx) = nu(dx) f^2(x) / nu(f^2). Throws DegenerateError when f vanishes
/// nu-almost-everywhere.
SensitivityMeasure sensitivity_measure(const DiscreteMeasure& nu, const MeasurableFn& f);

/// The structural index vector as a probability measure over cells. Only
/// valid for non-defective reports; throws ValidationError otherwise, which
/// is what keeps entropy away from defective vectors.
SensitivityMeasure structural_measure(const SensitivityReport& r);

/// Marginal of a sensitivity measure over a product support. Labels encode
/// coordinates joined by `separator` (e.g. "T|1"); `coords` lists the
/// 0-based coordinates to keep. Mass over the dropped coordinates is summed.
SensitivityMeasure marginal_sensitivity(const SensitivityMeasure& s,
                                        const std::vector<std::size_t>& coords,
                                        char separator = '|');

enum class EntropyBase { Natural, Binary };

/// H(S) = -sum S{x} log S{x} with the 0 log 0 = 0 convention; bounded by
/// log of the number of atoms.
double entropy(const SensitivityMeasure& s, EntropyBase base = EntropyBase::Natural);

/// Entropy of the cell masses S(A) for A in the partition.
double entropy(const SensitivityMeasure& s, const Partition& p,
               EntropyBase base = EntropyBase::Natural);

/// Shannon entropy of (p, 1-p) in bits; 0 at the endpoints, 1 at p = 1/2.
double binary_entropy(double p);

}  // namespace rmsa
