// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "rmsa/counting.hpp"
#include "rmsa/measure.hpp"
#include "rmsa/rct.hpp"
#include "rmsa/sensitivity.hpp"

namespace rmsa {

// JSON forms of the domain types. Parsers throw ParseError on malformed
// text (with the parser's byte position) and ValidationError on well-formed
// input that violates a contract, naming the offending key or value.
//
// Counting measures: {"kind": "poisson", "c": 3.5} with lowercase
// snake_case kinds: dirac{c}, binomial{n,p}, poisson{c},
// orthogonal_die{m,n}, negative_binomial{r,p}, zeta{s}.
CountingMeasure counting_from_json(const std::string& text);
std::string to_json(const CountingMeasure& k);

// Discrete measures and functions are objects keyed by point label:
// {"C": 0.5, "T": 0.5}. Insertion order of the keys is preserved.
DiscreteMeasure measure_from_json(const std::string& text);
std::string to_json(const DiscreteMeasure& nu);

MeasurableFn fn_from_json(const std::string& text);
std::string to_json(const MeasurableFn& f);

// Kernels: {"T": {"bernoulli": {"p": 0.1}},
//           "C": {"moment_only": {"mean": 5.22, "variance": 0.41}},
//           "X": {"empirical": {"draws": [1.0, 2.0]}}}
Kernel kernel_from_json(const std::string& text);
std::string to_json(const Kernel& q);

// Random measures: {"kappa": {...}, "nu": {...}}.
RandomMeasure random_measure_from_json(const std::string& text);
std::string to_json(const RandomMeasure& n);

// Partitions: {"cell": ["point", ...], ...}.
Partition partition_from_json(const std::string& text);
std::string to_json(const Partition& p);

// Vaccine trials: {"enrollees": 30400, "cases_treatment": 5,
//                  "cases_control": 90, "weights": [0.5, 0.5]}
// with "weights" optional (default equal).
VaccineTrial vaccine_trial_from_json(const std::string& text);
std::string to_json(const VaccineTrial& t);

/// Report JSON mirroring VaccineReport, plus the seed/reps provenance.
std::string vaccine_report_json(const VaccineReport& r, std::uint64_t seed, std::int64_t reps);

// Decompositions and index reports serialize with cell labels as keys;
// pair covariances carry the two cell labels per entry. The decomposition
// includes its identity residual as a self-check field.
std::string to_json(const AnovaDecomposition& d);
std::string to_json(const SensitivityReport& r);

}  // namespace rmsa
