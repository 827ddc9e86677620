// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "rmsa/rct.hpp"
#include "rmsa/sensitivity.hpp"

namespace rmsa {

/// Shortest round-trip decimal form of a double ("full precision").
std::string format_double(double value);

/// Half-even rounding at `digits` decimals, then fixed formatting.
std::string format_rounded(double value, int digits);

/// Reads endpoint records from CSV with the header
///   name,t_mean,t_lo,t_hi,t_sd,c_mean,c_lo,c_hi,c_sd
/// Exactly one of (lo, hi) or sd must be populated per arm; blank means
/// absent. Diagnostics name the offending row. Quoted fields are supported.
std::vector<EndpointRecord> endpoints_from_csv(std::istream& in);
std::vector<EndpointRecord> endpoints_from_csv(const std::string& text);

std::string endpoints_to_csv(const std::vector<EndpointRecord>& records);

/// Output table with columns name,s_T,s_C,h2 rounded half-even to three
/// decimals plus full-precision columns s_T_full,s_C_full,h2_full.
std::string endpoints_table_csv(const std::vector<EndpointRecord>& records,
                                std::array<double, 2> weights = {0.5, 0.5},
                                DispersionRule rule = DispersionRule::Normal392);

/// Per-cell index table with columns cell,S_a,S_b,S_prob,entropy_contrib.
/// S_prob and entropy_contrib (in bits) are populated only when the indices
/// form a probability vector; for defective reports those columns are blank.
std::string sensitivity_csv(const SensitivityReport& report);

/// Curve rows as CSV with header p,unc,h2.
std::string curve_csv(const std::vector<CurveRow>& rows);

}  // namespace rmsa
