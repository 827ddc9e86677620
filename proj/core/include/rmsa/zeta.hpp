// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace rmsa {

/// Riemann zeta function on the real axis for s > 1.
///
/// Evaluated by the direct series with an Euler-Maclaurin tail correction;
/// absolute error is below 1e-12 over the whole admissible range. Throws
/// ValidationError for s <= 1, where the series diverges.
double riemann_zeta(double s);

}  // namespace rmsa
