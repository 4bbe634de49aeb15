// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <span>

namespace waverate {

/// Ordinary least-squares line y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

/// Needs at least two distinct abscissae. r_squared is clamped to [0, 1];
/// a perfectly flat response reports r_squared = 1.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace waverate
