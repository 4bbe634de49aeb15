// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <array>
#include <cmath>

namespace waverate {

/// Cardinal B-spline N_k of order k (degree k-1) supported on [0, k].
/// N_1 is the right-continuous indicator of [0, 1).
inline double cardinal_bspline(int k, double t) {
  if (!(t >= 0.0) || t >= static_cast<double>(k)) return 0.0;
  // Cox-de Boor on integer knots; orders above 16 are never requested.
  std::array<double, 17> n{};
  const int cell = static_cast<int>(std::floor(t));
  for (int i = 0; i < k; ++i) n[i] = (i == cell) ? 1.0 : 0.0;
  for (int order = 2; order <= k; ++order) {
    for (int i = 0; i + order <= k; ++i) {
      const double left = (t - i) * n[i];
      const double right = (i + order - t) * n[i + 1];
      n[i] = (left + right) / (order - 1);
    }
  }
  return n[0];
}

/// Left limit of N_k at t (differs from N_k only for k = 1 at t = 1).
inline double cardinal_bspline_left(int k, double t) {
  if (k == 1) return (t > 0.0 && t <= 1.0) ? 1.0 : 0.0;
  return cardinal_bspline(k, t);
}

}  // namespace waverate
