// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <vector>

namespace waverate {

/// Lowpass/highpass refinement coefficients of an orthonormal MRA.
/// lowpass[i] is h_{offset+i}; highpass uses the same index range with
/// g_{offset+i} = (-1)^i h_{offset+M-1-i}.
struct FilterPair {
  std::vector<double> lowpass;
  std::vector<double> highpass;
  long offset = 0;

  /// Builds the conjugate-mirror highpass. An odd-length lowpass is padded
  /// with a trailing zero so the mirror keeps the orthogonality parity.
  static FilterPair from_lowpass(std::vector<double> lowpass, long offset);

  long size() const noexcept { return static_cast<long>(lowpass.size()); }
  long first() const noexcept { return offset; }
  long last() const noexcept { return offset + size() - 1; }
  double h(long n) const noexcept {
    return (n < first() || n > last()) ? 0.0 : lowpass[static_cast<std::size_t>(n - offset)];
  }
  double g(long n) const noexcept {
    return (n < first() || n > last()) ? 0.0 : highpass[static_cast<std::size_t>(n - offset)];
  }

  /// |sum h - sqrt(2)|.
  double sum_defect() const;
  /// max over m of |sum_k h_k h_{k+2m} - delta_{m,0}|.
  double orthonormality_defect() const;
  /// max over m of |sum_k h_k g_{k+2m}|.
  double mirror_defect() const;
  /// Throws ConfigError when either defect exceeds tol.
  void validate(double tol = 1e-12) const;
};

/// Daubechies extremal-phase lowpass with N vanishing moments (N = 1..10),
/// obtained by spectral factorization of the half-band product filter.
std::vector<double> daubechies_lowpass(int vanishing_moments);

/// Inner products <N_k, N_k(. - n)> for n = -(k-1)..k-1 (index n + k - 1).
std::vector<double> bspline_gram_sequence(int order);

/// Orthonormalization data of the order-k cardinal B-spline.
struct SplineOrthonormalizer {
  int order = 0;
  /// phi(x) = sum_n c_n N_k(x - n), n = coeff_offset + i.
  std::vector<double> coefficients;
  long coeff_offset = 0;
  /// Refinement lowpass h_n, n = filter_offset + i.
  std::vector<double> lowpass;
  long filter_offset = 0;
  /// Geometric decay rate of |c_n| (per unit of n).
  double decay_rate = 0.0;
};

/// Battle-Lemarie construction: the symbol sum_m |N_k^(xi + 2 pi m)|^2 is
/// evaluated exactly through the Gram sequence, its inverse square root is
/// sampled on `spectral_points` frequencies and inverse-transformed.
SplineOrthonormalizer orthonormalize_bspline(int order, int spectral_points = 1 << 14,
                                             double truncation = 1e-13);

}  // namespace waverate
