// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "core/families.hpp"

namespace waverate {

using Complex = std::complex<double>;

/// Geometric shells [eps_max 2^-(m+1), eps_max 2^-m], m = 0..count-1, each
/// split into `per_shell` uniform subintervals.
struct ShellLayout {
  double epsilon_max = 2.0;
  double xi_min = 1e-4;
  int per_shell = 32;

  int count() const;
  /// Positive abscissae in ascending order, count() * per_shell + 1 points.
  std::vector<double> positive_points() const;
};

/// Unitary convention F(xi) = (2 pi)^{-1/2} int f(x) e^{-i xi x} dx.
struct SampledSpectrum {
  /// Ascending and symmetric about 0.
  std::vector<double> xi;
  std::vector<Complex> values;
  /// 1 - 2 pi |F(xi)|^2 when known without cancellation (scaling functions only).
  std::vector<double> unit_defect;
  /// Set when xi is a uniform grid.
  bool uniform = true;

  static const char* convention() noexcept;
  /// Trapezoid integral of |F|^2 over xi.
  double energy() const;
  /// max |F(-xi) - conj F(xi)|.
  double hermitian_defect() const;
};

/// Exact transform of the piecewise-linear interpolant (with its jumps) at the given frequencies.
std::vector<Complex> continuous_transform(const SampledFunction& f, std::span<const double> xi);

/// Zero-padded FFT of the samples with phase and interpolation correction.
/// pad_factor >= 4; a positive xi_max restricts the output band and must not
/// exceed the Nyquist frequency pi / h.
SampledSpectrum fourier_transform(const SampledFunction& f, int pad_factor, double xi_max = 0.0);

/// Direct transform on the symmetric grid xi = i * xi_max / half_points, |i| <= half_points.
SampledSpectrum fourier_zoom(const SampledFunction& f, double xi_max, int half_points);

/// Direct transform on shell points and their mirror images.
SampledSpectrum shell_spectrum(const SampledFunction& f, const ShellLayout& layout);

/// psi^ of a family on shell points (closed form for Shannon).
SampledSpectrum wavelet_shell_spectrum(const MRAFamily& fam, const ShellLayout& layout);

/// phi^ of a family on shell points from the infinite product of its lowpass
/// symbol, with 1 - 2 pi |phi^|^2 accumulated as -expm1(sum log1p(-|m0(xi/2^j + pi)|^2)).
SampledSpectrum scaling_shell_spectrum(const MRAFamily& fam, const ShellLayout& layout);

}  // namespace waverate
