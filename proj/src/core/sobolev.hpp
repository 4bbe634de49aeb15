// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/spectrum.hpp"

namespace waverate {

/// Lowest frequency a criterion must be able to reach.
inline constexpr double kCriterionResolution = 1e-4;

struct IntegralResult {
  double s = 0.0;
  double epsilon = 0.0;
  /// Signed integral; meaningful only when not diverged.
  double value = 0.0;
  /// Integral of the absolute integrand.
  double abs_value = 0.0;
  bool diverged = false;
  /// (halving step, cumulative absolute integral) from the outer shell inward.
  std::vector<std::pair<int, double>> refinement_trace;
  /// Absolute integral over each shell, outer first.
  std::vector<double> shell_sums;
  /// Fraction of sampled integrand values that are negative.
  double negative_fraction = 0.0;
};

/// int_{|xi| < eps} |F(xi)|^2 |xi|^-(2s+1) d xi over dyadic shells.
IntegralResult wavelet_criterion(const SampledSpectrum& spec, double s, double epsilon);
/// Same with integrand (2 pi |F(xi)|^2 - 1) |xi|^-(2s+1); integrability judged on the absolute value.
IntegralResult scaling_criterion(const SampledSpectrum& spec, double s, double epsilon);

enum class CriterionKind { wavelet, scaling };

const char* to_string(CriterionKind kind);

struct CriticalOrder {
  std::string family;
  CriterionKind kind = CriterionKind::wavelet;
  double epsilon = 1.0;
  double s_star = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  /// Finite everywhere in the search range.
  bool above_range = false;
  /// Diverged everywhere in the search range.
  bool below_range = false;
  std::vector<std::pair<double, bool>> verdicts;
};

/// Bisection on [lo, hi] over diverged verdicts until the bracket is at most `width` wide.
CriticalOrder critical_order(const SampledSpectrum& spec, CriterionKind kind, double epsilon, double lo = 0.1,
                             double hi = 8.0, double width = 0.05);
CriticalOrder critical_order(const MRAFamily& fam, CriterionKind kind = CriterionKind::wavelet, double epsilon = 1.0);

/// Shell layout used for family spectra.
ShellLayout default_shell_layout();

}  // namespace waverate
