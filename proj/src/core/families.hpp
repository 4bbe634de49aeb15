// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <optional>
#include <string>

#include "core/filters.hpp"
#include "core/grid.hpp"

namespace waverate {

enum class FamilyKind { haar, daubechies, battle_lemarie, shannon };

const char* to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& name);

/// Sampling level used when none is requested; WAVERATE_GRID_LEVEL overrides it.
int default_grid_level();

struct MRAFamily {
  std::string name;
  FamilyKind kind = FamilyKind::haar;
  int param = 0;
  int level = 0;
  std::optional<FilterPair> filter;
  SampledFunction phi;
  SampledFunction psi;
  int vanishing_moments = 1;
  DecayHint decay_class;

  /// "name:param" for parametrized families, "name" otherwise.
  std::string id() const;
};

struct InvariantReport {
  double phi_integral_defect = 0.0;
  double psi_integral_defect = 0.0;
  double partition_defect = 0.0;
  double orthonormality_defect = 0.0;
  double integral_tolerance = 1e-8;
  double partition_tolerance = 1e-6;
  double orthonormality_tolerance = 1e-6;

  bool passed() const noexcept {
    return phi_integral_defect <= integral_tolerance && psi_integral_defect <= integral_tolerance &&
           partition_defect <= partition_tolerance && orthonormality_defect <= orthonormality_tolerance;
  }
};

/// Evaluates the four defining invariants of a family on its sampling grid.
InvariantReport check_invariants(const MRAFamily& fam);

/// Builds a family and verifies its invariants (ComputeError on failure).
/// level <= 0 selects default_grid_level().
MRAFamily make_family(const std::string& name, int param, int level = 0);
MRAFamily make_family(FamilyKind kind, int param, int level = 0);

/// Parses "name" or "name:param".
MRAFamily make_family_from_spec(const std::string& spec, int level = 0);

struct CascadeStats {
  int iterations = 0;
  double residual = 0.0;
};

/// Fixed point of phi(x) = sqrt(2) sum_k h_k phi(2x - k) on the level-`level`
/// grid over the filter support, started from the indicator of [0, 1).
/// Throws ComputeError when the sup-norm step stays above tol.
SampledFunction cascade_scaling(const FilterPair& filter, int iterations, int level, double tol = 1e-9,
                                CascadeStats* stats = nullptr);

/// psi(x) = sqrt(2) sum_k g_k phi(2x - k), tabulated at the level of phi.
SampledFunction derive_wavelet(const FilterPair& filter, const SampledFunction& phi);

/// 2^{j/2} f(2^j x - k), right-continuous.
inline double evaluate_dilate(const SampledFunction& f, int j, long k, double x) {
  return f(std::ldexp(x, j) - static_cast<double>(k)) * std::exp2(0.5 * j);
}

/// Left limit of 2^{j/2} f(2^j x - k).
inline double evaluate_dilate_left(const SampledFunction& f, int j, long k, double x) {
  return f.left_value(std::ldexp(x, j) - static_cast<double>(k)) * std::exp2(0.5 * j);
}

}  // namespace waverate
