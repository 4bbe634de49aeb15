// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <vector>

#include "core/convergence.hpp"

namespace waverate {

inline constexpr int kMaxSplineOrder = 8;

/// B-splines of order k on knots window.left + i h, with k - 1 knots added
/// beyond the left end; basis function i is N_k((x - left) / h - i + k - 1)
/// restricted to the window.
struct SplineSpace {
  int order = 1;
  double mesh = 1.0;
  Window window;
  long basis_count = 0;

  static SplineSpace make(int order, double mesh, Window window);

  long cells() const noexcept { return basis_count - order + 1; }
  /// B_i(x); right-continuous, zero outside the window.
  double basis(long i, double x) const;
  double basis_left(long i, double x) const;
  /// Basis indices that are nonzero on knot cell c.
  long first_on_cell(long c) const noexcept { return c; }
  long last_on_cell(long c) const noexcept { return c + order - 1; }
};

/// G_ij = <B_i, B_j> over the window.
Eigen::SparseMatrix<double> gram_matrix(const SplineSpace& space);

struct SplineApproximation {
  SplineSpace space;
  Eigen::VectorXd coefficients;
  double residual_l2 = 0.0;
  /// max_i |<f - s, B_i>| / ||f||_2.
  double orthogonality_defect = 0.0;
  double condition_estimate = 0.0;

  double operator()(double x) const;
  double left_value(double x) const;
  /// Right values and left limits on xs.
  SampledFunction tabulate(const DyadicGrid& xs) const;
};

/// <f, B_i> for every basis function; knots must be nodes of the grid of f.
Eigen::VectorXd spline_load_vector(const SampledFunction& f, const SplineSpace& space);

SplineApproximation best_l2_spline(const SampledFunction& f, const SplineSpace& space);

struct OptimalityReport {
  int trials = 0;
  int strictly_worse = 0;
  /// Smallest ||f - s_delta||^2 - ||f - s||^2 over the trials.
  double min_increase = 0.0;
};

/// Random coefficient perturbations of Euclidean norm `magnitude` drawn from a seeded generator.
OptimalityReport perturbation_check(const SampledFunction& f, const SplineApproximation& approx, int trials = 20,
                                    double magnitude = 1e-3, std::uint64_t seed = 20260101);

/// Sup errors of best_l2_spline against -log2 h for halving meshes. The sup is
/// taken on `window` shrunk by order * meshes.front() at the grid level of f.
RateReport spline_convergence_study(const SampledFunction& f, int order, const std::vector<double>& meshes,
                                    Window window);
RateReport spline_convergence_study(const TestFunction& tf, int order, const std::vector<double>& meshes,
                                    Window window, int level = 0);

}  // namespace waverate
