// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/families.hpp"

namespace waverate {

/// P_j(x, y) = sum_k phi_jk(x) phi_jk(y) on xs x ys.
struct KernelEvaluation {
  std::string family;
  int j = 0;
  DyadicGrid xs;
  DyadicGrid ys;
  /// Rows follow xs, columns follow ys; right-continuous in both arguments.
  Eigen::MatrixXd values;
  /// Left limit in y; empty when phi is continuous.
  Eigen::MatrixXd left_values;

  double left_at(Eigen::Index ix, Eigen::Index iy) const {
    return left_values.size() == 0 ? values(ix, iy) : left_values(ix, iy);
  }
};

KernelEvaluation kernel_matrix(const MRAFamily& fam, int j, const DyadicGrid& xs, const DyadicGrid& ys);

/// Grids used for profiles at scale j: x in [0, 2^-j], y in [-64, 65] * 2^-j, both at level j + 6.
KernelEvaluation profile_kernel(const MRAFamily& fam, int j);

double kernel_value(const MRAFamily& fam, int j, double x, double y);
/// sum_{j_base <= j' < j} sum_k psi_j'k(x) psi_j'k(y) + sum_k phi_{j_base,k}(x) phi_{j_base,k}(y).
double kernel_value_dual(const MRAFamily& fam, int j, int j_base, double x, double y);

/// max |P(x, y) - P(y, x)| over a square kernel evaluation.
double symmetry_defect(const KernelEvaluation& ke);
/// Trapezoid integral over y of each row.
std::vector<double> row_integrals(const KernelEvaluation& ke);

struct RadialBound {
  /// u = 2^j |x - y| in rescaled units.
  std::vector<double> radii;
  std::vector<double> majorant;
  double constant = 0.0;
  /// 2 * (integral of the majorant over the sampled radii + tail).
  double l1_mass = 0.0;
  double tail = 0.0;
  double tail_fraction = 0.0;
  std::string tail_model;
  double tail_exponent = 0.0;

  bool finite() const noexcept;
};

/// Bucketed sup of |P_j(x, y)| / 2^j at each rescaled radius, monotonized from
/// the largest radius inward. xs and ys must share a level >= j.
RadialBound radial_profile(const KernelEvaluation& ke, double u_max = 64.0);

/// Profile of sum_{j - depth <= j' < j} sum_k |psi_j'k(x)| |psi_j'k(y)|, the
/// absolute-value wavelet sum; shown as a negative example.
RadialBound naive_profile(const MRAFamily& fam, int j, int depth);

struct BoundReport {
  std::vector<int> js;
  std::vector<RadialBound> profiles;
  RadialBound envelope;
  /// max over j of sup_u |M_j(u) - H(u)| / H(0).
  double collapse_defect = 0.0;
  bool passed = false;
};

BoundReport verify_convolution_bound(const MRAFamily& fam, std::span<const int> js);

enum class DecayModel { exponential, algebraic };

struct DecayFit {
  DecayModel model = DecayModel::exponential;
  double constant = 0.0;
  /// a for the exponential model C e^{-a u / 2}, N for C_N / (1 + u)^N.
  double rate = 0.0;
  double r_squared = 0.0;
  int points = 0;
  double u_lo = 0.0;
  double u_hi = 0.0;
  /// Set when the fitted decay is nonpositive (model mismatch).
  bool flagged = false;
};

struct RadiusRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// Exponential: least squares of log M = log C - a u / 2 past the plateau.
/// Algebraic: C_N for the given exponent N, quality measured in log space.
DecayFit fit_decay(const RadialBound& rb, DecayModel model, double exponent = 1.0,
                   std::optional<RadiusRange> range = std::nullopt);

}  // namespace waverate
