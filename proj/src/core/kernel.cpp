// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#include "core/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/regression.hpp"

namespace waverate {

namespace {

struct Basis {
  Eigen::MatrixXd right;
  Eigen::MatrixXd left;
};

/// Columns are g_jk for k in [k0, k1], rows are the nodes of the grid.
Basis basis_matrix(const SampledFunction& g, int j, const DyadicGrid& grid, long k0, long k1, bool absolute,
                   bool with_left) {
  const auto n = static_cast<Eigen::Index>(grid.count());
  const auto m = static_cast<Eigen::Index>(std::max(0L, k1 - k0 + 1));
  Basis b;
  b.right = Eigen::MatrixXd::Zero(n, m);
  if (with_left) b.left = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    const long k = k0 + c;
    const double lo = std::ldexp(g.grid().left + static_cast<double>(k), -j);
    const double hi = std::ldexp(g.grid().right + static_cast<double>(k), -j);
    const double p0 = std::max(0.0, std::ceil(grid.position(lo)));
    const double p1 = std::min(static_cast<double>(n - 1), std::floor(grid.position(hi)));
    for (double p = p0; p <= p1; p += 1.0) {
      const auto i = static_cast<Eigen::Index>(p);
      const double x = grid.at(static_cast<std::size_t>(i));
      double v = evaluate_dilate(g, j, k, x);
      b.right(i, c) = absolute ? std::abs(v) : v;
      if (with_left) {
        v = evaluate_dilate_left(g, j, k, x);
        b.left(i, c) = absolute ? std::abs(v) : v;
      }
    }
  }
  return b;
}

/// Translates whose support meets the closed interval [a, b].
std::pair<long, long> closed_range(const SampledFunction& g, int j, double a, double b) {
  return {static_cast<long>(std::floor(std::ldexp(a, j) - g.grid().right)),
          static_cast<long>(std::ceil(std::ldexp(b, j) - g.grid().left))};
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
  return s;
}

/// Tail beyond the last radius from exponential and free-exponent power fits on its upper half.
void estimate_tail(RadialBound& rb) {
  const double u_max = rb.radii.back();
  const double m_end = rb.majorant.back();
  rb.tail = 0.0;
  rb.tail_model = "none";
  rb.tail_exponent = 0.0;
  if (!(m_end > 1e-12 * rb.constant)) return;
  std::vector<double> u, lu, lm;
  for (std::size_t i = 0; i < rb.radii.size(); ++i) {
    if (rb.radii[i] >= 0.5 * u_max && rb.majorant[i] > 0.0) {
      u.push_back(rb.radii[i]);
      lu.push_back(std::log(rb.radii[i]));
      lm.push_back(std::log(rb.majorant[i]));
    }
  }
  if (u.size() < 2) {
    rb.tail = std::numeric_limits<double>::infinity();
    rb.tail_model = "unresolved";
    return;
  }
  const LineFit fe = fit_line(u, lm);
  const LineFit fa = fit_line(lu, lm);
  if (fe.r_squared >= fa.r_squared) {
    const double b = -fe.slope;
    rb.tail_model = "exponential";
    rb.tail_exponent = b;
    rb.tail = b > 0.0 ? m_end / b : std::numeric_limits<double>::infinity();
  } else {
    const double n = -fa.slope;
    rb.tail_model = "algebraic";
    rb.tail_exponent = n;
    rb.tail = n > 1.0 ? m_end * u_max / (n - 1.0) : std::numeric_limits<double>::infinity();
  }
}

void finish_bound(RadialBound& rb) {
  for (std::size_t i = rb.majorant.size(); i-- > 1;)
    rb.majorant[i - 1] = std::max(rb.majorant[i - 1], rb.majorant[i]);
  rb.constant = rb.majorant.empty() ? 0.0 : rb.majorant.front();
  estimate_tail(rb);
  const double body = trapezoid(rb.radii, rb.majorant);
  rb.l1_mass = 2.0 * (body + rb.tail);
  rb.tail_fraction = std::isfinite(rb.tail) ? (body + rb.tail > 0.0 ? rb.tail / (body + rb.tail) : 0.0)
                                            : std::numeric_limits<double>::infinity();
}

RadialBound bucket_profile(const Eigen::MatrixXd& values, const DyadicGrid& xs, const DyadicGrid& ys, int j,
                           double u_max) {
  if (xs.level != ys.level) throw ConfigError("kernel grids must share a level for a radial profile");
  if (xs.level < j) throw ConfigError("kernel grid level must be at least j");
  const double h = xs.spacing();
  const double shift = (xs.left - ys.left) / h;
  if (shift != std::nearbyint(shift)) throw ConfigError("kernel grids are not aligned");
  const long offset = std::lround(shift);
  const double unit = std::ldexp(1.0, j - xs.level);
  const long buckets = static_cast<long>(std::floor(u_max / unit));
  RadialBound rb;
  rb.radii.resize(static_cast<std::size_t>(buckets + 1));
  rb.majorant.assign(static_cast<std::size_t>(buckets + 1), 0.0);
  for (long b = 0; b <= buckets; ++b) rb.radii[static_cast<std::size_t>(b)] = static_cast<double>(b) * unit;
  const double norm = std::ldexp(1.0, -j);
  for (Eigen::Index ix = 0; ix < values.rows(); ++ix) {
    for (Eigen::Index iy = 0; iy < values.cols(); ++iy) {
      const long b = std::labs(offset + static_cast<long>(ix) - static_cast<long>(iy));
      if (b > buckets) continue;
      double& m = rb.majorant[static_cast<std::size_t>(b)];
      m = std::max(m, std::abs(values(ix, iy)) * norm);
    }
  }
  return rb;
}

}  // namespace

bool RadialBound::finite() const noexcept { return std::isfinite(tail) && tail_fraction < 0.1; }

KernelEvaluation kernel_matrix(const MRAFamily& fam, int j, const DyadicGrid& xs, const DyadicGrid& ys) {
  const auto [a0, a1] = closed_range(fam.phi, j, xs.left, xs.right);
  const auto [b0, b1] = closed_range(fam.phi, j, ys.left, ys.right);
  const long k0 = std::max(a0, b0);
  const long k1 = std::min(a1, b1);
  const bool jumps = fam.phi.has_jumps();
  KernelEvaluation ke;
  ke.family = fam.id();
  ke.j = j;
  ke.xs = xs;
  ke.ys = ys;
  if (k1 < k0) {
    ke.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(xs.count()), static_cast<Eigen::Index>(ys.count()));
    return ke;
  }
  const Basis bx = basis_matrix(fam.phi, j, xs, k0, k1, false, false);
  const Basis by = basis_matrix(fam.phi, j, ys, k0, k1, false, jumps);
  ke.values = bx.right * by.right.transpose();
  if (jumps) ke.left_values = bx.right * by.left.transpose();
  return ke;
}

KernelEvaluation profile_kernel(const MRAFamily& fam, int j) {
  const int level = j + 6;
  if (level < 0) throw ConfigError("profile scale too coarse");
  const double unit = std::ldexp(1.0, -j);
  return kernel_matrix(fam, j, DyadicGrid::over(0.0, unit, level), DyadicGrid::over(-64.0 * unit, 65.0 * unit, level));
}

double kernel_value(const MRAFamily& fam, int j, double x, double y) {
  const auto [k0, k1] = closed_range(fam.phi, j, std::min(x, y), std::max(x, y));
  double s = 0.0;
  for (long k = k0; k <= k1; ++k) s += evaluate_dilate(fam.phi, j, k, x) * evaluate_dilate(fam.phi, j, k, y);
  return s;
}

double kernel_value_dual(const MRAFamily& fam, int j, int j_base, double x, double y) {
  double s = kernel_value(fam, j_base, x, y);
  for (int jj = j_base; jj < j; ++jj) {
    const auto [k0, k1] = closed_range(fam.psi, jj, std::min(x, y), std::max(x, y));
    for (long k = k0; k <= k1; ++k) s += evaluate_dilate(fam.psi, jj, k, x) * evaluate_dilate(fam.psi, jj, k, y);
  }
  return s;
}

double symmetry_defect(const KernelEvaluation& ke) {
  if (!(ke.xs == ke.ys)) throw ConfigError("symmetry needs identical x and y grids");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < ke.values.rows(); ++i)
    for (Eigen::Index k = i + 1; k < ke.values.cols(); ++k)
      worst = std::max(worst, std::abs(ke.values(i, k) - ke.values(k, i)));
  return worst;
}

std::vector<double> row_integrals(const KernelEvaluation& ke) {
  std::vector<double> out(static_cast<std::size_t>(ke.values.rows()));
  const double h = ke.ys.spacing();
  for (Eigen::Index i = 0; i < ke.values.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index c = 0; c + 1 < ke.values.cols(); ++c) s += ke.values(i, c) + ke.left_at(i, c + 1);
    out[static_cast<std::size_t>(i)] = 0.5 * h * s;
  }
  return out;
}

RadialBound radial_profile(const KernelEvaluation& ke, double u_max) {
  RadialBound rb = bucket_profile(ke.values, ke.xs, ke.ys, ke.j, u_max);
  finish_bound(rb);
  return rb;
}

RadialBound naive_profile(const MRAFamily& fam, int j, int depth) {
  if (depth < 1) throw ConfigError("naive profile depth must be positive");
  const int level = j + 6;
  const double unit = std::ldexp(1.0, -j);
  const DyadicGrid xs = DyadicGrid::over(0.0, unit, level);
  const DyadicGrid ys = DyadicGrid::over(-64.0 * unit, 65.0 * unit, level);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(xs.count()), static_cast<Eigen::Index>(ys.count()));
  for (int jj = j - depth; jj < j; ++jj) {
    const auto [a0, a1] = closed_range(fam.psi, jj, xs.left, xs.right);
    const auto [b0, b1] = closed_range(fam.psi, jj, ys.left, ys.right);
    const long k0 = std::max(a0, b0), k1 = std::min(a1, b1);
    if (k1 < k0) continue;
    const Basis bx = basis_matrix(fam.psi, jj, xs, k0, k1, true, false);
    const Basis by = basis_matrix(fam.psi, jj, ys, k0, k1, true, false);
    sum += bx.right * by.right.transpose();
  }
  RadialBound rb = bucket_profile(sum, xs, ys, j, 64.0);
  finish_bound(rb);
  return rb;
}

BoundReport verify_convolution_bound(const MRAFamily& fam, std::span<const int> js) {
  if (js.size() < 3) throw ConfigError("convolution bound check needs at least three scales");
  BoundReport rep;
  rep.js.assign(js.begin(), js.end());
  for (int j : js) rep.profiles.push_back(radial_profile(profile_kernel(fam, j)));
  const RadialBound& first = rep.profiles.front();
  RadialBound env;
  env.radii = first.radii;
  env.majorant.assign(first.majorant.size(), 0.0);
  for (const RadialBound& p : rep.profiles) {
    if (p.radii != first.radii) throw ConfigError("inconsistent grids across scales");
    for (std::size_t i = 0; i < p.majorant.size(); ++i) env.majorant[i] = std::max(env.majorant[i], p.majorant[i]);
  }
  finish_bound(env);
  double defect = 0.0;
  for (const RadialBound& p : rep.profiles)
    for (std::size_t i = 0; i < p.majorant.size(); ++i) defect = std::max(defect, std::abs(p.majorant[i] - env.majorant[i]));
  rep.collapse_defect = env.constant > 0.0 ? defect / env.constant : 0.0;
  rep.envelope = std::move(env);
  rep.passed = rep.envelope.finite() && rep.collapse_defect < 0.05;
  return rep;
}

DecayFit fit_decay(const RadialBound& rb, DecayModel model, double exponent, std::optional<RadiusRange> range) {
  constexpr double kUsable = 1e-12;
  const double floor_value = std::max(kUsable, 1e-11 * rb.constant);
  std::vector<std::size_t> idx;
  if (range) {
    for (std::size_t i = 0; i < rb.radii.size(); ++i)
      if (rb.radii[i] >= range->lo && rb.radii[i] <= range->hi && rb.majorant[i] > kUsable) idx.push_back(i);
  } else if (model == DecayModel::exponential) {
    std::size_t start = 0;
    while (start < rb.majorant.size() && rb.majorant[start] >= rb.constant * (1.0 - 1e-9)) ++start;
    for (std::size_t i = start; i < rb.radii.size(); ++i)
      if (rb.majorant[i] > floor_value) idx.push_back(i);
    if (idx.size() < 20) {
      idx.clear();
      for (std::size_t i = 0; i < rb.radii.size(); ++i)
        if (rb.majorant[i] > kUsable) idx.push_back(i);
    }
  } else {
    for (std::size_t i = 0; i < rb.radii.size(); ++i)
      if (rb.majorant[i] > floor_value) idx.push_back(i);
  }
  if (idx.size() < 20) throw ComputeError("fewer than 20 usable radii for a decay fit");

  DecayFit fit;
  fit.model = model;
  fit.points = static_cast<int>(idx.size());
  fit.u_lo = rb.radii[idx.front()];
  fit.u_hi = rb.radii[idx.back()];
  std::vector<double> u, lm;
  for (std::size_t i : idx) {
    u.push_back(rb.radii[i]);
    lm.push_back(std::log(rb.majorant[i]));
  }
  if (model == DecayModel::exponential) {
    const LineFit lf = fit_line(u, lm);
    fit.constant = std::exp(lf.intercept);
    fit.rate = -2.0 * lf.slope;
    fit.r_squared = lf.r_squared;
    fit.flagged = !(fit.rate > 1e-6);
    return fit;
  }
  // Fixed exponent: only log C_N is free.
  double mean_res = 0.0, mean_lm = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mean_res += lm[i] + exponent * std::log1p(u[i]);
    mean_lm += lm[i];
  }
  mean_res /= static_cast<double>(u.size());
  mean_lm /= static_cast<double>(u.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double pred = mean_res - exponent * std::log1p(u[i]);
    ss_res += (lm[i] - pred) * (lm[i] - pred);
    ss_tot += (lm[i] - mean_lm) * (lm[i] - mean_lm);
  }
  fit.constant = std::exp(mean_res);
  fit.rate = exponent;
  fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  fit.flagged = !(exponent > 0.0);
  return fit;
}

}  // namespace waverate
