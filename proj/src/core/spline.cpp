// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#include "core/spline.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "core/bspline.hpp"
#include "core/regression.hpp"

namespace waverate {

namespace {

constexpr double kMaxCondition = 1e12;

struct GaussRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

/// Golub-Welsch on [0, 1].
GaussRule gauss_legendre(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    j(i, i - 1) = b;
    j(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  GaussRule r;
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(0.5 * (es.eigenvalues()(i) + 1.0));
    const double v = es.eigenvectors()(0, i);
    r.weights.push_back(v * v);
  }
  return r;
}

/// Integer multiple test with relative slack.
bool integral_ratio(double num, double den, long& out) {
  const double q = num / den;
  out = std::lround(q);
  return std::abs(q - static_cast<double>(out)) <= 1e-9 * std::max(1.0, std::abs(q));
}

long knot_cell(const SplineSpace& sp, double x) {
  return static_cast<long>(std::floor((x - sp.window.left) / sp.mesh));
}

}  // namespace

SplineSpace SplineSpace::make(int order, double mesh, Window window) {
  if (order < 1 || order > kMaxSplineOrder) throw ConfigError("spline order must lie in 1..8");
  if (!(mesh > 0.0)) throw ConfigError("spline mesh must be positive");
  if (!(window.right > window.left)) throw ConfigError("empty spline window");
  long n = 0;
  if (!integral_ratio(window.right - window.left, mesh, n) || n < 1)
    throw ConfigError("spline mesh must divide the window length");
  SplineSpace sp{order, mesh, window, n + order - 1};
  if (sp.basis_count < order) throw ConfigError("spline space needs at least `order` basis functions");
  return sp;
}

double SplineSpace::basis(long i, double x) const {
  if (x < window.left || x >= window.right) return 0.0;
  return cardinal_bspline(order, (x - window.left) / mesh - static_cast<double>(i) + order - 1);
}

double SplineSpace::basis_left(long i, double x) const {
  if (x <= window.left || x > window.right) return 0.0;
  return cardinal_bspline_left(order, (x - window.left) / mesh - static_cast<double>(i) + order - 1);
}

Eigen::SparseMatrix<double> gram_matrix(const SplineSpace& sp) {
  const int k = sp.order;
  const long n = sp.basis_count;
  const long cells = sp.cells();
  const GaussRule rule = gauss_legendre(k);
  std::vector<Eigen::Triplet<double>> trip;
  for (long i = 0; i < n; ++i) {
    // Basis i lives on knot cells i - k + 1 .. i.
    const bool interior_i = i - k + 1 >= 0 && i < cells;
    for (long j = std::max(0L, i - k + 1); j <= std::min(n - 1, i + k - 1); ++j) {
      const bool interior_j = j - k + 1 >= 0 && j < cells;
      double g = 0.0;
      if (interior_i && interior_j) {
        g = sp.mesh * cardinal_bspline(2 * k, static_cast<double>(k + (i - j)));
      } else {
        const long c0 = std::max({0L, i - k + 1, j - k + 1});
        const long c1 = std::min({cells - 1, i, j});
        for (long c = c0; c <= c1; ++c)
          for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double x = sp.window.left + (static_cast<double>(c) + rule.nodes[q]) * sp.mesh;
            g += rule.weights[q] * sp.mesh * sp.basis(i, x) * sp.basis(j, x);
          }
      }
      if (g != 0.0) trip.emplace_back(static_cast<int>(i), static_cast<int>(j), g);
    }
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

Eigen::VectorXd spline_load_vector(const SampledFunction& f, const SplineSpace& sp) {
  const DyadicGrid& g = f.grid();
  const double h = g.spacing();
  long ratio = 0, offset = 0, span = 0;
  if (!integral_ratio(sp.mesh, h, ratio) || !integral_ratio(sp.window.left - g.left, h, offset) ||
      !integral_ratio(sp.window.right - sp.window.left, h, span))
    throw ComputeError("insufficient quadrature resolution: spline knots are not nodes of the function grid");
  if (offset < 0 || static_cast<std::size_t>(offset + span) >= f.size())
    throw ComputeError("spline window extends beyond the tabulated function");
  if (ratio < 4) throw ComputeError("insufficient quadrature resolution: need at least 4 samples per spline cell");
  const GaussRule rule = gauss_legendre(sp.order + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(sp.basis_count);
  for (long m = 0; m < span; ++m) {
    const auto node = static_cast<std::size_t>(offset + m);
    const double a = f.value(node), e = f.left_limit(node + 1);
    const double x0 = g.at(node);
    const long c = m / ratio;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = rule.nodes[q];
      const double x = x0 + t * h;
      const double fx = (1.0 - t) * a + t * e;
      for (long i = sp.first_on_cell(c); i <= sp.last_on_cell(c); ++i)
        b(i) += rule.weights[q] * h * fx * sp.basis(i, x);
    }
  }
  return b;
}

double SplineApproximation::operator()(double x) const {
  if (x == space.window.right) return left_value(x);
  if (x < space.window.left || x > space.window.right) return 0.0;
  const long c = std::min(knot_cell(space, x), space.cells() - 1);
  double s = 0.0;
  for (long i = space.first_on_cell(c); i <= space.last_on_cell(c); ++i) s += coefficients(i) * space.basis(i, x);
  return s;
}

double SplineApproximation::left_value(double x) const {
  if (x <= space.window.left || x > space.window.right) return 0.0;
  long c = knot_cell(space, x);
  const double t = (x - space.window.left) / space.mesh;
  if (static_cast<double>(c) == t) --c;
  c = std::clamp(c, 0L, space.cells() - 1);
  double s = 0.0;
  for (long i = space.first_on_cell(c); i <= space.last_on_cell(c); ++i)
    s += coefficients(i) * space.basis_left(i, x);
  return s;
}

SampledFunction SplineApproximation::tabulate(const DyadicGrid& xs) const {
  return sample(xs, [this](double x) { return (*this)(x); }, [this](double x) { return left_value(x); });
}

SplineApproximation best_l2_spline(const SampledFunction& f, const SplineSpace& space) {
  const Eigen::VectorXd b = spline_load_vector(f, space);
  const Eigen::SparseMatrix<double> g = gram_matrix(space);
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(g);
  if (llt.info() != Eigen::Success) throw ComputeError("spline Gram matrix is not positive definite");

  // Power iterations for the extreme eigenvalues.
  const long n = space.basis_count;
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0).normalized();
  Eigen::VectorXd w = v;
  double lmax = 0.0, inv_lmin = 0.0;
  for (int it = 0; it < 60; ++it) {
    Eigen::VectorXd gv = g * v;
    lmax = gv.norm();
    v = gv / lmax;
    Eigen::VectorXd sw = llt.solve(w);
    inv_lmin = sw.norm();
    w = sw / inv_lmin;
  }
  SplineApproximation out;
  out.space = space;
  out.condition_estimate = lmax * inv_lmin;
  if (!(out.condition_estimate <= kMaxCondition)) {
    std::ostringstream msg;
    msg << "ill-conditioned spline Gram matrix (condition estimate " << out.condition_estimate << ")";
    throw ComputeError(msg.str());
  }
  out.coefficients = llt.solve(b);

  const DyadicGrid& fg = f.grid();
  const DyadicGrid sub = DyadicGrid::over(space.window.left, space.window.right, fg.level);
  const GaussRule rule = gauss_legendre(space.order + 1);
  const double h = sub.spacing();
  double r2 = 0.0;
  for (std::size_t m = 0; m + 1 < sub.count(); ++m) {
    const double x0 = sub.at(m);
    const double a = f(x0), e = f.left_value(sub.at(m + 1));
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = rule.nodes[q];
      const double d = (1.0 - t) * a + t * e - out(x0 + t * h);
      r2 += rule.weights[q] * h * d * d;
    }
  }
  out.residual_l2 = std::sqrt(r2);
  const double fn = f.l2_norm();
  const Eigen::VectorXd res = b - g * out.coefficients;
  out.orthogonality_defect = fn > 0.0 ? res.cwiseAbs().maxCoeff() / fn : res.cwiseAbs().maxCoeff();
  return out;
}

OptimalityReport perturbation_check(const SampledFunction& f, const SplineApproximation& approx, int trials,
                                    double magnitude, std::uint64_t seed) {
  const Eigen::SparseMatrix<double> g = gram_matrix(approx.space);
  const Eigen::VectorXd r = spline_load_vector(f, approx.space) - g * approx.coefficients;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  OptimalityReport rep;
  rep.trials = trials;
  rep.min_increase = INFINITY;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd d(approx.space.basis_count);
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = normal(rng);
    d *= magnitude / d.norm();
    const double inc = d.dot(g * d) - 2.0 * d.dot(r);
    rep.min_increase = std::min(rep.min_increase, inc);
    if (inc > 0.0) ++rep.strictly_worse;
  }
  return rep;
}

RateReport spline_convergence_study(const SampledFunction& f, int order, const std::vector<double>& meshes,
                                    Window window) {
  if (meshes.size() < 2) throw ConfigError("spline study needs at least two meshes");
  for (std::size_t i = 1; i < meshes.size(); ++i)
    if (std::abs(meshes[i] - 0.5 * meshes[i - 1]) > 1e-12 * meshes[i - 1])
      throw ConfigError("spline meshes must halve successively");
  const double shrink = order * meshes.front();
  const Window inner{window.left + shrink, window.right - shrink};
  if (!(inner.right > inner.left)) throw ConfigError("spline window too small for the coarsest mesh");
  const DyadicGrid xs = covering_grid(inner.left, inner.right, f.grid().level);
  RateReport rep;
  rep.family = "spline:" + std::to_string(order);
  rep.window = inner;
  std::vector<double> x, y;
  for (double h : meshes) {
    const SplineApproximation s = best_l2_spline(f, SplineSpace::make(order, h, window));
    double e = 0.0, q = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < xs.count(); ++i) {
      const double p = xs.at(i);
      const double er = std::abs(s(p) - f(p));
      e = std::max({e, er, std::abs(s.left_value(p) - f.left_value(p))});
      if (i > 0) q = std::max(q, std::abs(er - prev));
      prev = er;
    }
    const int j = static_cast<int>(std::lround(-std::log2(h)));
    rep.js.push_back(j);
    rep.sup_errors.push_back(e);
    rep.quantization.push_back(q);
    if (e > 0.0) {
      x.push_back(-std::log2(h));
      y.push_back(std::log2(e));
    }
  }
  if (x.size() >= 2) {
    const LineFit fit = fit_line(x, y);
    rep.slope = -fit.slope;
    rep.intercept = fit.intercept;
    rep.r_squared = fit.r_squared;
  }
  return rep;
}

RateReport spline_convergence_study(const TestFunction& tf, int order, const std::vector<double>& meshes,
                                    Window window, int level) {
  RateReport rep = spline_convergence_study(tf.sample(level), order, meshes, window);
  rep.function = tf.name;
  return rep;
}

}  // namespace waverate
