// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#include "core/filters.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "core/bspline.hpp"
#include "core/grid.hpp"

namespace waverate {

namespace {

using cplx = std::complex<double>;

std::vector<cplx> multiply(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size() + b.size() - 1, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Newton refinement of the orthonormality and vanishing-moment system
// sum_k h_k h_{k+2m} = delta_{m0}, sum_k (-1)^k ((k - c)/c)^p h_k = 0.
void polish_daubechies(std::vector<double>& h) {
  const int len = static_cast<int>(h.size());
  const int n = len / 2;
  if (n < 2) return;
  const double c = 0.5 * (len - 1);
  Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(h.data(), len);
  for (int iter = 0; iter < 4; ++iter) {
    Eigen::VectorXd f(len);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(len, len);
    for (int m = 0; m < n; ++m) {
      double s = 0.0;
      for (int k = 0; k + 2 * m < len; ++k) s += x[k] * x[k + 2 * m];
      f[m] = s - (m == 0 ? 1.0 : 0.0);
      for (int j = 0; j < len; ++j) {
        double d = 0.0;
        if (j + 2 * m < len) d += x[j + 2 * m];
        if (j - 2 * m >= 0) d += x[j - 2 * m];
        jac(m, j) = d;
      }
    }
    for (int p = 0; p < n; ++p) {
      double s = 0.0;
      for (int k = 0; k < len; ++k) {
        const double w = ((k % 2 == 0) ? 1.0 : -1.0) * std::pow((k - c) / c, p);
        s += w * x[k];
        jac(n + p, k) = w;
      }
      f[n + p] = s;
    }
    x -= jac.fullPivLu().solve(f);
  }
  for (int k = 0; k < len; ++k) h[static_cast<std::size_t>(k)] = x[k];
}

}  // namespace

FilterPair FilterPair::from_lowpass(std::vector<double> lowpass, long offset) {
  if (lowpass.empty()) throw ConfigError("empty lowpass filter");
  if (lowpass.size() % 2 == 1) lowpass.push_back(0.0);
  FilterPair f;
  f.offset = offset;
  const std::size_t m = lowpass.size();
  f.highpass.resize(m);
  for (std::size_t i = 0; i < m; ++i) f.highpass[i] = ((i % 2 == 0) ? 1.0 : -1.0) * lowpass[m - 1 - i];
  f.lowpass = std::move(lowpass);
  return f;
}

double FilterPair::sum_defect() const {
  double s = 0.0;
  for (double v : lowpass) s += v;
  return std::abs(s - std::numbers::sqrt2);
}

double FilterPair::orthonormality_defect() const {
  double worst = 0.0;
  for (long m = 0; 2 * m < size(); ++m) {
    double s = 0.0;
    for (long k = first(); k <= last(); ++k) s += h(k) * h(k + 2 * m);
    worst = std::max(worst, std::abs(s - (m == 0 ? 1.0 : 0.0)));
  }
  return worst;
}

double FilterPair::mirror_defect() const {
  double worst = 0.0;
  for (long m = -size(); m <= size(); ++m) {
    double s = 0.0;
    for (long k = first(); k <= last(); ++k) s += h(k) * g(k + 2 * m);
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

void FilterPair::validate(double tol) const {
  if (lowpass.size() != highpass.size()) throw ConfigError("lowpass and highpass lengths differ");
  const double sd = sum_defect();
  const double od = orthonormality_defect();
  if (sd > tol || od > tol) {
    std::ostringstream msg;
    msg << "filter is not orthonormal (sum defect " << sd << ", orthonormality defect " << od << ")";
    throw ConfigError(msg.str());
  }
}

std::vector<double> daubechies_lowpass(int n) {
  if (n < 1 || n > 10) throw ConfigError("daubechies order must lie in 1..10");
  // Half-band factor P(y) = sum_{k<n} C(n-1+k, k) y^k with y = sin^2(w/2).
  std::vector<cplx> poly{cplx{1.0, 0.0}};
  if (n > 1) {
    const int deg = n - 1;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    const double lead = binomial(2 * n - 2, n - 1);
    for (int i = 0; i < deg; ++i) companion(0, i) = -binomial(n - 2 + deg - i, deg - 1 - i) / lead;
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    const Eigen::VectorXcd yroots = companion.eigenvalues();
    for (int r = 0; r < deg; ++r) {
      // z + 1/z = 2 - 4y; keep the root inside the unit circle.
      const cplx b = 2.0 - 4.0 * yroots[r];
      const cplx disc = std::sqrt(b * b - 4.0);
      cplx z = 0.5 * (b + disc);
      if (std::abs(z) > 1.0) z = 0.5 * (b - disc);
      poly = multiply(poly, {cplx{1.0, 0.0}, -z});
    }
  }
  for (int i = 0; i < n; ++i) poly = multiply(poly, {cplx{1.0, 0.0}, cplx{1.0, 0.0}});
  std::vector<double> h(poly.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    h[i] = poly[i].real();
    sum += h[i];
  }
  for (double& v : h) v *= std::numbers::sqrt2 / sum;
  polish_daubechies(h);
  return h;
}

std::vector<double> bspline_gram_sequence(int order) {
  if (order < 1 || order > 8) throw ConfigError("B-spline order must lie in 1..8");
  std::vector<double> a(static_cast<std::size_t>(2 * order - 1));
  for (int n = -(order - 1); n <= order - 1; ++n)
    a[static_cast<std::size_t>(n + order - 1)] = cardinal_bspline(2 * order, order + n);
  return a;
}

SplineOrthonormalizer orthonormalize_bspline(int order, int spectral_points, double truncation) {
  if (order < 1 || order > 4) throw ConfigError("battle_lemarie order must lie in 1..4");
  const std::vector<double> gram = bspline_gram_sequence(order);
  const auto symbol = [&](double xi) {
    double s = gram[static_cast<std::size_t>(order - 1)];
    for (int n = 1; n < order; ++n) s += 2.0 * gram[static_cast<std::size_t>(order - 1 + n)] * std::cos(n * xi);
    return s;
  };
  const int p = spectral_points;
  std::vector<double> inv_sqrt(static_cast<std::size_t>(p));
  std::vector<cplx> m0(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) {
    const double xi = 2.0 * std::numbers::pi * i / p;
    const double a1 = symbol(xi);
    const double a2 = symbol(2.0 * xi);
    inv_sqrt[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(a1);
    const cplx half = 0.5 * (1.0 + std::polar(1.0, -xi));
    m0[static_cast<std::size_t>(i)] = std::pow(half, order) * std::sqrt(a1 / a2);
  }

  SplineOrthonormalizer out;
  out.order = order;
  // c_n is real and even in n.
  std::vector<double> half_c;
  for (int n = 0; n < p / 4; ++n) {
    double s = 0.0;
    for (int i = 0; i < p; ++i) s += inv_sqrt[static_cast<std::size_t>(i)] * std::cos(2.0 * std::numbers::pi * (static_cast<double>(n) * i / p));
    s /= p;
    half_c.push_back(s);
    if (n > 0 && std::abs(s) < truncation * std::abs(half_c[0])) break;
  }
  if (half_c.size() > 1 && std::abs(half_c.back()) < truncation * std::abs(half_c[0])) half_c.pop_back();
  const long kc = static_cast<long>(half_c.size()) - 1;
  out.coeff_offset = -kc;
  for (long n = -kc; n <= kc; ++n) out.coefficients.push_back(half_c[static_cast<std::size_t>(std::labs(n))]);
  if (kc >= 4) {
    const long mid = kc / 2;
    out.decay_rate = std::log(std::abs(half_c[static_cast<std::size_t>(mid)]) /
                              std::abs(half_c[static_cast<std::size_t>(mid + 1)]));
  }

  // h_n is real and symmetric about order/2.
  const long span = 2 * kc + order + 16;
  std::vector<double> h;
  for (long n = -span; n <= span + order; ++n) {
    cplx s{0.0, 0.0};
    for (int i = 0; i < p; ++i) {
      const double phase = 2.0 * std::numbers::pi * std::fmod(static_cast<double>(n) * i, static_cast<double>(p)) / p;
      s += m0[static_cast<std::size_t>(i)] * std::polar(1.0, phase);
    }
    h.push_back(std::numbers::sqrt2 * s.real() / p);
  }
  long lo = 0, hi = static_cast<long>(h.size()) - 1;
  constexpr double kFloor = 1e-15;
  while (lo < hi && std::abs(h[static_cast<std::size_t>(lo)]) < kFloor) ++lo;
  while (hi > lo && std::abs(h[static_cast<std::size_t>(hi)]) < kFloor) --hi;
  out.lowpass.assign(h.begin() + lo, h.begin() + hi + 1);
  out.filter_offset = -span + lo;
  return out;
}

}  // namespace waverate
