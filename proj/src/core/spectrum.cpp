// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#include "core/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

namespace waverate {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// E0 = int_0^1 (1 - t) e^{-i theta t} dt and E1 = int_0^1 t e^{-i theta t} dt.
void hat_weights(double theta, Complex& e0, Complex& e1) {
  if (std::abs(theta) < 0.5) {
    e0 = 0.0;
    e1 = 0.0;
    Complex term = 1.0;
    for (int n = 0; n < 30; ++n) {
      e0 += term / static_cast<double>((n + 1) * (n + 2));
      e1 += term / static_cast<double>(n + 2);
      term *= Complex(0.0, -theta) / static_cast<double>(n + 1);
    }
    return;
  }
  const Complex ph = std::polar(1.0, -theta);
  const Complex i0 = (1.0 - ph) / Complex(0.0, theta);
  e1 = ph * Complex(1.0 / (theta * theta), 1.0 / theta) - 1.0 / (theta * theta);
  e0 = i0 - e1;
}

std::vector<double> mirror(const std::vector<double>& positive) {
  std::vector<double> xi;
  xi.reserve(2 * positive.size());
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) xi.push_back(-*it);
  xi.insert(xi.end(), positive.begin(), positive.end());
  return xi;
}

/// m0(eta + pi) - m0(pi) without the cancelling constant term.
Complex highpass_symbol(const FilterPair& filter, double eta) {
  Complex s = 0.0;
  for (long k = filter.first(); k <= filter.last(); ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double half = std::sin(0.5 * static_cast<double>(k) * eta);
    s += sign * filter.h(k) * Complex(-2.0 * half * half, -std::sin(static_cast<double>(k) * eta));
  }
  return s / std::numbers::sqrt2;
}

Complex lowpass_symbol(const FilterPair& filter, double eta) {
  Complex s = 0.0;
  for (long k = filter.first(); k <= filter.last(); ++k) s += filter.h(k) * std::polar(1.0, -static_cast<double>(k) * eta);
  return s / std::numbers::sqrt2;
}

}  // namespace

int ShellLayout::count() const {
  if (!(epsilon_max > 0.0) || !(xi_min > 0.0) || xi_min >= epsilon_max) throw ConfigError("invalid shell layout");
  if (per_shell < 2) throw ConfigError("shell layout needs at least two subintervals per shell");
  return static_cast<int>(std::ceil(std::log2(epsilon_max / xi_min)));
}

std::vector<double> ShellLayout::positive_points() const {
  const int m = count();
  const double base = std::ldexp(epsilon_max, -m);
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(m * per_shell + 1));
  for (int s = 0; s < m; ++s)
    for (int i = 0; i < per_shell; ++i)
      pts.push_back(std::ldexp(base, s) * (1.0 + static_cast<double>(i) / per_shell));
  pts.push_back(epsilon_max);
  return pts;
}

const char* SampledSpectrum::convention() noexcept {
  return "unitary: F(xi) = (2 pi)^(-1/2) int f(x) exp(-i xi x) dx";
}

double SampledSpectrum::energy() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < xi.size(); ++i)
    s += 0.5 * (xi[i + 1] - xi[i]) * (std::norm(values[i]) + std::norm(values[i + 1]));
  return s;
}

double SampledSpectrum::hermitian_defect() const {
  double worst = 0.0;
  const std::size_t n = xi.size();
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(values[n - 1 - i] - std::conj(values[i])));
  return worst;
}

std::vector<Complex> continuous_transform(const SampledFunction& f, std::span<const double> xi) {
  const DyadicGrid& g = f.grid();
  const std::size_t n = f.size();
  const double h = g.spacing();
  const double center = 0.5 * (g.left + g.right);
  std::vector<Complex> out(xi.size());
  constexpr std::size_t kBlock = 512;
  for (std::size_t q = 0; q < xi.size(); ++q) {
    const double w = xi[q];
    Complex sr = 0.0, sl = 0.0;
    const Complex step = std::polar(1.0, -w * h);
    for (std::size_t b = 0; b < n; b += kBlock) {
      Complex ph = std::polar(1.0, -w * (g.at(b) - center));
      const std::size_t e = std::min(n, b + kBlock);
      for (std::size_t i = b; i < e; ++i) {
        if (i + 1 < n) sr += f.value(i) * ph;
        if (i > 0) sl += f.left_limit(i) * ph;
        ph *= step;
      }
    }
    Complex e0, e1;
    hat_weights(w * h, e0, e1);
    out[q] = kInvSqrt2Pi * h * std::polar(1.0, -w * center) * (e0 * sr + std::polar(1.0, w * h) * e1 * sl);
  }
  return out;
}

SampledSpectrum fourier_transform(const SampledFunction& f, int pad_factor, double xi_max) {
  if (pad_factor < 4) throw ConfigError("pad factor must be at least 4");
  const DyadicGrid& g = f.grid();
  const double h = g.spacing();
  const double nyquist = std::numbers::pi / h;
  if (xi_max > nyquist) {
    std::ostringstream msg;
    msg << "grid too coarse: requested frequency " << xi_max << " exceeds the Nyquist limit " << nyquist;
    throw ComputeError(msg.str());
  }
  const std::size_t n = f.size();
  std::size_t p = 1;
  while (p < static_cast<std::size_t>(pad_factor) * n) p <<= 1;

  fftw_complex* in = fftw_alloc_complex(p);
  fftw_complex* out_r = fftw_alloc_complex(p);
  fftw_complex* out_l = fftw_alloc_complex(p);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(p), in, out_r, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  // Right values feed cells to their right, left limits cells to their left.
  std::fill_n(&in[0][0], 2 * p, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) in[i][0] = f.value(i);
  fftw_execute_dft(plan, in, out_r);
  std::fill_n(&in[0][0], 2 * p, 0.0);
  for (std::size_t i = 1; i < n; ++i) in[i][0] = f.left_limit(i);
  fftw_execute_dft(plan, in, out_l);

  SampledSpectrum spec;
  const long half = static_cast<long>(p / 2) - 1;
  const double dxi = 2.0 * std::numbers::pi / (static_cast<double>(p) * h);
  for (long q = -half; q <= half; ++q) {
    const double w = static_cast<double>(q) * dxi;
    if (xi_max > 0.0 && std::abs(w) > xi_max) continue;
    const std::size_t idx = static_cast<std::size_t>(q < 0 ? q + static_cast<long>(p) : q);
    const Complex sr(out_r[idx][0], out_r[idx][1]);
    const Complex sl(out_l[idx][0], out_l[idx][1]);
    Complex e0, e1;
    hat_weights(w * h, e0, e1);
    spec.xi.push_back(w);
    spec.values.push_back(kInvSqrt2Pi * h * std::polar(1.0, -w * g.left) *
                          (e0 * sr + std::polar(1.0, w * h) * e1 * sl));
  }
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out_r);
  fftw_free(out_l);
  return spec;
}

SampledSpectrum fourier_zoom(const SampledFunction& f, double xi_max, int half_points) {
  if (!(xi_max > 0.0) || half_points < 1) throw ConfigError("zoom needs xi_max > 0 and at least one point");
  if (xi_max > std::numbers::pi / f.grid().spacing()) throw ComputeError("grid too coarse for the requested frequency");
  SampledSpectrum spec;
  for (int i = -half_points; i <= half_points; ++i) spec.xi.push_back(xi_max * i / half_points);
  spec.values = continuous_transform(f, spec.xi);
  return spec;
}

SampledSpectrum shell_spectrum(const SampledFunction& f, const ShellLayout& layout) {
  SampledSpectrum spec;
  const std::vector<double> pos = layout.positive_points();
  const std::vector<Complex> vp = continuous_transform(f, pos);
  spec.xi = mirror(pos);
  spec.uniform = false;
  spec.values.reserve(spec.xi.size());
  for (auto it = vp.rbegin(); it != vp.rend(); ++it) spec.values.push_back(std::conj(*it));
  spec.values.insert(spec.values.end(), vp.begin(), vp.end());
  return spec;
}

SampledSpectrum wavelet_shell_spectrum(const MRAFamily& fam, const ShellLayout& layout) {
  if (fam.kind != FamilyKind::shannon) return shell_spectrum(fam.psi, layout);
  SampledSpectrum spec;
  spec.xi = mirror(layout.positive_points());
  spec.uniform = false;
  for (double w : spec.xi) {
    const double a = std::abs(w);
    const bool band = a > std::numbers::pi && a <= 2.0 * std::numbers::pi;
    spec.values.push_back(band ? -kInvSqrt2Pi * std::polar(1.0, -0.5 * w) : Complex(0.0, 0.0));
  }
  return spec;
}

SampledSpectrum scaling_shell_spectrum(const MRAFamily& fam, const ShellLayout& layout) {
  SampledSpectrum spec;
  spec.xi = mirror(layout.positive_points());
  spec.uniform = false;
  if (!fam.filter) {
    if (fam.kind != FamilyKind::shannon) throw ConfigError("scaling spectrum needs a refinement filter");
    for (double w : spec.xi) {
      const bool band = std::abs(w) <= std::numbers::pi;
      spec.values.push_back(band ? Complex(kInvSqrt2Pi, 0.0) : Complex(0.0, 0.0));
      spec.unit_defect.push_back(band ? 0.0 : 1.0);
    }
    return spec;
  }
  const FilterPair& filter = *fam.filter;
  for (double w : spec.xi) {
    Complex prod = 1.0;
    double log_sum = 0.0;
    for (int j = 1; j <= 64; ++j) {
      const double eta = std::ldexp(w, -j);
      prod *= lowpass_symbol(filter, eta);
      const double hp = std::norm(highpass_symbol(filter, eta));
      log_sum += std::log1p(-hp);
      if (hp < 1e-300) break;
    }
    spec.values.push_back(kInvSqrt2Pi * prod);
    spec.unit_defect.push_back(-std::expm1(log_sum));
  }
  return spec;
}

}  // namespace waverate
