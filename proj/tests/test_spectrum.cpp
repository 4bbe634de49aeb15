// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "common.hpp"
#include "core/spectrum.hpp"

using namespace waverate;
using waverate::testing::family;

namespace {

const double kUnit = 1.0 / std::sqrt(2.0 * std::numbers::pi);

Complex box_transform(double xi) {
  if (xi == 0.0) return {kUnit, 0.0};
  const Complex i(0.0, 1.0);
  return (1.0 - std::exp(-i * xi)) / (i * xi) * kUnit;
}

SampledFunction gaussian_half() {
  return sample(DyadicGrid::over(-10.0, 10.0, 8), [](double x) { return std::exp(-0.5 * x * x); },
                DecayHint::exponential(1.0));
}

}  // namespace

TEST_CASE("transform of the unit box") {
  const SampledFunction box = sample(DyadicGrid::over(0.0, 1.0, 6), [](double) { return 1.0; });
  const std::vector<double> xi{-7.5, -1.0, 0.0, 1e-3, 0.3, 2.0, 40.0};
  const std::vector<Complex> f = continuous_transform(box, xi);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    CAPTURE(xi[i]);
    CHECK(std::abs(f[i] - box_transform(xi[i])) < 1e-13);
  }
}

TEST_CASE("gaussian is its own transform") {
  const SampledFunction g = gaussian_half();
  const std::vector<double> xi{0.0, 0.5, 1.0, 2.5, 4.0};
  const std::vector<Complex> f = continuous_transform(g, xi);
  for (std::size_t i = 0; i < xi.size(); ++i) CHECK(std::abs(f[i] - std::exp(-0.5 * xi[i] * xi[i])) < 1e-5);
}

TEST_CASE("fft path agrees with the closed form") {
  const SampledFunction g = gaussian_half();
  const SampledSpectrum s = fourier_transform(g, 4, 6.0);
  CHECK(s.uniform);
  CHECK(s.xi.front() == doctest::Approx(-s.xi.back()));
  for (std::size_t i = 0; i < s.xi.size(); ++i) {
    if (std::abs(s.xi[i]) > 5.0) continue;
    CHECK(std::abs(s.values[i] - std::exp(-0.5 * s.xi[i] * s.xi[i])) < 1e-5);
  }
  CHECK(s.hermitian_defect() < 1e-12);
  const double norm2 = std::sqrt(std::numbers::pi);
  CHECK(s.energy() == doctest::Approx(norm2).epsilon(1e-5));
  CHECK_THROWS_AS(fourier_transform(g, 2), ConfigError);
}

TEST_CASE("zoomed transform") {
  const SampledFunction box = sample(DyadicGrid::over(0.0, 1.0, 6), [](double) { return 1.0; });
  const SampledSpectrum s = fourier_zoom(box, 3.0, 12);
  REQUIRE(s.xi.size() == 25);
  CHECK(s.xi[12] == 0.0);
  CHECK(s.xi[24] == doctest::Approx(3.0));
  CHECK(std::abs(s.values[20] - box_transform(s.xi[20])) < 1e-13);
}

TEST_CASE("shell layout") {
  const ShellLayout layout;
  CHECK(layout.count() == 15);
  const std::vector<double> pts = layout.positive_points();
  CHECK(pts.size() == 15 * 32 + 1);
  CHECK(pts.back() == doctest::Approx(2.0));
  CHECK(pts.front() <= 1e-4);
  CHECK(std::is_sorted(pts.begin(), pts.end()));
}

TEST_CASE("haar wavelet and scaling spectra") {
  const MRAFamily& haar = family("haar");
  const ShellLayout layout;
  const SampledSpectrum w = wavelet_shell_spectrum(haar, layout);
  const SampledSpectrum p = scaling_shell_spectrum(haar, layout);
  REQUIRE(w.xi.size() == p.xi.size());
  REQUIRE(p.unit_defect.size() == p.xi.size());
  for (std::size_t i = 0; i < w.xi.size(); i += 37) {
    const double xi = w.xi[i];
    CAPTURE(xi);
    const double q = xi / 4.0;
    CHECK(std::abs(w.values[i]) == doctest::Approx(kUnit * std::sin(q) * std::sin(q) / std::abs(q)).epsilon(1e-10));
    const double sinc = std::sin(xi / 2.0) / (xi / 2.0);
    CHECK(std::abs(p.values[i]) == doctest::Approx(kUnit * std::abs(sinc)).epsilon(1e-10));
    CHECK(p.unit_defect[i] == doctest::Approx(1.0 - sinc * sinc).epsilon(1e-8));
  }
}

TEST_CASE("shannon wavelet spectrum is a band indicator") {
  ShellLayout layout;
  layout.epsilon_max = 8.0;
  const SampledSpectrum w = wavelet_shell_spectrum(family("shannon"), layout);
  for (std::size_t i = 0; i < w.xi.size(); ++i) {
    const double a = std::abs(w.xi[i]);
    if (a > std::numbers::pi + 1e-9 && a < 2 * std::numbers::pi - 1e-9) CHECK(std::abs(w.values[i]) == doctest::Approx(kUnit));
    if (a < std::numbers::pi - 1e-9 || a > 2 * std::numbers::pi + 1e-9) CHECK(std::abs(w.values[i]) == 0.0);
  }
}

TEST_CASE("daubechies scaling spectrum near the origin") {
  const SampledSpectrum p = scaling_shell_spectrum(family("daubechies:2"), ShellLayout{});
  for (std::size_t i = 0; i < p.xi.size(); ++i) {
    if (std::abs(p.xi[i]) < 1e-3) CHECK(std::abs(p.values[i]) == doctest::Approx(kUnit).epsilon(1e-9));
    CHECK(p.unit_defect[i] >= -1e-15);
  }
}

TEST_CASE("centered box through the fft") {
  const SampledFunction box = sample(DyadicGrid::over(-0.5, 0.5, 8), [](double) { return 1.0; });
  const SampledSpectrum s = fourier_transform(box, 8, 8.0);
  const double pi = std::numbers::pi;
  for (double target : {0.0, pi, 2 * pi}) {
    const auto it = std::min_element(s.xi.begin(), s.xi.end(), [&](double a, double b) {
      return std::abs(a - target) < std::abs(b - target);
    });
    const double xi = *it;
    const double expected = xi == 0.0 ? kUnit : kUnit * std::sin(xi / 2) / (xi / 2);
    CHECK(std::abs(s.values[static_cast<std::size_t>(it - s.xi.begin())] - expected) < 1e-4);
  }
}

TEST_CASE("haar wavelet spectrum is quadratic at the origin") {
  const MRAFamily& haar = family("haar");
  std::vector<double> xi;
  for (double x = 0.01; x <= 0.1 + 1e-12; x += 0.01) xi.push_back(x);
  const std::vector<Complex> f = continuous_transform(haar.psi, xi);
  const double ref = std::norm(f[0]) / (xi[0] * xi[0]);
  for (std::size_t i = 0; i < xi.size(); ++i) CHECK(std::norm(f[i]) / (xi[i] * xi[i]) == doctest::Approx(ref).epsilon(0.02));
}

TEST_CASE("gaussian self transform on a wide band") {
  const SampledFunction g = sample(DyadicGrid::over(-12.0, 12.0, 10), [](double x) { return std::exp(-0.5 * x * x); });
  std::vector<double> xi;
  for (double x = -8.0; x <= 8.0; x += 0.25) xi.push_back(x);
  const std::vector<Complex> f = continuous_transform(g, xi);
  for (std::size_t i = 0; i < xi.size(); ++i) CHECK(std::abs(f[i] - std::exp(-0.5 * xi[i] * xi[i])) < 1e-6);
  const SampledSpectrum s = fourier_transform(g, 4, 8.0);
  for (std::size_t i = 0; i < s.xi.size(); ++i) CHECK(std::abs(s.values[i] - std::exp(-0.5 * s.xi[i] * s.xi[i])) < 1e-6);
}
