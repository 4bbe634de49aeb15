// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "common.hpp"
#include "core/convergence.hpp"
#include "core/kernel.hpp"

using namespace waverate;
using waverate::testing::family;

TEST_CASE("haar kernel is the cell indicator") {
  const MRAFamily& haar = family("haar");
  CHECK(kernel_value(haar, 0, 0.2, 0.7) == doctest::Approx(1.0));
  CHECK(kernel_value(haar, 0, 0.2, 1.3) == 0.0);
  CHECK(kernel_value(haar, 2, 0.3, 0.45) == doctest::Approx(4.0));
  CHECK(kernel_value(haar, 2, 0.2, 0.3) == 0.0);
}

TEST_CASE("kernel symmetry and reproduction of constants") {
  const MRAFamily& db2 = family("daubechies:2");
  const DyadicGrid g = DyadicGrid::over(-2.0, 2.0, 5);
  const KernelEvaluation ke = kernel_matrix(db2, 1, g, g);
  CHECK(symmetry_defect(ke) < 1e-12);
  const KernelEvaluation pk = profile_kernel(db2, 1);
  for (double r : row_integrals(pk)) CHECK(r == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("detail sums telescope") {
  const MRAFamily& db2 = family("daubechies:2");
  for (double y : {0.1, 0.6, 1.7}) {
    CHECK(std::abs(kernel_value_dual(db2, 3, 0, 0.25, y) - kernel_value(db2, 3, 0.25, y)) < 1e-5);
  }
}

TEST_CASE("haar radial majorant") {
  const MRAFamily& haar = family("haar");
  const std::vector<int> js{0, 1, 2, 3};
  const BoundReport rep = verify_convolution_bound(haar, js);
  CHECK(rep.passed);
  CHECK(rep.collapse_defect < 1e-12);
  CHECK(rep.envelope.finite());
  CHECK(rep.envelope.majorant.front() == doctest::Approx(1.0));
  CHECK(rep.envelope.l1_mass == doctest::Approx(2.0).epsilon(0.02));
  CHECK(rep.envelope.tail == 0.0);
}

TEST_CASE("daubechies bound collapses across scales") {
  const std::vector<int> js{0, 1, 2};
  const BoundReport rep = verify_convolution_bound(family("daubechies:2"), js);
  CHECK(rep.passed);
  CHECK(rep.collapse_defect < 0.05);
  CHECK(rep.envelope.l1_mass > 1.0);
}

TEST_CASE("battle-lemarie envelope decays exponentially") {
  const std::vector<int> js{0, 1, 2};
  const BoundReport rep = verify_convolution_bound(family("battle_lemarie:2"), js);
  CHECK(rep.passed);
  const DecayFit fit = fit_decay(rep.envelope, DecayModel::exponential);
  CHECK(fit.rate > 0.0);
  CHECK_FALSE(fit.flagged);
  CHECK(fit.r_squared > 0.99);
}

TEST_CASE("absolute-value wavelet sums grow with depth") {
  const MRAFamily& haar = family("haar");
  const RadialBound shallow = naive_profile(haar, 4, 1);
  const RadialBound deep = naive_profile(haar, 4, 4);
  CHECK(deep.l1_mass > shallow.l1_mass);
}

TEST_CASE("bound configuration errors") {
  const std::vector<int> two{0, 1};
  CHECK_THROWS_AS(verify_convolution_bound(family("haar"), two), ConfigError);
  const DyadicGrid a = DyadicGrid::over(0.0, 1.0, 4);
  const DyadicGrid b = DyadicGrid::over(0.0, 1.0, 5);
  CHECK_THROWS_AS(radial_profile(kernel_matrix(family("haar"), 0, a, b)), ConfigError);
}

TEST_CASE("haar kernel cells") {
  const MRAFamily& haar = family("haar");
  CHECK(kernel_value(haar, 0, 0.3, 0.6) == doctest::Approx(1.0));
  CHECK(kernel_value(haar, 1, 0.3, 0.6) == 0.0);
  CHECK(kernel_value(haar, 2, 0.3, 0.3) == doctest::Approx(4.0));
}

TEST_CASE("haar radial profile is the unit indicator") {
  const MRAFamily& haar = family("haar");
  for (int j : {0, 3}) {
    const RadialBound rb = radial_profile(profile_kernel(haar, j));
    const double q = 1.0 / 32.0;
    for (std::size_t i = 0; i < rb.radii.size(); ++i) {
      if (rb.radii[i] < 1.0 - q) CHECK(rb.majorant[i] == doctest::Approx(1.0));
      if (rb.radii[i] >= 1.0 + q) CHECK(rb.majorant[i] == 0.0);
    }
  }
}

TEST_CASE("daubechies profile vanishes beyond its support") {
  const RadialBound rb = radial_profile(profile_kernel(family("daubechies:2"), 2));
  for (std::size_t i = 0; i < rb.radii.size(); ++i)
    if (rb.radii[i] >= 5.0) CHECK(std::abs(rb.majorant[i]) < 1e-10);
  const std::vector<int> js{0, 1, 2, 3, 4, 5, 6};
  const BoundReport rep = verify_convolution_bound(family("daubechies:2"), js);
  CHECK(rep.envelope.finite());
  CHECK(std::isfinite(rep.envelope.l1_mass));
}

TEST_CASE("haar bound over seven scales") {
  const std::vector<int> js{0, 1, 2, 3, 4, 5, 6};
  const BoundReport rep = verify_convolution_bound(family("haar"), js);
  CHECK(rep.collapse_defect < 0.02);
  CHECK(std::abs(rep.envelope.l1_mass - 2.0) <= 0.05);
}

TEST_CASE("shannon kernel has a harmonic tail") {
  const MRAFamily& shannon = family("shannon");
  const std::vector<int> js{0, 1, 2, 3, 4};
  const BoundReport rep = verify_convolution_bound(shannon, js);
  CHECK_FALSE(rep.passed);
  CHECK_FALSE(rep.envelope.finite());
  double worst = 0.0;
  for (std::size_t i = 0; i < rep.envelope.radii.size(); ++i)
    if (rep.envelope.radii[i] >= 1.0) worst = std::max(worst, rep.envelope.radii[i] * rep.envelope.majorant[i]);
  CHECK(worst < 1.0);
  const DecayFit fit = fit_decay(rep.envelope, DecayModel::algebraic, 1.0, RadiusRange{2.0, 40.0});
  CHECK(fit.r_squared > 0.9);
}

TEST_CASE("exponential model on a constant profile is degenerate") {
  const RadialBound rb = radial_profile(profile_kernel(family("haar"), 2));
  const DecayFit fit = fit_decay(rb, DecayModel::exponential, 1.0, RadiusRange{0.0, 0.95});
  CHECK(std::abs(fit.rate) < 1e-9);
  CHECK(fit.flagged);
}

TEST_CASE("two sum representations agree at random pairs") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> node(-1024, 2048);
  for (const char* spec : {"haar", "daubechies:2"}) {
    CAPTURE(spec);
    const MRAFamily& fam = family(spec);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
      const double x = node(rng) / 1024.0;
      const double y = node(rng) / 1024.0;
      worst = std::max(worst, std::abs(kernel_value_dual(fam, 2, 0, x, y) - kernel_value(fam, 2, x, y)));
    }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("kernel scale covariance") {
  const MRAFamily& db2 = family("daubechies:2");
  for (double x : {-0.5, 0.125, 0.75})
    for (double y : {-0.25, 0.0, 0.375, 1.0})
      CHECK(std::abs(kernel_value(db2, 2, x, y) - 2.0 * kernel_value(db2, 1, 2 * x, 2 * y)) < 1e-8);
}

TEST_CASE("kernel integral operators approach the identity") {
  const SampledFunction f = builtin_function("gaussian").sample();
  const RateReport r = sup_error_rates(f, family("daubechies:2"), 2, 8, {-2.0, 2.0});
  for (std::size_t i = 1; i < r.sup_errors.size(); ++i) CHECK(r.sup_errors[i] <= r.sup_errors[i - 1] + 1e-8);
}
