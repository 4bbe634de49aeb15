// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/grid.hpp"
#include "core/regression.hpp"

using namespace waverate;

TEST_CASE("dyadic grid geometry") {
  const DyadicGrid g = DyadicGrid::over(-1.0, 2.0, 3);
  CHECK(g.count() == 25);
  CHECK(g.spacing() == 0.125);
  CHECK(g.at(8) == 0.0);
  CHECK(g.position(0.5) == 12.0);
  CHECK_THROWS_AS(DyadicGrid::over(0.0, 0.3, 2), ConfigError);
  CHECK_THROWS_AS(DyadicGrid::over(1.0, 0.0, 2), ConfigError);
}

TEST_CASE("covering grid snaps outward") {
  const DyadicGrid g = covering_grid(-0.3, 0.3, 2);
  CHECK(g.left == -0.5);
  CHECK(g.right == 0.5);
}

TEST_CASE("piecewise linear evaluation with jumps") {
  const DyadicGrid g = DyadicGrid::over(0.0, 2.0, 1);
  SampledFunction f(g, {0.0, 1.0, 3.0, 3.0, 2.0}, {}, {0.0, 1.0, 1.0, 3.0, 2.0});
  CHECK(f(0.25) == doctest::Approx(0.5));
  CHECK(f(1.0) == 3.0);
  CHECK(f.left_value(1.0) == 1.0);
  CHECK(f(0.75) == doctest::Approx(1.0));
  CHECK(f(5.0) == 0.0);
  CHECK(f(-0.1) == 0.0);
}

TEST_CASE("trapezoid integrals and norms") {
  const DyadicGrid g = DyadicGrid::over(0.0, 1.0, 10);
  const SampledFunction sq = sample(g, [](double x) { return x * x; });
  const double h = g.spacing();
  CHECK(std::abs(sq.integral() - 1.0 / 3.0) <= h * h);
  const SampledFunction one = sample(DyadicGrid::over(0.0, 2.0, 4), [](double) { return 1.0; });
  CHECK(lp_norm(one, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(lp_norm(one, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(lp_norm(one, INFINITY) == 1.0);
  const SampledFunction lin = sample(g, [](double x) { return x; });
  CHECK(lin.moment(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("inner product of disjoint supports vanishes exactly") {
  const SampledFunction a = sample(DyadicGrid::over(0.0, 1.0, 5), [](double x) { return x; });
  const SampledFunction b = sample(DyadicGrid::over(2.0, 3.0, 6), [](double x) { return x; });
  CHECK(inner_product(a, b) == 0.0);
}

TEST_CASE("inner product across levels") {
  const SampledFunction a = sample(DyadicGrid::over(0.0, 1.0, 4), [](double) { return 1.0; });
  const SampledFunction b = sample(DyadicGrid::over(0.0, 1.0, 8), [](double x) { return x; });
  CHECK(inner_product(a, b) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("least squares line") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{3, 5, 7, 9};
  const LineFit fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK(fit.points == 4);
}
