// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "common.hpp"
#include "core/convergence.hpp"
#include "core/spline.hpp"

using namespace waverate;
using waverate::testing::family;

TEST_CASE("spline space layout") {
  const SplineSpace s = SplineSpace::make(3, 0.25, {0.0, 1.0});
  CHECK(s.basis_count == 6);
  CHECK(s.cells() == 4);
  for (double x : {0.6, 0.61, 0.9}) {
    double sum = 0.0;
    for (long i = 0; i < s.basis_count; ++i) sum += s.basis(i, x);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(s.basis(0, 1.5) == 0.0);
  CHECK_THROWS_AS(SplineSpace::make(9, 0.25, {0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(SplineSpace::make(2, 0.3, {0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(SplineSpace::make(2, -1.0, {0.0, 1.0}), ConfigError);
}

TEST_CASE("linear spline gram matrix") {
  const double h = 0.125;
  const Eigen::MatrixXd g = Eigen::MatrixXd(gram_matrix(SplineSpace::make(2, h, {0.0, 2.0})));
  const Eigen::Index mid = g.rows() / 2;
  CHECK(g(mid, mid - 1) == doctest::Approx(h / 6.0).epsilon(1e-13));
  CHECK(g(mid, mid) == doctest::Approx(4.0 * h / 6.0).epsilon(1e-13));
  CHECK(g(mid, mid + 1) == doctest::Approx(h / 6.0).epsilon(1e-13));
  CHECK(g(mid, mid + 2) == 0.0);
  CHECK((g - g.transpose()).norm() == 0.0);
}

TEST_CASE("cubic gram interior row") {
  const double h = 0.25;
  const Eigen::MatrixXd g = Eigen::MatrixXd(gram_matrix(SplineSpace::make(4, h, {0.0, 4.0})));
  const Eigen::Index mid = g.rows() / 2;
  const double expected[] = {1.0 / 5040, 120.0 / 5040, 1191.0 / 5040, 2416.0 / 5040};
  for (int d = 0; d <= 3; ++d) CHECK(g(mid, mid - 3 + d) == doctest::Approx(h * expected[d]).epsilon(1e-12));
}

TEST_CASE("piecewise constant best approximation is the cell average") {
  const SampledFunction f = sample(DyadicGrid::over(0.0, 1.0, 8), [](double x) { return x; });
  const SplineApproximation a = best_l2_spline(f, SplineSpace::make(1, 0.5, {0.0, 1.0}));
  REQUIRE(a.coefficients.size() == 2);
  CHECK(a.coefficients[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(a.coefficients[1] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(a(0.3) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(a.left_value(0.5) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("linear functions are reproduced") {
  const SampledFunction f = sample(DyadicGrid::over(0.0, 2.0, 8), [](double x) { return 3.0 * x - 1.0; });
  const SplineApproximation a = best_l2_spline(f, SplineSpace::make(2, 0.25, {0.0, 2.0}));
  CHECK(a.residual_l2 < 1e-12);
  CHECK(a(1.3) == doctest::Approx(2.9).epsilon(1e-12));
}

TEST_CASE("hat function is its own best approximation") {
  const SampledFunction f = sample(DyadicGrid::over(0.0, 4.0, 8), [](double x) { return std::max(0.0, 1.0 - std::abs(x - 2.0)); });
  const SplineApproximation a = best_l2_spline(f, SplineSpace::make(2, 1.0, {0.0, 4.0}));
  for (Eigen::Index i = 0; i < a.coefficients.size(); ++i)
    CHECK(a.coefficients[i] == doctest::Approx(i == 2 ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("residual is orthogonal to the space") {
  const SampledFunction f = builtin_function("sine").sample(12);
  const SplineApproximation a = best_l2_spline(f, SplineSpace::make(3, 0.125, {0.0, 3.0}));
  CHECK(a.orthogonality_defect < 1e-12);
  CHECK(a.condition_estimate > 1.0);
  const OptimalityReport r = perturbation_check(f, a);
  CHECK(r.trials == 20);
  CHECK(r.strictly_worse == 20);
  CHECK(r.min_increase > 0.0);
}

TEST_CASE("order one matches the haar projection") {
  const SampledFunction f = builtin_function("gaussian").sample(12);
  const SplineApproximation a = best_l2_spline(f, SplineSpace::make(1, 0.125, {-2.0, 2.0}));
  const MRAFamily& haar = family("haar");
  for (double x : {-1.9, -0.3, 0.0, 0.51, 1.7}) CHECK(std::abs(a(x) - project_at(f, haar, 3, x)) < 1e-12);
}

TEST_CASE("mesh halving rates") {
  const TestFunction sine = builtin_function("sine");
  const RateReport k2 = spline_convergence_study(sine, 2, {0.25, 0.125, 0.0625, 0.03125}, {0.0, 3.0}, 12);
  for (std::size_t i = 1; i < k2.sup_errors.size(); ++i)
    CHECK(k2.sup_errors[i - 1] / k2.sup_errors[i] == doctest::Approx(4.0).epsilon(0.05));
  CHECK(k2.slope == doctest::Approx(2.0).epsilon(0.02));
  const RateReport k1 = spline_convergence_study(builtin_function("gaussian"), 1, {0.25, 0.125, 0.0625, 0.03125},
                                                 {-2.0, 2.0}, 12);
  CHECK(k1.slope == doctest::Approx(1.0).epsilon(0.05));
  CHECK_THROWS_AS(spline_convergence_study(sine, 2, {0.25, 0.2}, {0.0, 3.0}, 12), ConfigError);
}

TEST_CASE("knots must be nodes of the tabulation") {
  const SampledFunction f = builtin_function("sine").sample(10);
  CHECK_THROWS_AS(best_l2_spline(f, SplineSpace::make(2, 0.1, {0.0, 3.0})), ComputeError);
  CHECK_THROWS_AS(best_l2_spline(f, SplineSpace::make(2, 1.0 / 512, {0.0, 3.0})), ComputeError);
}

TEST_CASE("piecewise constant gram is diagonal") {
  const double h = 0.25;
  const Eigen::MatrixXd g = Eigen::MatrixXd(gram_matrix(SplineSpace::make(1, h, {0.0, 2.0})));
  CHECK((g - h * Eigen::MatrixXd::Identity(g.rows(), g.cols())).norm() < 1e-15);
}

TEST_CASE("a basis function is its own best approximation") {
  const SplineSpace space = SplineSpace::make(2, 0.25, {0.0, 2.0});
  const SampledFunction b3 = sample(DyadicGrid::over(0.0, 2.0, 8), [&](double x) { return space.basis(3, x); });
  const SplineApproximation a = best_l2_spline(b3, space);
  for (Eigen::Index i = 0; i < a.coefficients.size(); ++i) CHECK(std::abs(a.coefficients[i] - (i == 3 ? 1.0 : 0.0)) < 1e-10);
}

TEST_CASE("identity on the unit interval") {
  const SampledFunction f = sample(DyadicGrid::over(0.0, 1.0, 10), [](double x) { return x; });
  const SplineApproximation a = best_l2_spline(f, SplineSpace::make(2, 0.125, {0.0, 1.0}));
  for (double x = 0.0; x < 1.0; x += 1.0 / 97) CHECK(std::abs(a(x) - x) < 1e-8);
}

TEST_CASE("spline trace near a jump") {
  const SampledFunction step = builtin_function("step").sample(12);
  const SplineApproximation a = best_l2_spline(step, SplineSpace::make(2, std::ldexp(1.0, -8), {-1.0, 1.0}));
  const double x = 0.1 + std::ldexp(1.0, -8) / 3.0;
  CHECK(std::abs(a(x) - 1.0) < 1e-2);
  CHECK(std::abs(a(-x)) < 1e-2);
}
