// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <numbers>
#include <vector>

#include "common.hpp"
#include "core/bspline.hpp"
#include "core/filters.hpp"
#include "core/serialize.hpp"

using namespace waverate;
using waverate::testing::family;

TEST_CASE("daubechies two-tap and four-tap filters") {
  const double r2 = std::numbers::sqrt2;
  const std::vector<double> h1 = daubechies_lowpass(1);
  REQUIRE(h1.size() == 2);
  CHECK(h1[0] == doctest::Approx(1.0 / r2).epsilon(1e-15));
  CHECK(h1[1] == doctest::Approx(1.0 / r2).epsilon(1e-15));

  const double s3 = std::sqrt(3.0);
  std::vector<double> expected{(1 + s3) / (4 * r2), (3 + s3) / (4 * r2), (3 - s3) / (4 * r2), (1 - s3) / (4 * r2)};
  std::vector<double> h2 = daubechies_lowpass(2);
  REQUIRE(h2.size() == 4);
  if (std::abs(h2[0] - expected[0]) > 1e-6) std::reverse(h2.begin(), h2.end());
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(h2[i] - expected[i]) < 1e-14);
}

TEST_CASE("filter identities") {
  for (int n = 1; n <= 10; ++n) {
    const FilterPair f = FilterPair::from_lowpass(daubechies_lowpass(n), 0);
    CHECK(f.sum_defect() < 1e-13);
    CHECK(f.orthonormality_defect() < 1e-13);
    CHECK(f.mirror_defect() < 1e-13);
  }
  CHECK_THROWS_AS(daubechies_lowpass(11), ConfigError);
  CHECK_THROWS_AS(FilterPair::from_lowpass({1.0, 0.5}, 0).validate(), ConfigError);
}

TEST_CASE("b-spline gram sequences") {
  const std::vector<double> g1 = bspline_gram_sequence(1);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0] == doctest::Approx(1.0));
  const std::vector<double> g2 = bspline_gram_sequence(2);
  REQUIRE(g2.size() == 3);
  CHECK(g2[0] == doctest::Approx(1.0 / 6.0));
  CHECK(g2[1] == doctest::Approx(2.0 / 3.0));
  CHECK(g2[2] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("cardinal b-splines") {
  CHECK(cardinal_bspline(1, 0.0) == 1.0);
  CHECK(cardinal_bspline(1, 1.0) == 0.0);
  CHECK(cardinal_bspline_left(1, 1.0) == 1.0);
  CHECK(cardinal_bspline(2, 1.0) == doctest::Approx(1.0));
  CHECK(cardinal_bspline(2, 0.5) == doctest::Approx(0.5));
  CHECK(cardinal_bspline(3, 1.5) == doctest::Approx(0.75));
  CHECK(cardinal_bspline(4, 2.0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("haar scaling function and wavelet") {
  const MRAFamily& haar = family("haar");
  CHECK(haar.phi(0.5) == doctest::Approx(1.0));
  CHECK(haar.phi(1.0) == 0.0);
  CHECK(haar.phi.left_value(1.0) == doctest::Approx(1.0));
  CHECK(std::abs(haar.psi(0.25)) == doctest::Approx(1.0));
  CHECK(haar.psi(0.25) == doctest::Approx(-haar.psi(0.75)));
  CHECK(haar.vanishing_moments == 1);
  CHECK(haar.decay_class.kind == DecayKind::compact);
}

TEST_CASE("invariants of the standard families") {
  for (const char* spec : {"haar", "daubechies:2", "daubechies:3", "battle_lemarie:2"}) {
    CAPTURE(spec);
    const InvariantReport r = check_invariants(family(spec));
    CHECK(r.passed());
    CHECK(r.phi_integral_defect < 1e-8);
    CHECK(r.orthonormality_defect < 1e-6);
  }
}

TEST_CASE("daubechies wavelet has vanishing moments") {
  const MRAFamily& db3 = family("daubechies:3");
  CHECK(db3.vanishing_moments == 3);
  for (int m = 0; m < 3; ++m) CHECK(std::abs(db3.psi.moment(m)) < 1e-6);
  CHECK(db3.phi.grid().left == 0.0);
  CHECK(db3.phi.grid().right == 5.0);
}

TEST_CASE("battle-lemarie family decays exponentially") {
  const MRAFamily& bl = family("battle_lemarie:2");
  CHECK(bl.decay_class.kind == DecayKind::exponential);
  CHECK(bl.decay_class.rate > 0.0);
  CHECK(bl.phi.l2_norm() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("family specs") {
  CHECK_THROWS_AS(make_family_from_spec("morlet"), ConfigError);
  CHECK_THROWS_AS(make_family_from_spec("daubechies"), ConfigError);
  CHECK_THROWS_AS(make_family_from_spec("daubechies:x"), ConfigError);
  CHECK_THROWS_AS(make_family_from_spec("daubechies:11"), ConfigError);
  CHECK(family("daubechies:2").id() == "daubechies:2");
  CHECK(family("haar").id() == "haar");
}

TEST_CASE("grid level override") {
  CHECK(default_grid_level() == 13);
  ::setenv("WAVERATE_GRID_LEVEL", "9", 1);
  CHECK(default_grid_level() == 9);
  ::setenv("WAVERATE_GRID_LEVEL", "40", 1);
  CHECK_THROWS_AS(default_grid_level(), ConfigError);
  ::unsetenv("WAVERATE_GRID_LEVEL");
}

TEST_CASE("coarse daubechies tabulation fails its invariants") {
  CHECK_THROWS_AS(make_family("daubechies", 2, 8), ComputeError);
  CHECK_NOTHROW(make_family("haar", 0, 8));
}

TEST_CASE("family document round trip") {
  const MRAFamily& db2 = family("daubechies:2");
  const std::string doc = family_to_json(db2);
  const MRAFamily back = family_from_json(doc);
  CHECK(back.id() == db2.id());
  CHECK(back.level == db2.level);
  REQUIRE(back.phi.size() == db2.phi.size());
  CHECK(std::equal(back.phi.values().begin(), back.phi.values().end(), db2.phi.values().begin()));
  CHECK(std::equal(back.psi.values().begin(), back.psi.values().end(), db2.psi.values().begin()));
  CHECK(family_to_json(back) == doc);
}

TEST_CASE("tampered family document is rejected") {
  Json doc = parse_json(family_to_json(family("haar")));
  doc["values"][3] = 5.0;
  CHECK_THROWS_AS(family_from_json(render_json(doc)), ComputeError);
  CHECK_THROWS_AS(family_from_json("{\"name\": 3}"), ConfigError);
}

TEST_CASE("haar closed forms") {
  const MRAFamily& haar = family("haar");
  for (double x : {0.0, 0.2, 0.49, 0.5, 0.8, 0.999}) {
    CHECK(haar.phi(x) == 1.0);
    CHECK(haar.psi(x) == (x < 0.5 ? 1.0 : -1.0));
  }
  CHECK(haar.phi(-0.01) == 0.0);
  CHECK(haar.psi(1.2) == 0.0);
}

TEST_CASE("daubechies one coincides with haar") {
  const MRAFamily db1 = make_family("daubechies", 1);
  const MRAFamily& haar = family("haar");
  for (double x = -0.5; x <= 1.5; x += 1.0 / 64) {
    CHECK(std::abs(db1.phi(x) - haar.phi(x)) < 1e-12);
    CHECK(std::abs(db1.psi(x) - haar.psi(x)) < 1e-12);
  }
}

TEST_CASE("daubechies two scaling function") {
  const MRAFamily& db2 = family("daubechies:2");
  CHECK(db2.phi.grid().left == 0.0);
  CHECK(db2.phi.grid().right == 3.0);
  CHECK(std::abs(db2.phi.integral() - 1.0) < 1e-8);
  REQUIRE(db2.filter.has_value());
  double sum = 0.0;
  for (double h : db2.filter->lowpass) sum += h;
  CHECK(std::abs(sum - std::numbers::sqrt2) < 1e-14);
  CHECK(db2.phi(1.0) == doctest::Approx((1.0 + std::sqrt(3.0)) / 2.0).epsilon(1e-6));
  for (double x : {0.125, 0.3, 0.77}) {
    double p = 0.0;
    for (int k = -3; k <= 3; ++k) p += db2.phi(x - k);
    CHECK(std::abs(p - 1.0) < 1e-6);
  }
}

TEST_CASE("cascade fixed points") {
  const FilterPair haar = FilterPair::from_lowpass(daubechies_lowpass(1), 0);
  const SampledFunction phi = cascade_scaling(haar, 1, 6);
  for (double x = 0.0; x < 1.0; x += 1.0 / 64) CHECK(std::abs(phi(x) - 1.0) < 1e-15);
  CHECK(phi(1.0) == 0.0);

  const MRAFamily& db2 = family("daubechies:2");
  const FilterPair& f = *db2.filter;
  const DyadicGrid& g = db2.phi.grid();
  double step = 0.0;
  for (std::size_t i = 0; i < g.count(); ++i) {
    const double x = g.at(i);
    double refined = 0.0;
    for (long k = f.first(); k <= f.last(); ++k) refined += std::numbers::sqrt2 * f.h(k) * db2.phi(2.0 * x - k);
    step = std::max(step, std::abs(refined - db2.phi.value(i)));
  }
  CHECK(step < 1e-8);
}

TEST_CASE("daubechies two wavelet moments and norm") {
  const MRAFamily& db2 = family("daubechies:2");
  CHECK(std::abs(db2.psi.moment(1)) < 1e-6);
  CHECK(std::abs(db2.psi.l2_norm() - 1.0) < 1e-6);
}

TEST_CASE("vanishing moments are exact in number") {
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const MRAFamily& f = family("daubechies:" + std::to_string(n));
    for (int m = 0; m < n; ++m) CHECK(std::abs(f.psi.moment(m, 0.0)) < 1e-5);
    CHECK(std::abs(f.psi.moment(n, 0.0)) > 1e-3);
  }
}

TEST_CASE("dilated translates") {
  const MRAFamily& haar = family("haar");
  CHECK(evaluate_dilate(haar.phi, 0, 0, 0.5) == 1.0);
  CHECK(evaluate_dilate(haar.phi, 1, 0, 0.25) == doctest::Approx(std::numbers::sqrt2));
  CHECK(evaluate_dilate(haar.phi, 1, 1, 0.25) == 0.0);

  const MRAFamily& db2 = family("daubechies:2");
  for (int j = 0; j <= 3; ++j) {
    CAPTURE(j);
    const long k = j - 1;
    const double lo = std::ldexp(static_cast<double>(k), -j);
    const double hi = std::ldexp(static_cast<double>(k + 3), -j);
    const SampledFunction d = sample(DyadicGrid::over(lo, hi, 16), [&](double x) { return evaluate_dilate(db2.phi, j, k, x); });
    CHECK(std::abs(d.l2_norm() - 1.0) < 1e-5);
  }
}
