// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "common.hpp"
#include "core/convergence.hpp"
#include "core/expansion.hpp"

using namespace waverate;
using waverate::testing::family;

namespace {

SampledFunction unit_ramp() { return sample(DyadicGrid::over(0.0, 1.0, 12), [](double x) { return x; }); }

}  // namespace

TEST_CASE("haar coefficients of the unit ramp") {
  const ExpansionCoefficients c = analyze(unit_ramp(), family("haar"), 0, 2, {0.0, 1.0});
  REQUIRE(c.b.count(0) == 1);
  CHECK(c.b.at(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(c.a.at({0, 0})) == doctest::Approx(0.25).epsilon(1e-12));
  const double a10 = c.a.at({1, 0});
  const double a11 = c.a.at({1, 1});
  CHECK(std::abs(a10) == doctest::Approx(0.125 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(a10 == doctest::Approx(a11).epsilon(1e-12));
}

TEST_CASE("haar projection is the dyadic cell average") {
  const SampledFunction f = unit_ramp();
  const MRAFamily& haar = family("haar");
  CHECK(project_at(f, haar, 2, 0.3) == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(project_at(f, haar, 3, 0.9) == doctest::Approx(0.9375).epsilon(1e-12));
  CHECK(project_at(f, haar, 0, 1.5) == 0.0);
}

TEST_CASE("translate ranges") {
  const MRAFamily& haar = family("haar");
  const TranslateRange r = translate_range(haar.phi, 0, {0.0, 2.0});
  CHECK(r.first == 0);
  CHECK(r.last == 1);
  const TranslateRange r2 = translate_range(family("daubechies:2").phi, 1, {0.0, 1.0});
  CHECK(r2.first == -2);
  CHECK(r2.last == 1);
}

TEST_CASE("scaling plus details telescope to the finer projection") {
  const MRAFamily& db2 = family("daubechies:2");
  const SampledFunction f = builtin_function("gaussian").sample();
  const ExpansionCoefficients c = analyze(f, db2, 2, 5, {-1.0, 1.0});
  const std::vector<double> xs{-0.5, -0.1875, 0.0, 0.3, 0.5};
  const std::vector<double> sum = partial_sum_at(c, db2, level_order_schedule(c), xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(sum[i] - project_at(f, db2, 5, xs[i])) < 1e-6);
}

TEST_CASE("coefficient energy obeys Bessel's inequality") {
  const SampledFunction f = builtin_function("gaussian").sample();
  const ExpansionCoefficients c = analyze(f, family("daubechies:2"), 0, 4, {-8.0, 8.0});
  const double norm2 = f.l2_norm() * f.l2_norm();
  CHECK(c.energy() <= norm2 * (1.0 + 1e-6));
  CHECK(c.energy() >= 0.99 * norm2);
}

TEST_CASE("synthesis matches projection on a grid") {
  const MRAFamily& haar = family("haar");
  const SampledFunction f = unit_ramp();
  const DyadicGrid xs = DyadicGrid::over(0.0, 1.0, 6);
  const SampledFunction p = project(f, haar, 3, xs);
  CHECK(p(0.5) == doctest::Approx(0.5625).epsilon(1e-12));
  CHECK(p.left_value(0.5) == doctest::Approx(0.4375).epsilon(1e-12));
}

TEST_CASE("summation schedules") {
  const ExpansionCoefficients c =
      analyze(builtin_function("gaussian").sample(), family("haar"), 0, 5, {-1.0, 1.0});
  REQUIRE(c.b.size() > 1);
  const ScheduleReport lo = validate_schedule(level_order_schedule(c));
  CHECK(lo.valid);
  CHECK(lo.worst_range <= 1);
  const SummationSchedule il = interleaved_schedule(c, 2);
  CHECK(il.bounded_range == 2);
  CHECK(validate_schedule(il).valid);
  CHECK(il.terms.size() == level_order_schedule(c).terms.size());
  CHECK_FALSE(validate_schedule(deferred_schedule(c, 2)).valid);
  CHECK_THROWS_AS(interleaved_schedule(c, 0), ConfigError);
}

TEST_CASE("partial sums over a prefix") {
  const MRAFamily& haar = family("haar");
  const ExpansionCoefficients c = analyze(unit_ramp(), haar, 0, 3, {0.0, 1.0});
  const SummationSchedule s = level_order_schedule(c);
  const std::vector<double> xs{0.3};
  CHECK(partial_sum_at(c, haar, s, xs, 0)[0] == 0.0);
  CHECK(partial_sum_at(c, haar, s, xs, 1)[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(partial_sum_at(c, haar, s, xs)[0] == doctest::Approx(0.3125).epsilon(1e-12));
}

TEST_CASE("invalid level ranges") {
  CHECK_THROWS_AS(analyze(unit_ramp(), family("haar"), 3, 3, {0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(analyze(unit_ramp(), family("haar"), 0, 3, {1.0, 1.0}), ConfigError);
}

TEST_CASE("elementary inner products") {
  const MRAFamily& haar = family("haar");
  const SampledFunction box = sample(DyadicGrid::over(0.0, 1.0, 6), [](double) { return 1.0; });
  CHECK(inner_product(haar.phi, haar.phi) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(inner_product(haar.phi, haar.psi)) < 1e-12);
  CHECK(std::abs(inner_product(unit_ramp(), box) - 0.5) < 1e-6);
}

TEST_CASE("analysis of basis functions") {
  const MRAFamily& haar = family("haar");
  const ExpansionCoefficients phi = analyze(haar.phi, haar, 0, 3, {0.0, 1.0});
  for (const auto& [k, v] : phi.b) CHECK(std::abs(v - (k == 0 ? 1.0 : 0.0)) < 1e-10);
  for (const auto& [jk, v] : phi.a) CHECK(std::abs(v) < 1e-10);
  const ExpansionCoefficients psi = analyze(haar.psi, haar, 0, 3, {0.0, 1.0});
  for (const auto& [k, v] : psi.b) CHECK(std::abs(v) < 1e-10);
  for (const auto& [jk, v] : psi.a) CHECK(std::abs(v - (jk == std::pair<int, long>{0, 0} ? 1.0 : 0.0)) < 1e-10);
}

TEST_CASE("parseval defect of the gaussian") {
  const SampledFunction f = builtin_function("gaussian").sample();
  const ExpansionCoefficients c = analyze(f, family("haar"), 0, 6, {-8.0, 8.0});
  const double defect = f.l2_norm() * f.l2_norm() - c.energy();
  CHECK(defect >= 0.0);
  CHECK(defect <= 1e-3);
}

TEST_CASE("projection onto the coarsest space") {
  const MRAFamily& haar = family("haar");
  const SampledFunction p = project(unit_ramp(), haar, 0, DyadicGrid::over(0.0, 1.0, 5));
  for (std::size_t i = 0; i + 1 < p.size(); ++i) CHECK(std::abs(p.value(i) - 0.5) < 1e-6);
  CHECK(std::abs(project_at(unit_ramp(), haar, 1, 0.3) - 0.25) < 1e-6);

  const MRAFamily& db2 = family("daubechies:2");
  const DyadicGrid xs = DyadicGrid::over(0.0, 3.0, 7);
  const SampledFunction q = project(db2.phi, db2, 0, xs);
  double err = 0.0;
  for (std::size_t i = 0; i < xs.count(); ++i) err = std::max(err, std::abs(q.value(i) - db2.phi(xs.at(i))));
  CHECK(err < 1e-6);
}

TEST_CASE("projections are idempotent") {
  const SampledFunction f = builtin_function("gaussian").sample();
  for (const char* spec : {"haar", "daubechies:2"}) {
    const MRAFamily& fam = family(spec);
    for (int j = 0; j <= 4; ++j) {
      CAPTURE(spec);
      CAPTURE(j);
      const DyadicGrid xs = DyadicGrid::over(-6.0, 6.0, fam.level);
      const SampledFunction p = project(f, fam, j, xs);
      double err = 0.0;
      for (double x = -2.0; x <= 2.0; x += 0.0625) err = std::max(err, std::abs(project_at(p, fam, j, x) - p(x)));
      CHECK(err < 1e-6);
    }
  }
}

TEST_CASE("finer projections approximate better in L2") {
  const SampledFunction f = builtin_function("gaussian").sample();
  const MRAFamily& db2 = family("daubechies:2");
  double previous = INFINITY;
  for (int j = 0; j <= 5; ++j) {
    const SampledFunction p = project(f, db2, j, f.grid());
    std::vector<double> diff(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) diff[i] = p.value(i) - f.value(i);
    const double e = SampledFunction(f.grid(), diff).l2_norm();
    CHECK(e <= previous + 1e-8);
    previous = e;
  }
}

TEST_CASE("wavelet coefficients are uniformly bounded") {
  const SampledFunction f = builtin_function("gaussian").sample();
  const MRAFamily& db2 = family("daubechies:2");
  const ExpansionCoefficients c = analyze(f, db2, 0, 5, {-2.0, 2.0});
  const double bound = f.sup_norm() * db2.psi.l1_norm() + 1e-6;
  for (const auto& [jk, v] : c.a) CHECK(std::abs(v) * std::exp2(0.5 * jk.first) <= bound);
}

TEST_CASE("consecutive projections differ by one detail level") {
  const SampledFunction f = builtin_function("gaussian").sample();
  const MRAFamily& db2 = family("daubechies:2");
  const ExpansionCoefficients c = analyze(f, db2, 2, 3, {-1.0, 1.0});
  std::map<long, double> details;
  for (const auto& [jk, v] : c.a) details[jk.second] = v;
  const DyadicGrid xs = DyadicGrid::over(-0.5, 0.5, 6);
  const SampledFunction q = synthesize(details, db2.psi, 2, xs);
  for (std::size_t i = 0; i < xs.count(); ++i) {
    const double x = xs.at(i);
    CHECK(std::abs(project_at(f, db2, 3, x) - project_at(f, db2, 2, x) - q.value(i)) < 1e-6);
  }
}

TEST_CASE("empty and reordered schedules") {
  const MRAFamily& haar = family("haar");
  const SampledFunction f = builtin_function("gaussian").sample();
  const ExpansionCoefficients c = analyze(f, haar, 0, 4, {-1.0, 1.0});
  const DyadicGrid xs = DyadicGrid::over(-1.0, 1.0, 6);
  SummationSchedule empty;
  const SampledFunction zero = partial_sum(c, haar, empty, xs);
  for (std::size_t i = 0; i < zero.size(); ++i) CHECK(zero.value(i) == 0.0);
  const SampledFunction a = partial_sum(c, haar, level_order_schedule(c), xs);
  const SampledFunction b = partial_sum(c, haar, interleaved_schedule(c, 3), xs);
  const SampledFunction p = project(f, haar, 4, xs);
  for (std::size_t i = 0; i + 1 < xs.count(); ++i) {
    CHECK(std::abs(a.value(i) - b.value(i)) < 1e-10);
    CHECK(std::abs(a.value(i) - p.value(i)) < 1e-8);
  }
}

TEST_CASE("range of alternating schedules") {
  SummationSchedule s;
  for (long k = 0; k < 4; ++k) {
    s.terms.push_back({0, k, false});
    s.terms.push_back({5, k, false});
  }
  s.bounded_range = 6;
  ScheduleReport r = validate_schedule(s);
  CHECK(r.worst_range == 6);
  CHECK(r.valid);
  s.bounded_range = 5;
  CHECK_FALSE(validate_schedule(s).valid);

  SummationSchedule lagging;
  const int m = 2;
  lagging.bounded_range = m;
  for (long k = 0; k < 3; ++k) lagging.terms.push_back({0, k, false});
  for (int j = 1; j <= m + 1; ++j) lagging.terms.push_back({j, 0, false});
  lagging.terms.push_back({0, 3, false});
  for (int j = 1; j <= m + 1; ++j) lagging.terms.push_back({j, 1, false});
  CHECK(validate_schedule(lagging).worst_range == m + 2);
  CHECK_FALSE(validate_schedule(lagging).valid);
}
