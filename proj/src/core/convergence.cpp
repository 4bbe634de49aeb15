// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#include "core/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/regression.hpp"

namespace waverate {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kOscillatingTerms = 60;

int resolve_level(int level) { return level > 0 ? level : default_grid_level() + 2; }

SampledFunction sample_oscillating(int level) {
  const DyadicGrid g = DyadicGrid::over(-1.0, 1.0, level);
  const std::size_t n = g.count();
  const double h = g.spacing();
  std::vector<double> cell(n - 1, 0.0);
  for (int k = 1; k <= kOscillatingTerms; ++k) {
    const double a = std::ldexp(1.0, -k);
    const double b = a + std::ldexp(1.0, -3 * k);
    const auto first = static_cast<std::size_t>(std::floor(g.position(a)));
    for (std::size_t i = first; i + 1 < n; ++i) {
      const double lo = std::max(a, g.at(i));
      const double hi = std::min(b, g.at(i + 1));
      if (hi <= lo) break;
      cell[i] += (hi - lo) / h;
    }
  }
  std::vector<double> right(n, 0.0), left(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) right[i] = cell[i];
  for (std::size_t i = 1; i < n; ++i) left[i] = cell[i - 1];
  return SampledFunction(g, std::move(right), DecayHint{}, std::move(left));
}

double sup_difference(const SampledFunction& p, const SampledFunction& f, const DyadicGrid& xs, double* quant) {
  double worst = 0.0, prev = 0.0, q = 0.0;
  for (std::size_t i = 0; i < xs.count(); ++i) {
    const double x = xs.at(i);
    const double er = std::abs(p.value(i) - f(x));
    double e = er;
    if (i > 0) e = std::max(e, std::abs(p.left_limit(i) - f.left_value(x)));
    if (i > 0) q = std::max(q, std::abs(er - prev));
    prev = er;
    worst = std::max(worst, e);
  }
  if (quant) *quant = q;
  return worst;
}

}  // namespace

const char* to_string(PointKind kind) {
  switch (kind) {
    case PointKind::continuity: return "continuity";
    case PointKind::lebesgue_discontinuous: return "lebesgue_discontinuous";
    case PointKind::jump: return "jump";
  }
  return "continuity";
}

SampledFunction TestFunction::sample(int level) const { return sampler(resolve_level(level)); }

std::vector<TestFunction> builtin_suite() {
  std::vector<TestFunction> suite;

  suite.push_back({"gaussian", "C-infinity", {-8.0, 8.0}, {},
                   {{0.37, PointKind::continuity, std::exp(-0.37 * 0.37)}, {0.0, PointKind::continuity, 1.0}},
                   [](int level) {
                     return sample(DyadicGrid::over(-8.0, 8.0, level), [](double x) { return std::exp(-x * x); },
                                   DecayHint::compact());
                   }});

  suite.push_back({"ramp", "piecewise smooth, jump at 1", {-1.0, 2.0}, {1.0},
                   {{1.0, PointKind::jump, kNaN}, {0.5, PointKind::continuity, 0.5}},
                   [](int level) {
                     const auto r = [](double x) { return (x >= 0.0 && x < 1.0) ? x : 0.0; };
                     const auto l = [](double x) { return (x > 0.0 && x <= 1.0) ? x : 0.0; };
                     return sample(DyadicGrid::over(-1.0, 2.0, level), r, l);
                   }});

  suite.push_back({"step", "piecewise constant, jump at 0", {-2.0, 2.0}, {0.0},
                   {{0.0, PointKind::jump, kNaN},
                    {-0.5, PointKind::continuity, 0.0},
                    {0.5, PointKind::continuity, 1.0}},
                   [](int level) {
                     const auto r = [](double x) { return x >= 0.0 ? 1.0 : 0.0; };
                     const auto l = [](double x) { return x > 0.0 ? 1.0 : 0.0; };
                     return sample(DyadicGrid::over(-2.0, 2.0, level), r, l);
                   }});

  suite.push_back({"cusp", "Hoelder 0.3 at 0", {-1.0, 1.0}, {},
                   {{0.0, PointKind::continuity, 0.0}, {0.5, PointKind::continuity, std::pow(0.5, 0.3)}},
                   [](int level) {
                     return sample(DyadicGrid::over(-1.0, 1.0, level),
                                   [](double x) { return std::pow(std::abs(x), 0.3); });
                   }});

  suite.push_back({"oscillating", "indicator of a set thinning at 0", {-1.0, 1.0}, {},
                   {{0.0, PointKind::lebesgue_discontinuous, 0.0}, {-0.5, PointKind::continuity, 0.0}},
                   sample_oscillating});

  suite.push_back({"sine", "C-infinity on [0, 3]", {0.0, 3.0}, {},
                   {{1.5, PointKind::continuity, std::sin(1.5)}},
                   [](int level) {
                     return sample(DyadicGrid::over(0.0, 3.0, level), [](double x) { return std::sin(x); });
                   }});
  return suite;
}

TestFunction builtin_function(const std::string& name) {
  for (TestFunction& tf : builtin_suite())
    if (tf.name == name) return tf;
  throw ConfigError("unknown test function '" + name + "'");
}

double oscillating_set_measure(double a, double b) {
  double m = 0.0;
  for (int k = 1; k <= kOscillatingTerms; ++k) {
    const double lo = std::ldexp(1.0, -k);
    const double hi = lo + std::ldexp(1.0, -3 * k);
    m += std::max(0.0, std::min(b, hi) - std::max(a, lo));
  }
  return m;
}

double lebesgue_average(const SampledFunction& f, double x, double r, double reference) {
  if (!(r > 0.0)) throw ConfigError("averaging radius must be positive");
  const DyadicGrid& g = f.grid();
  const double h = g.spacing();
  const double p0 = g.position(x - r), p1 = g.position(x + r);
  if (p0 < 0.0 || p1 > static_cast<double>(f.size() - 1) || p0 != std::floor(p0) || p1 != std::floor(p1))
    throw ConfigError("averaging interval must consist of whole cells of the function grid");
  double s = 0.0;
  for (auto i = static_cast<std::size_t>(p0); i < static_cast<std::size_t>(p1); ++i)
    s += 0.5 * h * (std::abs(f.value(i) - reference) + std::abs(f.left_limit(i + 1) - reference));
  return s / (2.0 * r);
}

std::vector<TracePoint> pointwise_trace(const SampledFunction& f, const MRAFamily& fam, double x, int j_lo,
                                        int j_hi) {
  if (j_hi < j_lo) throw ConfigError("empty j range");
  std::vector<TracePoint> out;
  for (int j = j_lo; j <= j_hi; ++j) out.push_back({j, project_at(f, fam, j, x)});
  return out;
}

RateReport sup_error_rates(const SampledFunction& f, const MRAFamily& fam, int j_lo, int j_hi, Window window,
                           const std::vector<double>& jumps) {
  if (j_hi < j_lo) throw ConfigError("empty j range");
  if (!(window.right > window.left)) throw ConfigError("empty window");
  const double margin = std::ldexp(1.0, -j_lo);
  for (double c : jumps)
    if (c > window.left - margin && c < window.right + margin) {
      std::ostringstream msg;
      msg << "window must stay " << margin << " away from the jump at " << c;
      throw ConfigError(msg.str());
    }
  const DyadicGrid xs = DyadicGrid::over(window.left, window.right, fam.level);
  RateReport rep;
  rep.family = fam.id();
  rep.window = window;
  std::vector<double> x, y;
  for (int j = j_lo; j <= j_hi; ++j) {
    double q = 0.0;
    const double e = sup_difference(project(f, fam, j, xs), f, xs, &q);
    rep.js.push_back(j);
    rep.sup_errors.push_back(e);
    rep.quantization.push_back(q);
    if (e > 0.0 && std::isfinite(e)) {
      x.push_back(j);
      y.push_back(std::log2(e));
    }
  }
  if (x.size() < 4) throw ComputeError("fewer than 4 usable j values for the rate regression");
  const LineFit fit = fit_line(x, y);
  rep.slope = -fit.slope;
  rep.intercept = fit.intercept;
  rep.r_squared = fit.r_squared;
  return rep;
}

RateReport sup_error_rates(const TestFunction& tf, const MRAFamily& fam, int j_lo, int j_hi, Window window,
                           int level) {
  RateReport rep = sup_error_rates(tf.sample(level), fam, j_lo, j_hi, window, tf.jumps);
  rep.function = tf.name;
  return rep;
}

std::vector<TracePoint> lp_error_trace(const SampledFunction& f, const MRAFamily& fam, double p, int j_lo, int j_hi,
                                       Window window) {
  if (j_hi < j_lo) throw ConfigError("empty j range");
  if (!(p == 1.0 || p == 2.0 || std::isinf(p))) throw ConfigError("p must be 1, 2 or infinity");
  const DyadicGrid xs = DyadicGrid::over(window.left, window.right, f.grid().level);
  std::vector<TracePoint> out;
  for (int j = j_lo; j <= j_hi; ++j) {
    const SampledFunction pj = project(f, fam, j, xs);
    std::vector<double> right(xs.count()), left(xs.count());
    for (std::size_t i = 0; i < xs.count(); ++i) {
      const double x = xs.at(i);
      right[i] = pj.value(i) - f(x);
      left[i] = pj.left_limit(i) - f.left_value(x);
    }
    left[0] = right[0];
    const SampledFunction diff(xs, std::move(right), DecayHint{}, std::move(left));
    out.push_back({j, lp_norm(diff, p)});
  }
  return out;
}

RobustnessReport order_robustness(const ExpansionCoefficients& coeffs, const MRAFamily& fam,
                                  const std::vector<NamedSchedule>& schedules, const std::vector<double>& points,
                                  double tolerance) {
  if (schedules.size() < 2) throw ConfigError("order robustness needs at least two schedules");
  for (const NamedSchedule& s : schedules) {
    const ScheduleReport v = validate_schedule(s.schedule);
    if (!v.valid) {
      std::ostringstream msg;
      msg << "schedule '" << s.name << "' exceeds its bounded range " << s.schedule.bounded_range << " (span "
          << v.worst_range << " after " << v.worst_prefix << " terms)";
      throw ConfigError(msg.str());
    }
  }
  RobustnessReport rep;
  rep.fractions = {0.25, 0.5, 0.75, 1.0};
  rep.points = points;
  for (const NamedSchedule& s : schedules) {
    rep.schedules.push_back(s.name);
    auto& per = rep.values.emplace_back();
    const std::size_t n = s.schedule.terms.size();
    for (double rho : rep.fractions) {
      const auto prefix = static_cast<std::size_t>(std::floor(rho * static_cast<double>(n)));
      per.push_back(partial_sum_at(coeffs, fam, s.schedule, points, prefix));
    }
  }
  for (std::size_t r = 0; r < rep.fractions.size(); ++r) {
    double spread = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double lo = INFINITY, hi = -INFINITY;
      for (const auto& per : rep.values) {
        lo = std::min(lo, per[r][i]);
        hi = std::max(hi, per[r][i]);
      }
      spread = std::max(spread, hi - lo);
    }
    rep.dispersion.push_back(spread);
  }
  rep.final_difference = rep.dispersion.back();
  rep.agreed = rep.final_difference <= tolerance;
  return rep;
}

}  // namespace waverate
