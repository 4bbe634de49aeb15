// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "core/expansion.hpp"

namespace waverate {

enum class PointKind { continuity, lebesgue_discontinuous, jump };

const char* to_string(PointKind kind);

struct MarkedPoint {
  double x = 0.0;
  PointKind kind = PointKind::continuity;
  /// NaN at jumps.
  double reference = 0.0;
};

struct TestFunction {
  std::string name;
  std::string smoothness;
  /// Support window of the tabulation; the function is zero outside.
  Window domain;
  std::vector<double> jumps;
  std::vector<MarkedPoint> marked;
  std::function<SampledFunction(int level)> sampler;

  /// Tabulation at `level` (default: family grid level + 2).
  SampledFunction sample(int level = 0) const;
};

/// gaussian, ramp, step, cusp, oscillating, sine.
std::vector<TestFunction> builtin_suite();
TestFunction builtin_function(const std::string& name);

/// Measure of E = U_{n >= 1} [2^-n, 2^-n (1 + 4^-n)] inside [a, b].
double oscillating_set_measure(double a, double b);

/// (2r)^-1 int_{x-r}^{x+r} |f(y) - reference| dy on the grid of f.
double lebesgue_average(const SampledFunction& f, double x, double r, double reference);

struct TracePoint {
  int j = 0;
  double value = 0.0;
};

/// (P_j f)(x) for j_lo <= j <= j_hi.
std::vector<TracePoint> pointwise_trace(const SampledFunction& f, const MRAFamily& fam, double x, int j_lo, int j_hi);

struct RateReport {
  std::string family;
  std::string function;
  Window window;
  std::vector<int> js;
  std::vector<double> sup_errors;
  /// Largest error change between neighbouring evaluation nodes per j.
  std::vector<double> quantization;
  /// Decay rate r in sup_error ~ 2^{-j r}, i.e. minus the fitted slope of log2 error against j.
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Sup of |P_j f - f| over the family-level grid on the window, both one-sided limits included.
RateReport sup_error_rates(const TestFunction& tf, const MRAFamily& fam, int j_lo, int j_hi, Window window,
                           int level = 0);
RateReport sup_error_rates(const SampledFunction& f, const MRAFamily& fam, int j_lo, int j_hi, Window window,
                           const std::vector<double>& jumps = {});

/// Discrete L^p norm (p = 1, 2 or infinity) of P_j f - f on the grid of f restricted to the window.
std::vector<TracePoint> lp_error_trace(const SampledFunction& f, const MRAFamily& fam, double p, int j_lo, int j_hi,
                                       Window window);

struct NamedSchedule {
  std::string name;
  SummationSchedule schedule;
};

struct RobustnessReport {
  std::vector<std::string> schedules;
  std::vector<double> fractions;
  std::vector<double> points;
  /// values[s][r][i]: partial sum of schedule s after fraction r at point i.
  std::vector<std::vector<std::vector<double>>> values;
  /// Per fraction, max over points of the spread across schedules.
  std::vector<double> dispersion;
  double final_difference = 0.0;
  bool agreed = false;
};

/// Throws ConfigError if a schedule fails validation.
RobustnessReport order_robustness(const ExpansionCoefficients& coeffs, const MRAFamily& fam,
                                  const std::vector<NamedSchedule>& schedules, const std::vector<double>& points,
                                  double tolerance = 1e-10);

}  // namespace waverate
