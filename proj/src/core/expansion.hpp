// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/families.hpp"

namespace waverate {

struct Window {
  double left = 0.0;
  double right = 1.0;
};

/// Inclusive translate range; empty when first > last.
struct TranslateRange {
  long first = 0;
  long last = -1;
  long size() const noexcept { return last >= first ? last - first + 1 : 0; }
};

/// Translates k for which the support of g_jk meets the open window (left, right).
TranslateRange translate_range(const SampledFunction& g, int j, Window w);

/// <f, g_jk> by the trapezoid rule on the grid of f, with one-sided limits of both factors.
double dilate_inner_product(const SampledFunction& f, const SampledFunction& g, int j, long k);

struct ExpansionCoefficients {
  std::string family;
  int j0 = 0;
  int j1 = 1;
  Window window;
  std::map<long, double> b;
  std::map<std::pair<int, long>, double> a;

  double energy() const;
};

/// b_k = <f, phi_{j0,k}> and a_jk = <f, psi_jk> for j0 <= j < j1 over every
/// translate whose support meets the window.
ExpansionCoefficients analyze(const SampledFunction& f, const MRAFamily& fam, int j0, int j1, Window window);

/// sum_k c_k g_jk tabulated on xs (right values plus left limits when g jumps).
SampledFunction synthesize(const std::map<long, double>& coeffs, const SampledFunction& g, int j,
                           const DyadicGrid& xs);

/// Scaling coefficients of f at level j for every translate that reaches xs.
std::map<long, double> scaling_coefficients(const SampledFunction& f, const MRAFamily& fam, int j, Window window);

/// (P_j f)(x) = sum_k <f, phi_jk> phi_jk(x) on xs.
SampledFunction project(const SampledFunction& f, const MRAFamily& fam, int j, const DyadicGrid& xs);

/// (P_j f)(x) at a single point.
double project_at(const SampledFunction& f, const MRAFamily& fam, int j, double x);

struct ScheduleTerm {
  int j = 0;
  long k = 0;
  bool scaling = false;

  /// Scaling terms count as level j0 - 1 for range bookkeeping.
  int level() const noexcept { return scaling ? j - 1 : j; }
  auto operator<=>(const ScheduleTerm&) const = default;
};

struct SummationSchedule {
  std::vector<ScheduleTerm> terms;
  int bounded_range = 1;
};

struct ScheduleReport {
  bool valid = true;
  /// Largest span max - min + 1 of partially complete levels over all prefixes.
  int worst_range = 0;
  std::size_t worst_prefix = 0;
};

ScheduleReport validate_schedule(const SummationSchedule& schedule);

/// Scaling terms, then every k of j0, j0 + 1, ... in order.
SummationSchedule level_order_schedule(const ExpansionCoefficients& coeffs);
/// Round-robin over blocks of `span` consecutive levels; bounded_range = span.
SummationSchedule interleaved_schedule(const ExpansionCoefficients& coeffs, int span);
/// Level order with the first scaling term held back to the very end.
SummationSchedule deferred_schedule(const ExpansionCoefficients& coeffs, int bounded_range);

/// Accumulates the first `prefix` terms of the schedule on xs.
SampledFunction partial_sum(const ExpansionCoefficients& coeffs, const MRAFamily& fam,
                            const SummationSchedule& schedule, const DyadicGrid& xs,
                            std::size_t prefix = static_cast<std::size_t>(-1));

/// Same accumulation at arbitrary points.
std::vector<double> partial_sum_at(const ExpansionCoefficients& coeffs, const MRAFamily& fam,
                                   const SummationSchedule& schedule, std::span<const double> xs,
                                   std::size_t prefix = static_cast<std::size_t>(-1));

}  // namespace waverate
