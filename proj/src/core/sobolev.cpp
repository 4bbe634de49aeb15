// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#include "core/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace waverate {

namespace {

constexpr double kGrowthRatio = 0.95;
constexpr int kMinShells = 4;

/// Linear interpolation of a tabulated quantity on one half-axis.
class HalfAxis {
 public:
  HalfAxis(const std::vector<double>& xi, std::vector<double> y, bool positive) {
    for (std::size_t i = 0; i < xi.size(); ++i) {
      if (positive ? xi[i] > 0.0 : xi[i] < 0.0) {
        x_.push_back(std::abs(xi[i]));
        y_.push_back(y[i]);
      }
    }
    if (!positive) {
      std::reverse(x_.begin(), x_.end());
      std::reverse(y_.begin(), y_.end());
    }
  }

  double min() const { return x_.empty() ? INFINITY : x_.front(); }
  double max() const { return x_.empty() ? 0.0 : x_.back(); }

  double operator()(double a) const {
    auto it = std::lower_bound(x_.begin(), x_.end(), a);
    if (it == x_.end()) return y_.back();
    const std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (*it == a || i == 0) return y_[i];
    const double t = (a - x_[i - 1]) / (x_[i] - x_[i - 1]);
    return y_[i - 1] + t * (y_[i] - y_[i - 1]);
  }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

void check_arguments(const SampledSpectrum& spec, double s, double epsilon) {
  if (!(s > 0.0)) throw ConfigError("criterion order s must be positive");
  if (!(epsilon > 0.0) || epsilon > std::numbers::pi) throw ConfigError("epsilon must lie in (0, pi]");
  if (spec.xi.size() != spec.values.size() || spec.xi.empty()) throw ConfigError("malformed spectrum");
}

IntegralResult integrate_shells(const SampledSpectrum& spec, double s, double epsilon,
                                const std::vector<double>& integrand_numerator) {
  const HalfAxis pos(spec.xi, integrand_numerator, true);
  const HalfAxis neg(spec.xi, integrand_numerator, false);
  const double reach = std::max(pos.min(), neg.min());
  if (reach > kCriterionResolution * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "insufficient resolution: spectrum starts at xi = " << reach << ", need " << kCriterionResolution;
    throw ComputeError(msg.str());
  }
  if (std::min(pos.max(), neg.max()) < epsilon * (1.0 - 1e-12))
    throw ComputeError("insufficient resolution: spectrum does not reach epsilon");
  const int shells = static_cast<int>(std::floor(std::log2(epsilon / reach) + 1e-9));
  if (shells < kMinShells) throw ComputeError("insufficient resolution: too few frequency shells");

  IntegralResult r;
  r.s = s;
  r.epsilon = epsilon;
  const double exponent = -(2.0 * s + 1.0);
  constexpr int kSub = 32;
  double cumulative = 0.0;
  long negative = 0, samples = 0;
  for (int m = 0; m < shells; ++m) {
    const double hi = std::ldexp(epsilon, -m);
    const double lo = 0.5 * hi;
    const double step = (hi - lo) / kSub;
    double signed_sum = 0.0, abs_sum = 0.0;
    for (int i = 0; i <= kSub; ++i) {
      const double a = (i == kSub) ? hi : lo + i * step;
      const double w = (i == 0 || i == kSub) ? 0.5 * step : step;
      const double num = pos(a) + neg(a);
      const double val = num * std::pow(a, exponent);
      signed_sum += w * val;
      abs_sum += w * std::abs(val);
      ++samples;
      if (val < 0.0) ++negative;
    }
    r.value += signed_sum;
    cumulative += abs_sum;
    r.shell_sums.push_back(abs_sum);
    r.refinement_trace.emplace_back(m, cumulative);
  }
  r.abs_value = cumulative;
  r.negative_fraction = static_cast<double>(negative) / static_cast<double>(samples);

  const auto& sh = r.shell_sums;
  const std::size_t n = sh.size();
  bool growing = true;
  for (std::size_t i = n - 2; i < n; ++i) {
    if (sh[i - 1] <= 0.0 || sh[i] < kGrowthRatio * sh[i - 1]) growing = false;
  }
  r.diverged = growing;
  return r;
}

}  // namespace

IntegralResult wavelet_criterion(const SampledSpectrum& spec, double s, double epsilon) {
  check_arguments(spec, s, epsilon);
  std::vector<double> num(spec.values.size());
  std::transform(spec.values.begin(), spec.values.end(), num.begin(), [](Complex v) { return std::norm(v); });
  return integrate_shells(spec, s, epsilon, num);
}

IntegralResult scaling_criterion(const SampledSpectrum& spec, double s, double epsilon) {
  check_arguments(spec, s, epsilon);
  std::vector<double> num(spec.values.size());
  if (spec.unit_defect.size() == spec.values.size()) {
    std::transform(spec.unit_defect.begin(), spec.unit_defect.end(), num.begin(), [](double d) { return -d; });
  } else {
    std::transform(spec.values.begin(), spec.values.end(), num.begin(),
                   [](Complex v) { return 2.0 * std::numbers::pi * std::norm(v) - 1.0; });
  }
  return integrate_shells(spec, s, epsilon, num);
}

const char* to_string(CriterionKind kind) {
  return kind == CriterionKind::wavelet ? "wavelet" : "scaling";
}

CriticalOrder critical_order(const SampledSpectrum& spec, CriterionKind kind, double epsilon, double lo, double hi,
                             double width) {
  if (!(lo > 0.0) || !(hi > lo) || !(width > 0.0)) throw ConfigError("invalid critical order search range");
  const auto verdict = [&](double s) {
    return kind == CriterionKind::wavelet ? wavelet_criterion(spec, s, epsilon).diverged
                                          : scaling_criterion(spec, s, epsilon).diverged;
  };
  CriticalOrder out;
  out.kind = kind;
  out.epsilon = epsilon;
  double a = lo, b = hi;
  while (b - a > width) {
    const double mid = 0.5 * (a + b);
    const bool d = verdict(mid);
    out.verdicts.emplace_back(mid, d);
    (d ? b : a) = mid;
  }
  for (const auto& [s1, d1] : out.verdicts)
    for (const auto& [s2, d2] : out.verdicts)
      if (s1 < s2 && d1 && !d2) throw ComputeError("criterion verdicts are not monotone in s");
  out.bracket_lo = a;
  out.bracket_hi = b;
  out.s_star = 0.5 * (a + b);
  if (a == lo) out.below_range = verdict(lo);
  if (b == hi) out.above_range = !verdict(hi);
  return out;
}

ShellLayout default_shell_layout() { return ShellLayout{2.0, kCriterionResolution, 32}; }

CriticalOrder critical_order(const MRAFamily& fam, CriterionKind kind, double epsilon) {
  const ShellLayout layout = default_shell_layout();
  const SampledSpectrum spec =
      kind == CriterionKind::wavelet ? wavelet_shell_spectrum(fam, layout) : scaling_shell_spectrum(fam, layout);
  CriticalOrder out = critical_order(spec, kind, epsilon);
  out.family = fam.id();
  return out;
}

}  // namespace waverate
