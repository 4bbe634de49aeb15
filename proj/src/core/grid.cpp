// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#include "core/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace waverate {

DyadicGrid DyadicGrid::over(double left, double right, int level) {
  if (!std::isfinite(left) || !std::isfinite(right) || !(right > left)) {
    std::ostringstream msg;
    msg << "grid needs finite left < right, got [" << left << ", " << right << "]";
    throw ConfigError(msg.str());
  }
  if (level < 0 || level > 40) throw ConfigError("grid level must lie in 0..40");
  const double cells = std::ldexp(right - left, level);
  if (cells != std::nearbyint(cells)) {
    std::ostringstream msg;
    msg << "interval [" << left << ", " << right << "] is not a whole number of cells at level " << level;
    throw ConfigError(msg.str());
  }
  return DyadicGrid{left, right, level};
}

DyadicGrid covering_grid(double left, double right, int level) {
  const double lo = std::ldexp(std::floor(std::ldexp(left, level)), -level);
  double hi = std::ldexp(std::ceil(std::ldexp(right, level)), -level);
  if (!(hi > lo)) hi = lo + std::ldexp(1.0, -level);
  return DyadicGrid::over(lo, hi, level);
}

const char* to_string(DecayKind kind) {
  switch (kind) {
    case DecayKind::compact: return "compact";
    case DecayKind::exponential: return "exponential";
    case DecayKind::algebraic: return "algebraic";
    case DecayKind::none: return "none";
  }
  return "none";
}

DecayKind decay_kind_from_string(const std::string& name) {
  if (name == "compact") return DecayKind::compact;
  if (name == "exponential") return DecayKind::exponential;
  if (name == "algebraic") return DecayKind::algebraic;
  if (name == "none") return DecayKind::none;
  throw ConfigError("unknown decay kind '" + name + "'");
}

SampledFunction::SampledFunction(DyadicGrid grid, std::vector<double> values, DecayHint decay,
                                 std::vector<double> left_limits)
    : grid_(grid), values_(std::move(values)), left_(std::move(left_limits)), decay_(decay) {
  if (values_.size() != grid_.count()) throw ConfigError("sample count does not match the grid");
  if (!left_.empty() && left_.size() != values_.size())
    throw ConfigError("left-limit count does not match the grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw ComputeError("sampled function has a non-finite value");
  for (double v : left_)
    if (!std::isfinite(v)) throw ComputeError("sampled function has a non-finite left limit");
  if (!left_.empty() && std::equal(left_.begin(), left_.end(), values_.begin())) left_.clear();
  if (decay_.kind == DecayKind::compact) {
    // The outward limits must vanish so that zero extension is consistent.
    constexpr double kTol = 1e-9;
    if (std::abs(left_limit(0)) > kTol || std::abs(values_.back()) > kTol)
      throw ComputeError("compactly supported function does not vanish at its grid endpoints");
  }
}

double SampledFunction::integral() const {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) sum += values_[i] + left_limit(i + 1);
  return 0.5 * grid_.spacing() * sum;
}

double SampledFunction::moment(int m, double center) const {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
    const double a = std::pow(grid_.at(i) - center, m);
    const double b = std::pow(grid_.at(i + 1) - center, m);
    sum += a * values_[i] + b * left_limit(i + 1);
  }
  return 0.5 * grid_.spacing() * sum;
}

double SampledFunction::l2_norm() const { return std::sqrt(inner_product(*this, *this)); }
double SampledFunction::l1_norm() const { return lp_norm(*this, 1.0); }
double SampledFunction::sup_norm() const { return lp_norm(*this, std::numeric_limits<double>::infinity()); }

double inner_product(const SampledFunction& f, const SampledFunction& g) {
  const bool f_finer = f.grid().level >= g.grid().level;
  const SampledFunction& fine = f_finer ? f : g;
  const SampledFunction& other = f_finer ? g : f;
  const double a = std::max(f.grid().left, g.grid().left);
  const double b = std::min(f.grid().right, g.grid().right);
  if (!(a < b)) return 0.0;

  const DyadicGrid& grid = fine.grid();
  const auto i0 = static_cast<std::size_t>(std::ceil(grid.position(a)));
  const auto i1 = static_cast<std::size_t>(std::floor(grid.position(b)));
  double sum = 0.0;
  for (std::size_t i = i0; i < i1; ++i) {
    const double xl = grid.at(i);
    const double xr = grid.at(i + 1);
    sum += fine.value(i) * other(xl) + fine.left_limit(i + 1) * other.left_value(xr);
  }
  return 0.5 * grid.spacing() * sum;
}

double lp_norm(const SampledFunction& f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      m = std::max({m, std::abs(f.value(i)), std::abs(f.left_limit(i))});
    return m;
  }
  if (!(p >= 1.0)) throw ConfigError("Lp norm needs p >= 1");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i)
    sum += std::pow(std::abs(f.value(i)), p) + std::pow(std::abs(f.left_limit(i + 1)), p);
  return std::pow(0.5 * f.grid().spacing() * sum, 1.0 / p);
}

}  // namespace waverate
