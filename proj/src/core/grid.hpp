// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace waverate {

/// Raised for invalid user input (bad ranges, unknown names, malformed files).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot deliver a trustworthy result
/// (non-convergence, insufficient resolution, failed internal invariant).
class ComputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform grid {left + i * 2^-level : i = 0..count-1}.
struct DyadicGrid {
  double left = 0.0;
  double right = 1.0;
  int level = 0;

  /// Validated constructor; (right - left) * 2^level must be a positive integer.
  static DyadicGrid over(double left, double right, int level);

  double spacing() const noexcept { return std::ldexp(1.0, -level); }
  std::size_t count() const noexcept {
    return static_cast<std::size_t>(std::llround(std::ldexp(right - left, level))) + 1;
  }
  double at(std::size_t i) const noexcept { return left + std::ldexp(static_cast<double>(i), -level); }
  /// Offset of x from `left` in units of the spacing (exact for dyadic x).
  double position(double x) const noexcept { return std::ldexp(x - left, level); }

  bool operator==(const DyadicGrid&) const = default;
};

enum class DecayKind { compact, exponential, algebraic, none };

struct DecayHint {
  DecayKind kind = DecayKind::none;
  double rate = 0.0;  // a for exponential, N for algebraic

  static DecayHint compact() { return {DecayKind::compact, 0.0}; }
  static DecayHint exponential(double a) { return {DecayKind::exponential, a}; }
  static DecayHint algebraic(double n) { return {DecayKind::algebraic, n}; }

  bool operator==(const DecayHint&) const = default;
};

const char* to_string(DecayKind kind);
DecayKind decay_kind_from_string(const std::string& name);

/// A real function tabulated on a dyadic grid and read as the piecewise-linear
/// interpolant of its samples. Jump discontinuities are allowed at nodes: the
/// stored value is the right limit and `left_limit` holds the left limit.
/// Outside the grid the function is zero.
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(DyadicGrid grid, std::vector<double> values, DecayHint decay = {},
                  std::vector<double> left_limits = {});

  const DyadicGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  const DecayHint& decay() const noexcept { return decay_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool has_jumps() const noexcept { return !left_.empty(); }
  /// Left limits for every node; equal to values() when the function is continuous.
  std::span<const double> left_limits() const noexcept { return left_.empty() ? std::span<const double>(values_) : std::span<const double>(left_); }

  double value(std::size_t i) const noexcept { return values_[i]; }
  double left_limit(std::size_t i) const noexcept { return left_.empty() ? values_[i] : left_[i]; }

  /// Right-continuous evaluation; zero outside the grid.
  double operator()(double x) const noexcept { return at_position(grid_.position(x)); }
  double left_value(double x) const noexcept { return left_at_position(grid_.position(x)); }

  /// Evaluation at a grid position p (fractional node index).
  double at_position(double p) const noexcept {
    const double last = static_cast<double>(values_.size() - 1);
    if (!(p >= 0.0) || p > last) return 0.0;
    const double cell = std::floor(p);
    const auto i = static_cast<std::size_t>(cell);
    const double t = p - cell;
    if (t == 0.0) return values_[i];
    return (1.0 - t) * values_[i] + t * left_limit(i + 1);
  }
  double left_at_position(double p) const noexcept {
    const double last = static_cast<double>(values_.size() - 1);
    if (!(p > 0.0) || p > last) {
      if (p == 0.0 && !values_.empty()) return left_limit(0);
      return 0.0;
    }
    const double cell = std::floor(p);
    const auto i = static_cast<std::size_t>(cell);
    const double t = p - cell;
    if (t == 0.0) return left_limit(i);
    return (1.0 - t) * values_[i] + t * left_limit(i + 1);
  }

  /// Composite trapezoid rule using one-sided limits at each cell end.
  double integral() const;
  /// Trapezoid approximation of the integral of x^m f(x) with moments taken about `center`.
  double moment(int m, double center = 0.0) const;
  double l2_norm() const;
  double l1_norm() const;
  double sup_norm() const;

 private:
  DyadicGrid grid_{};
  std::vector<double> values_;
  std::vector<double> left_;
  DecayHint decay_{};
};

/// Samples a right-continuous function and its left limits on a grid.
template <class Right, class Left>
SampledFunction sample(const DyadicGrid& grid, Right&& right, Left&& left, DecayHint decay = {}) {
  const std::size_t n = grid.count();
  std::vector<double> v(n), l(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.at(i);
    v[i] = right(x);
    l[i] = left(x);
  }
  return SampledFunction(grid, std::move(v), decay, std::move(l));
}

template <class F>
SampledFunction sample(const DyadicGrid& grid, F&& f, DecayHint decay = {}) {
  const std::size_t n = grid.count();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(grid.at(i));
  return SampledFunction(grid, std::move(v), decay);
}

/// L2 pairing by the trapezoid rule on the finer of the two grids, restricted
/// to the intersection of the supports. Disjoint supports give exactly 0.
double inner_product(const SampledFunction& f, const SampledFunction& g);

/// Discrete Lp norm (p >= 1, or p = infinity) of a tabulated function by trapezoid
/// rule with one-sided limits; the sup norm takes both limits into account.
double lp_norm(const SampledFunction& f, double p);

/// Grid covering [left, right] at `level`, with endpoints snapped outward to the level.
DyadicGrid covering_grid(double left, double right, int level);

}  // namespace waverate
