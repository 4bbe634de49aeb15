// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#include "core/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace waverate {

namespace {

void check_window(const SampledFunction& f, Window w) {
  if (!(w.right > w.left)) throw ConfigError("window needs left < right");
  if (w.left < f.grid().left || w.right > f.grid().right) {
    std::ostringstream msg;
    msg << "window [" << w.left << ", " << w.right << "] lies outside the tabulated support [" << f.grid().left
        << ", " << f.grid().right << "]";
    throw ConfigError(msg.str());
  }
}

void check_levels(int j0, int j1) {
  if (j1 <= j0) throw ConfigError("top level must exceed base level");
  if (j0 < -20 || j1 > 30) throw ConfigError("levels must lie in -20..30");
}

/// Adds c * g_jk on the nodes of xs inside the support of g_jk.
void accumulate(std::vector<double>& right, std::vector<double>* left, const SampledFunction& g, int j, long k,
                double c, const DyadicGrid& xs) {
  const double scale = std::exp2(0.5 * j);
  const double lo = std::ldexp(g.grid().left + static_cast<double>(k), -j);
  const double hi = std::ldexp(g.grid().right + static_cast<double>(k), -j);
  const double last = static_cast<double>(xs.count() - 1);
  const double p0 = std::max(0.0, std::ceil(xs.position(lo)));
  const double p1 = std::min(last, std::floor(xs.position(hi)));
  for (double p = p0; p <= p1; p += 1.0) {
    const auto i = static_cast<std::size_t>(p);
    const double u = std::ldexp(xs.at(i), j) - static_cast<double>(k);
    right[i] += c * scale * g(u);
    if (left != nullptr) (*left)[i] += c * scale * g.left_value(u);
  }
}

std::vector<ScheduleTerm> level_terms(const ExpansionCoefficients& coeffs, int level) {
  std::vector<ScheduleTerm> out;
  if (level == coeffs.j0 - 1) {
    for (const auto& [k, v] : coeffs.b) out.push_back({coeffs.j0, k, true});
    return out;
  }
  for (auto it = coeffs.a.lower_bound({level, std::numeric_limits<long>::min()});
       it != coeffs.a.end() && it->first.first == level; ++it)
    out.push_back({level, it->first.second, false});
  return out;
}

double term_coefficient(const ExpansionCoefficients& coeffs, const ScheduleTerm& t) {
  if (t.scaling) {
    if (t.j != coeffs.j0) throw ConfigError("schedule scaling term is not at the base level");
    const auto it = coeffs.b.find(t.k);
    if (it == coeffs.b.end()) throw ConfigError("schedule references an absent scaling coefficient k=" + std::to_string(t.k));
    return it->second;
  }
  const auto it = coeffs.a.find({t.j, t.k});
  if (it == coeffs.a.end())
    throw ConfigError("schedule references an absent wavelet coefficient (" + std::to_string(t.j) + ", " +
                      std::to_string(t.k) + ")");
  return it->second;
}

std::size_t clamp_prefix(const SummationSchedule& schedule, std::size_t prefix) {
  return std::min(prefix, schedule.terms.size());
}

}  // namespace

TranslateRange translate_range(const SampledFunction& g, int j, Window w) {
  const double lo = std::ldexp(w.left, j) - g.grid().right;
  const double hi = std::ldexp(w.right, j) - g.grid().left;
  return TranslateRange{static_cast<long>(std::floor(lo)) + 1, static_cast<long>(std::ceil(hi)) - 1};
}

double dilate_inner_product(const SampledFunction& f, const SampledFunction& g, int j, long k) {
  const DyadicGrid& fg = f.grid();
  const DyadicGrid& gg = g.grid();
  const double lo = std::max(fg.left, std::ldexp(gg.left + static_cast<double>(k), -j));
  const double hi = std::min(fg.right, std::ldexp(gg.right + static_cast<double>(k), -j));
  if (!(lo < hi)) return 0.0;
  const long last = static_cast<long>(f.size()) - 1;
  const long i0 = std::max(0L, static_cast<long>(std::floor(fg.position(lo))));
  const long i1 = std::min(last, static_cast<long>(std::ceil(fg.position(hi))));
  // Position of x_i inside g's grid is p0 + i * step.
  const double p0 = std::ldexp(std::ldexp(fg.left, j) - static_cast<double>(k) - gg.left, gg.level);
  const double step = std::ldexp(1.0, j + gg.level - fg.level);
  double sum = 0.0;
  for (long i = i0; i < i1; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const double pl = p0 + static_cast<double>(i) * step;
    const double pr = pl + step;
    sum += f.value(u) * g.at_position(pl) + f.left_limit(u + 1) * g.left_at_position(pr);
  }
  return 0.5 * fg.spacing() * std::exp2(0.5 * j) * sum;
}

double ExpansionCoefficients::energy() const {
  double s = 0.0;
  for (const auto& [k, v] : b) s += v * v;
  for (const auto& [jk, v] : a) s += v * v;
  return s;
}

ExpansionCoefficients analyze(const SampledFunction& f, const MRAFamily& fam, int j0, int j1, Window window) {
  check_levels(j0, j1);
  check_window(f, window);
  ExpansionCoefficients out;
  out.family = fam.id();
  out.j0 = j0;
  out.j1 = j1;
  out.window = window;
  const double fsup = f.sup_norm();
  constexpr double kTol = 1e-6;

  const double phi_l1 = fam.phi.l1_norm();
  const TranslateRange kb = translate_range(fam.phi, j0, window);
  for (long k = kb.first; k <= kb.last; ++k) {
    const double v = dilate_inner_product(f, fam.phi, j0, k);
    if (std::abs(v) > std::exp2(-0.5 * j0) * fsup * phi_l1 + kTol)
      throw ComputeError("scaling coefficient exceeds its uniform bound");
    out.b.emplace(k, v);
  }
  const double psi_l1 = fam.psi.l1_norm();
  for (int j = j0; j < j1; ++j) {
    const TranslateRange ka = translate_range(fam.psi, j, window);
    const double bound = std::exp2(-0.5 * j) * fsup * psi_l1 + kTol;
    for (long k = ka.first; k <= ka.last; ++k) {
      const double v = dilate_inner_product(f, fam.psi, j, k);
      if (std::abs(v) > bound) throw ComputeError("wavelet coefficient exceeds its uniform bound");
      out.a.emplace(std::make_pair(j, k), v);
    }
  }
  return out;
}

SampledFunction synthesize(const std::map<long, double>& coeffs, const SampledFunction& g, int j,
                           const DyadicGrid& xs) {
  std::vector<double> right(xs.count(), 0.0);
  std::vector<double> left;
  if (g.has_jumps()) left.assign(xs.count(), 0.0);
  for (const auto& [k, c] : coeffs) accumulate(right, g.has_jumps() ? &left : nullptr, g, j, k, c, xs);
  return SampledFunction(xs, std::move(right), DecayHint{}, std::move(left));
}

std::map<long, double> scaling_coefficients(const SampledFunction& f, const MRAFamily& fam, int j, Window window) {
  std::map<long, double> b;
  const TranslateRange kr = translate_range(fam.phi, j, window);
  for (long k = kr.first; k <= kr.last; ++k) b.emplace(k, dilate_inner_product(f, fam.phi, j, k));
  return b;
}

SampledFunction project(const SampledFunction& f, const MRAFamily& fam, int j, const DyadicGrid& xs) {
  check_window(f, Window{xs.left, xs.right});
  // Closed window: translates touching an endpoint contribute there.
  const Window reach{xs.left - std::ldexp(0.5, -j), xs.right + std::ldexp(0.5, -j)};
  return synthesize(scaling_coefficients(f, fam, j, reach), fam.phi, j, xs);
}

double project_at(const SampledFunction& f, const MRAFamily& fam, int j, double x) {
  const double u = std::ldexp(x, j);
  const long k0 = static_cast<long>(std::ceil(u - fam.phi.grid().right));
  const long k1 = static_cast<long>(std::floor(u - fam.phi.grid().left));
  double s = 0.0;
  for (long k = k0; k <= k1; ++k) {
    const double w = evaluate_dilate(fam.phi, j, k, x);
    if (w != 0.0) s += dilate_inner_product(f, fam.phi, j, k) * w;
  }
  return s;
}

ScheduleReport validate_schedule(const SummationSchedule& schedule) {
  std::map<int, std::size_t> remaining;
  for (const ScheduleTerm& t : schedule.terms) ++remaining[t.level()];
  std::map<int, std::size_t> total = remaining;
  std::set<int> partial;
  ScheduleReport rep;
  for (std::size_t i = 0; i < schedule.terms.size(); ++i) {
    const int lv = schedule.terms[i].level();
    if (--remaining[lv] == 0) {
      partial.erase(lv);
    } else {
      partial.insert(lv);
    }
    const int span = partial.empty() ? 0 : *partial.rbegin() - *partial.begin() + 1;
    if (span > rep.worst_range) {
      rep.worst_range = span;
      rep.worst_prefix = i + 1;
    }
  }
  rep.valid = rep.worst_range <= schedule.bounded_range;
  return rep;
}

SummationSchedule level_order_schedule(const ExpansionCoefficients& coeffs) {
  SummationSchedule s;
  s.bounded_range = 1;
  for (int lv = coeffs.j0 - 1; lv < coeffs.j1; ++lv) {
    const auto terms = level_terms(coeffs, lv);
    s.terms.insert(s.terms.end(), terms.begin(), terms.end());
  }
  return s;
}

SummationSchedule interleaved_schedule(const ExpansionCoefficients& coeffs, int span) {
  if (span < 1) throw ConfigError("interleaving span must be positive");
  SummationSchedule s;
  s.bounded_range = span;
  for (int start = coeffs.j0 - 1; start < coeffs.j1; start += span) {
    std::vector<std::vector<ScheduleTerm>> block;
    for (int lv = start; lv < std::min(start + span, coeffs.j1); ++lv) block.push_back(level_terms(coeffs, lv));
    std::size_t longest = 0;
    for (const auto& b : block) longest = std::max(longest, b.size());
    for (std::size_t i = 0; i < longest; ++i)
      for (const auto& b : block)
        if (i < b.size()) s.terms.push_back(b[i]);
  }
  return s;
}

SummationSchedule deferred_schedule(const ExpansionCoefficients& coeffs, int bounded_range) {
  SummationSchedule s = level_order_schedule(coeffs);
  s.bounded_range = bounded_range;
  if (!s.terms.empty()) {
    const ScheduleTerm held = s.terms.front();
    s.terms.erase(s.terms.begin());
    s.terms.push_back(held);
  }
  return s;
}

SampledFunction partial_sum(const ExpansionCoefficients& coeffs, const MRAFamily& fam,
                            const SummationSchedule& schedule, const DyadicGrid& xs, std::size_t prefix) {
  const bool jumps = fam.phi.has_jumps() || fam.psi.has_jumps();
  std::vector<double> right(xs.count(), 0.0);
  std::vector<double> left;
  if (jumps) left.assign(xs.count(), 0.0);
  const std::size_t n = clamp_prefix(schedule, prefix);
  for (std::size_t i = 0; i < n; ++i) {
    const ScheduleTerm& t = schedule.terms[i];
    const double c = term_coefficient(coeffs, t);
    accumulate(right, jumps ? &left : nullptr, t.scaling ? fam.phi : fam.psi, t.j, t.k, c, xs);
  }
  return SampledFunction(xs, std::move(right), DecayHint{}, std::move(left));
}

std::vector<double> partial_sum_at(const ExpansionCoefficients& coeffs, const MRAFamily& fam,
                                   const SummationSchedule& schedule, std::span<const double> xs,
                                   std::size_t prefix) {
  std::vector<double> out(xs.size(), 0.0);
  const std::size_t n = clamp_prefix(schedule, prefix);
  for (std::size_t i = 0; i < n; ++i) {
    const ScheduleTerm& t = schedule.terms[i];
    const double c = term_coefficient(coeffs, t);
    const SampledFunction& g = t.scaling ? fam.phi : fam.psi;
    for (std::size_t p = 0; p < xs.size(); ++p) out[p] += c * evaluate_dilate(g, t.j, t.k, xs[p]);
  }
  return out;
}

}  // namespace waverate
