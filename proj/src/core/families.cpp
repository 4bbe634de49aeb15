// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#include "core/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "core/bspline.hpp"

namespace waverate {

namespace {

constexpr int kMinLevel = 3;
constexpr int kMaxLevel = 16;
constexpr double kShannonRadius = 128.0;

double sin_pi(double x) {
  double r = std::remainder(x, 2.0);
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(std::numbers::pi * r);
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return sin_pi(x) / (std::numbers::pi * x);
}

MRAFamily haar_family(int level) {
  MRAFamily fam;
  fam.kind = FamilyKind::haar;
  fam.name = "haar";
  fam.level = level;
  const double r = 1.0 / std::numbers::sqrt2;
  fam.filter = FilterPair::from_lowpass({r, r}, 0);
  const DyadicGrid grid = DyadicGrid::over(0.0, 1.0, level);
  fam.phi = sample(
      grid, [](double x) { return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0; },
      [](double x) { return (x > 0.0 && x <= 1.0) ? 1.0 : 0.0; }, DecayHint::compact());
  fam.psi = sample(
      grid,
      [](double x) {
        if (x < 0.0 || x >= 1.0) return 0.0;
        return x < 0.5 ? 1.0 : -1.0;
      },
      [](double x) {
        if (x <= 0.0 || x > 1.0) return 0.0;
        return x <= 0.5 ? 1.0 : -1.0;
      },
      DecayHint::compact());
  fam.vanishing_moments = 1;
  fam.decay_class = DecayHint::compact();
  return fam;
}

MRAFamily daubechies_family(int n, int level) {
  MRAFamily fam;
  fam.kind = FamilyKind::daubechies;
  fam.name = "daubechies";
  fam.param = n;
  fam.level = level;
  fam.filter = FilterPair::from_lowpass(daubechies_lowpass(n), 0);
  fam.phi = cascade_scaling(*fam.filter, 500, level, 1e-12);
  fam.psi = derive_wavelet(*fam.filter, fam.phi);
  fam.vanishing_moments = n;
  fam.decay_class = DecayHint::compact();
  return fam;
}

MRAFamily battle_lemarie_family(int k, int level) {
  const SplineOrthonormalizer so = orthonormalize_bspline(k);
  MRAFamily fam;
  fam.kind = FamilyKind::battle_lemarie;
  fam.name = "battle_lemarie";
  fam.param = k;
  fam.level = level;
  fam.filter = FilterPair::from_lowpass(so.lowpass, so.filter_offset);
  fam.filter->validate();

  const long count = static_cast<long>(so.coefficients.size());
  const double left = static_cast<double>(so.coeff_offset);
  const double right = left + static_cast<double>(count - 1 + k);
  const DyadicGrid grid = DyadicGrid::over(left, right, level);
  const auto combine = [&](double x, bool from_left) {
    const long top = static_cast<long>(std::floor(x));
    double s = 0.0;
    for (long n = std::max(so.coeff_offset, top - k); n <= std::min(so.coeff_offset + count - 1, top); ++n) {
      const double t = x - static_cast<double>(n);
      const double b = from_left ? cardinal_bspline_left(k, t) : cardinal_bspline(k, t);
      s += so.coefficients[static_cast<std::size_t>(n - so.coeff_offset)] * b;
    }
    return s;
  };
  fam.decay_class = count == 1 ? DecayHint::compact() : DecayHint::exponential(so.decay_rate);
  if (k == 1) {
    fam.phi = sample(
        grid, [&](double x) { return combine(x, false); }, [&](double x) { return combine(x, true); },
        fam.decay_class);
  } else {
    fam.phi = sample(grid, [&](double x) { return combine(x, false); }, fam.decay_class);
  }
  fam.psi = derive_wavelet(*fam.filter, fam.phi);
  fam.vanishing_moments = k;
  return fam;
}

MRAFamily shannon_family(int level) {
  MRAFamily fam;
  fam.kind = FamilyKind::shannon;
  fam.name = "shannon";
  fam.level = level;
  const DecayHint decay = DecayHint::algebraic(1.01);
  fam.phi = sample(DyadicGrid::over(-kShannonRadius, kShannonRadius, level), sinc, decay);
  fam.psi = sample(DyadicGrid::over(-kShannonRadius + 0.5, kShannonRadius + 0.5, level),
                   [](double x) { return 2.0 * sinc(2.0 * x - 1.0) - sinc(x - 0.5); }, decay);
  fam.vanishing_moments = 1;
  fam.decay_class = decay;
  return fam;
}

}  // namespace

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::haar: return "haar";
    case FamilyKind::daubechies: return "daubechies";
    case FamilyKind::battle_lemarie: return "battle_lemarie";
    case FamilyKind::shannon: return "shannon";
  }
  return "haar";
}

FamilyKind family_kind_from_string(const std::string& name) {
  if (name == "haar") return FamilyKind::haar;
  if (name == "daubechies") return FamilyKind::daubechies;
  if (name == "battle_lemarie") return FamilyKind::battle_lemarie;
  if (name == "shannon") return FamilyKind::shannon;
  throw ConfigError("unknown family '" + name + "' (expected haar, daubechies, battle_lemarie or shannon)");
}

int default_grid_level() {
  const char* env = std::getenv("WAVERATE_GRID_LEVEL");
  if (env == nullptr || *env == '\0') return 13;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < kMinLevel || v > kMaxLevel) {
    std::ostringstream msg;
    msg << "WAVERATE_GRID_LEVEL must be an integer in " << kMinLevel << ".." << kMaxLevel << ", got '" << env << "'";
    throw ConfigError(msg.str());
  }
  return static_cast<int>(v);
}

std::string MRAFamily::id() const {
  if (kind == FamilyKind::daubechies || kind == FamilyKind::battle_lemarie) return name + ":" + std::to_string(param);
  return name;
}

SampledFunction cascade_scaling(const FilterPair& filter, int iterations, int level, double tol, CascadeStats* stats) {
  filter.validate();
  if (iterations < 1) throw ConfigError("cascade needs at least one iteration");
  if (level < kMinLevel) throw ConfigError("cascade level must be at least 3");
  const long a = filter.first();
  const long b = filter.last();
  const DyadicGrid grid = DyadicGrid::over(static_cast<double>(a), static_cast<double>(b), level);
  const std::size_t n = grid.count();
  const long scale = 1L << level;

  const double start = (a <= 0 && b >= 1) ? 0.0 : static_cast<double>(a);
  std::vector<double> right(n), left(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.at(i);
    right[i] = (x >= start && x < start + 1.0) ? 1.0 : 0.0;
    left[i] = (x > start && x <= start + 1.0) ? 1.0 : 0.0;
  }

  std::vector<double> taps;
  for (long k = a; k <= b; ++k) taps.push_back(std::numbers::sqrt2 * filter.h(k));
  std::vector<double> next_right(n), next_left(n);
  const long last = static_cast<long>(n) - 1;
  double residual = 0.0;
  int it = 0;
  for (; it < iterations; ++it) {
    residual = 0.0;
    for (long i = 0; i <= last; ++i) {
      double r = 0.0, l = 0.0;
      for (long k = a; k <= b; ++k) {
        const long pos = (a - k) * scale + 2 * i;
        if (pos < 0 || pos > last) continue;
        const double t = taps[static_cast<std::size_t>(k - a)];
        r += t * right[static_cast<std::size_t>(pos)];
        l += t * left[static_cast<std::size_t>(pos)];
      }
      const auto u = static_cast<std::size_t>(i);
      residual = std::max({residual, std::abs(r - right[u]), std::abs(l - left[u])});
      next_right[u] = r;
      next_left[u] = l;
    }
    right.swap(next_right);
    left.swap(next_left);
    if (residual < tol) break;
  }
  if (stats != nullptr) *stats = CascadeStats{std::min(it + 1, iterations), residual};
  if (!(residual < tol)) {
    std::ostringstream msg;
    msg << "cascade did not converge after " << iterations << " iterations (residual " << residual << ")";
    throw ComputeError(msg.str());
  }
  double jump = 0.0;
  for (std::size_t i = 0; i < n; ++i) jump = std::max(jump, std::abs(right[i] - left[i]));
  if (jump < 1e-8) left.clear();
  return SampledFunction(grid, std::move(right), DecayHint::compact(), std::move(left));
}

SampledFunction derive_wavelet(const FilterPair& filter, const SampledFunction& phi) {
  const DyadicGrid& pg = phi.grid();
  if (pg.level < 1) throw ConfigError("phi grid too coarse to evaluate phi(2x - k)");
  const double left = 0.5 * (pg.left + static_cast<double>(filter.first()));
  const double right = 0.5 * (pg.right + static_cast<double>(filter.last()));
  const DyadicGrid grid = DyadicGrid::over(left, right, pg.level);
  const std::size_t n = grid.count();
  const long scale = 1L << pg.level;
  const long last = static_cast<long>(phi.size()) - 1;
  std::vector<double> vr(n), vl(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0, l = 0.0;
    for (long k = filter.first(); k <= filter.last(); ++k) {
      const long pos = (filter.first() - k) * scale + 2 * static_cast<long>(i);
      if (pos < 0 || pos > last) continue;
      const double g = std::numbers::sqrt2 * filter.g(k);
      r += g * phi.value(static_cast<std::size_t>(pos));
      l += g * phi.left_limit(static_cast<std::size_t>(pos));
    }
    vr[i] = r;
    vl[i] = l;
  }
  if (!phi.has_jumps()) vl.clear();
  return SampledFunction(grid, std::move(vr), phi.decay(), std::move(vl));
}

InvariantReport check_invariants(const MRAFamily& fam) {
  InvariantReport rep;
  if (fam.kind == FamilyKind::shannon) {
    const double tol = 1.0 / kShannonRadius;
    rep.integral_tolerance = tol;
    rep.partition_tolerance = tol;
    rep.orthonormality_tolerance = tol;
  }
  const SampledFunction& phi = fam.phi;
  rep.phi_integral_defect = std::abs(phi.integral() - 1.0);
  rep.psi_integral_defect = std::abs(fam.psi.integral());

  const std::size_t n = phi.size();
  const std::size_t period = std::size_t{1} << phi.grid().level;
  double partition = 0.0;
  for (std::size_t r = 0; r < period && r < n; ++r) {
    double s = 0.0;
    for (std::size_t i = r; i < n; i += period) s += phi.value(i);
    partition = std::max(partition, std::abs(s - 1.0));
  }
  rep.partition_defect = partition;

  const double h = phi.grid().spacing();
  double ortho = 0.0;
  for (std::size_t shift = 0; shift < n; shift += period) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 + shift < n; ++i)
      s += phi.value(i) * phi.value(i + shift) + phi.left_limit(i + 1) * phi.left_limit(i + 1 + shift);
    s *= 0.5 * h;
    ortho = std::max(ortho, std::abs(s - (shift == 0 ? 1.0 : 0.0)));
  }
  rep.orthonormality_defect = ortho;
  return rep;
}

MRAFamily make_family(FamilyKind kind, int param, int level) {
  if (level <= 0) level = default_grid_level();
  if (level < kMinLevel || level > kMaxLevel) {
    std::ostringstream msg;
    msg << "grid level must lie in " << kMinLevel << ".." << kMaxLevel << ", got " << level;
    throw ConfigError(msg.str());
  }
  MRAFamily fam;
  switch (kind) {
    case FamilyKind::haar: fam = haar_family(level); break;
    case FamilyKind::daubechies:
      if (param < 1 || param > 10) throw ConfigError("daubechies order must lie in 1..10, got " + std::to_string(param));
      fam = daubechies_family(param, level);
      break;
    case FamilyKind::battle_lemarie:
      if (param < 1 || param > 4) throw ConfigError("battle_lemarie order must lie in 1..4, got " + std::to_string(param));
      fam = battle_lemarie_family(param, level);
      break;
    case FamilyKind::shannon: fam = shannon_family(level); break;
  }
  const InvariantReport rep = check_invariants(fam);
  if (!rep.passed()) {
    std::ostringstream msg;
    msg << "family " << fam.id() << " failed its invariants at level " << level << " (phi integral "
        << rep.phi_integral_defect << ", psi integral " << rep.psi_integral_defect << ", partition "
        << rep.partition_defect << ", orthonormality " << rep.orthonormality_defect << ")";
    throw ComputeError(msg.str());
  }
  return fam;
}

MRAFamily make_family(const std::string& name, int param, int level) {
  return make_family(family_kind_from_string(name), param, level);
}

MRAFamily make_family_from_spec(const std::string& spec, int level) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const FamilyKind kind = family_kind_from_string(name);
  int param = 0;
  if (colon != std::string::npos) {
    const std::string tail = spec.substr(colon + 1);
    char* end = nullptr;
    const long v = std::strtol(tail.c_str(), &end, 10);
    if (tail.empty() || *end != '\0') throw ConfigError("family parameter must be an integer in '" + spec + "'");
    param = static_cast<int>(v);
  } else if (kind == FamilyKind::daubechies || kind == FamilyKind::battle_lemarie) {
    throw ConfigError("family '" + name + "' needs a parameter, e.g. " + name + ":2");
  }
  return make_family(kind, param, level);
}

}  // namespace waverate
