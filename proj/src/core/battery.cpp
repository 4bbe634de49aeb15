// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#include "core/battery.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "core/io.hpp"
#include "core/serialize.hpp"

namespace waverate {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string file_stem(std::string id) {
  std::replace(id.begin(), id.end(), ':', '_');
  return id;
}

CriterionStatus verdict(bool ok) { return ok ? CriterionStatus::pass : CriterionStatus::fail; }

template <class T>
class Memo {
 public:
  template <class F>
  const T& get(const std::string& key, F&& make) {
    std::shared_ptr<Entry> e;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto& slot = entries_[key];
      if (!slot) slot = std::make_shared<Entry>();
      e = slot;
    }
    std::call_once(e->once, [&] {
      try {
        e->value.emplace(make());
      } catch (...) {
        e->error = std::current_exception();
      }
    });
    if (e->error) std::rethrow_exception(e->error);
    return *e->value;
  }

 private:
  struct Entry {
    std::once_flag once;
    std::optional<T> value;
    std::exception_ptr error;
  };
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> entries_;
};

class Context {
 public:
  explicit Context(const SuiteConfig& cfg)
      : config(cfg), level(cfg.level > 0 ? cfg.level : default_grid_level()) {}

  const SuiteConfig config;
  const int level;

  const MRAFamily& family(const std::string& spec) {
    return families_.get(spec, [&] { return make_family_from_spec(spec, level); });
  }
  const SampledFunction& function(const std::string& name) {
    return functions_.get(name, [&] { return builtin_function(name).sample(level + 2); });
  }
  const RateReport& gaussian_rate(const std::string& spec) {
    return rates_.get(spec, [&] {
      RateReport r = sup_error_rates(function("gaussian"), family(spec), 3, 9, Window{-2.0, 2.0});
      r.function = "gaussian";
      return r;
    });
  }
  const SampledSpectrum& spectrum(const std::string& spec, CriterionKind kind) {
    return spectra_.get(spec + "/" + to_string(kind), [&] {
      return kind == CriterionKind::wavelet ? wavelet_shell_spectrum(family(spec), default_shell_layout())
                                            : scaling_shell_spectrum(family(spec), default_shell_layout());
    });
  }
  const CriticalOrder& order(const std::string& spec, CriterionKind kind, double eps) {
    return orders_.get(spec + "/" + to_string(kind) + "/" + format_double(eps), [&] {
      CriticalOrder c = critical_order(spectrum(spec, kind), kind, eps);
      c.family = family(spec).id();
      return c;
    });
  }
  const BoundReport& bound(const std::string& spec, int j_max) {
    return bounds_.get(spec + "/" + std::to_string(j_max), [&] {
      std::vector<int> js;
      for (int j = 0; j <= j_max; ++j) js.push_back(j);
      return verify_convolution_bound(family(spec), js);
    });
  }

 private:
  Memo<MRAFamily> families_;
  Memo<SampledFunction> functions_;
  Memo<RateReport> rates_;
  Memo<SampledSpectrum> spectra_;
  Memo<CriticalOrder> orders_;
  Memo<BoundReport> bounds_;
};

const std::vector<std::string> kRateFamilies = {"haar", "daubechies:2", "battle_lemarie:2"};

CriterionResult families_criterion(Context& ctx) {
  CriterionResult r;
  const auto t0 = std::chrono::steady_clock::now();
  Json doc = Json::array();
  bool ok = true;
  double worst_int = 0.0, worst_part = 0.0, worst_orth = 0.0;
  for (const char* spec : {"haar", "daubechies:2", "daubechies:3", "battle_lemarie:2"}) {
    const MRAFamily& fam = ctx.family(spec);
    const InvariantReport inv = check_invariants(fam);
    ok = ok && inv.passed();
    worst_int = std::max({worst_int, inv.phi_integral_defect, inv.psi_integral_defect});
    worst_part = std::max(worst_part, inv.partition_defect);
    worst_orth = std::max(worst_orth, inv.orthonormality_defect);
    doc.push_back(Json{{"family", fam.id()}, {"level", fam.level}, {"invariants", to_json(inv)}});
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.observed = "max defects: integral " + num(worst_int) + "; partition " + num(worst_part) + "; orthonormality " +
               num(worst_orth);
  if (secs >= 30.0) {
    ok = false;
    r.observed += "; runtime above 30 s";
  }
  r.status = verdict(ok);
  r.artifacts["families.json"] = render_json(doc);
  return r;
}

CriterionResult projection_criterion(Context& ctx) {
  CriterionResult r;
  const MRAFamily& haar = ctx.family("haar");
  struct Case {
    const char* name;
    Window window;
    std::function<double(double, double)> average;
  };
  const std::vector<Case> cases = {
      {"ramp", {-1.0, 2.0},
       [](double a, double b) {
         const double lo = std::max(a, 0.0), hi = std::min(b, 1.0);
         return hi > lo ? 0.5 * (hi * hi - lo * lo) / (b - a) : 0.0;
       }},
      {"gaussian", {-4.0, 4.0},
       [](double a, double b) { return 0.5 * std::sqrt(M_PI) * (std::erf(b) - std::erf(a)) / (b - a); }},
  };
  CsvTable table({"function", "j", "sup_error"});
  double worst = 0.0;
  for (const Case& c : cases) {
    const SampledFunction& f = ctx.function(c.name);
    const DyadicGrid xs = DyadicGrid::over(c.window.left, c.window.right, 10);
    for (int j = 0; j <= 8; ++j) {
      const SampledFunction p = project(f, haar, j, xs);
      const double w = std::ldexp(1.0, -j);
      double e = 0.0;
      for (std::size_t i = 0; i < xs.count(); ++i) {
        const double a = std::floor(xs.at(i) / w) * w;
        e = std::max(e, std::abs(p.value(i) - c.average(a, a + w)));
      }
      worst = std::max(worst, e);
      table.row({c.name, std::to_string(j), format_double(e)});
    }
  }
  r.observed = "max sup deviation " + num(worst);
  r.status = verdict(worst <= 1e-6);
  r.artifacts["projection_haar.csv"] = table.str();
  return r;
}

CriterionResult kernel_criterion(Context& ctx) {
  CriterionResult r;
  bool ok = true;
  for (const char* spec : {"haar", "daubechies:2"}) {
    const BoundReport& rep = ctx.bound(spec, 6);
    const MRAFamily& fam = ctx.family(spec);
    ok = ok && rep.passed;
    r.observed += std::string(r.observed.empty() ? "" : "; ") + fam.id() + ": collapse " + num(rep.collapse_defect) +
                  " mass " + num(rep.envelope.l1_mass) + " tail fraction " + num(rep.envelope.tail_fraction);
    if (fam.kind == FamilyKind::haar) ok = ok && std::abs(rep.envelope.l1_mass - 2.0) <= 0.05;
    r.artifacts["kernel_" + file_stem(fam.id()) + ".json"] = bound_report_to_json(fam.id(), rep, std::nullopt);
    r.artifacts["kernel_" + file_stem(fam.id()) + "_profiles.csv"] = bound_profiles_to_csv(rep);
  }
  r.status = verdict(ok);
  return r;
}

CriterionResult shannon_kernel_criterion(Context& ctx) {
  CriterionResult r;
  const BoundReport& rep = ctx.bound("shannon", 4);
  const DecayFit fit = fit_decay(rep.envelope, DecayModel::algebraic, 1.0, RadiusRange{2.0, 40.0});
  r.observed = "tail fraction " + num(rep.envelope.tail_fraction) + "; algebraic N=1 fit R2 " + num(fit.r_squared);
  r.status = rep.passed ? CriterionStatus::unexpected_pass : CriterionStatus::expected_fail;
  r.artifacts["kernel_shannon.json"] = bound_report_to_json("shannon", rep, fit);
  return r;
}

CriterionResult decay_criterion(Context& ctx) {
  CriterionResult r;
  const BoundReport& rep = ctx.bound("battle_lemarie:2", 6);
  const DecayFit fit = fit_decay(rep.envelope, DecayModel::exponential);
  r.observed = "a " + num(fit.rate) + "; R2 " + num(fit.r_squared);
  r.status = verdict(fit.rate > 0.0 && !fit.flagged && fit.r_squared > 0.98);
  r.artifacts["kernel_battle_lemarie_2.json"] = bound_report_to_json("battle_lemarie:2", rep, fit);
  r.artifacts["kernel_battle_lemarie_2_profiles.csv"] = bound_profiles_to_csv(rep);
  return r;
}

CriterionResult lebesgue_criterion(Context& ctx) {
  CriterionResult r;
  const TestFunction tf = builtin_function("oscillating");
  const MarkedPoint& point = tf.marked.front();
  const auto trace = pointwise_trace(ctx.function("oscillating"), ctx.family("haar"), point.x, 2, 10);
  double worst_ratio = 0.0;
  for (const TracePoint& t : trace)
    worst_ratio = std::max(worst_ratio, std::abs(t.value) / (8.0 / 7.0 * std::ldexp(1.0, -2 * t.j)));
  r.observed = "max |P_j f(0)| / bound " + num(worst_ratio);
  r.status = verdict(worst_ratio <= 1.05);
  r.artifacts["trace_oscillating_haar.csv"] = trace_to_csv("haar", tf.name, point, trace);
  return r;
}

CriterionResult robustness_criterion(Context& ctx) {
  CriterionResult r;
  const MRAFamily& haar = ctx.family("haar");
  const ExpansionCoefficients co = analyze(ctx.function("gaussian"), haar, 2, 7, Window{-1.0, 1.0});
  std::vector<double> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(-0.98 + 0.04 * i);
  const RobustnessReport rep =
      order_robustness(co, haar, {{"level_order", level_order_schedule(co)}, {"interleaved_2", interleaved_schedule(co, 2)}},
                       pts);
  bool rejected = false;
  try {
    order_robustness(co, haar, {{"level_order", level_order_schedule(co)}, {"deferred", deferred_schedule(co, 2)}},
                     pts);
  } catch (const ConfigError&) {
    rejected = true;
  }
  r.observed = "final difference " + num(rep.final_difference) + "; dispersion at half " + num(rep.dispersion[1]) +
               "; unbounded schedule " + (rejected ? "rejected" : "accepted");
  r.status = verdict(rep.agreed && rejected);
  Json doc = to_json(rep);
  doc["unbounded_rejected"] = rejected;
  r.artifacts["robustness_haar.json"] = render_json(doc);
  return r;
}

CriterionResult rate_criterion(Context& ctx) {
  CriterionResult r;
  bool ok = true;
  for (const std::string& spec : kRateFamilies) {
    const RateReport& rep = ctx.gaussian_rate(spec);
    const double lo = spec == "haar" ? 0.85 : 1.8, hi = spec == "haar" ? 1.1 : 2.2;
    ok = ok && rep.slope >= lo && rep.slope <= hi && rep.r_squared > 0.99;
    r.observed += std::string(r.observed.empty() ? "" : "; ") + rep.family + " " + num(rep.slope) + " (R2 " +
                  num(rep.r_squared) + ")";
    r.artifacts["rate_gaussian_" + file_stem(rep.family) + ".json"] = render_json(to_json(rep));
    r.artifacts["rate_gaussian_" + file_stem(rep.family) + ".csv"] = rate_report_to_csv(rep);
  }
  r.status = verdict(ok);
  return r;
}

CriterionResult critical_criterion(Context& ctx) {
  CriterionResult r;
  bool ok = true;
  for (const std::string& spec : kRateFamilies) {
    const double target = spec == "haar" ? 1.0 : 2.0, tol = spec == "haar" ? 0.1 : 0.15;
    Json doc = Json::array();
    std::set<std::string> stars;
    for (double eps : {0.5, 1.0, 2.0}) {
      const CriticalOrder& c = ctx.order(spec, CriterionKind::wavelet, eps);
      ok = ok && std::abs(c.s_star - target) <= tol && !c.above_range && !c.below_range;
      stars.insert(format_double(c.s_star));
      doc.push_back(to_json(c));
    }
    ok = ok && stars.size() == 1;
    const std::string id = ctx.family(spec).id();
    r.observed += std::string(r.observed.empty() ? "" : "; ") + id + " " + num(ctx.order(spec, CriterionKind::wavelet, 1.0).s_star) +
                  (stars.size() == 1 ? "" : " (epsilon dependent)");
    r.artifacts["critical_" + file_stem(id) + ".json"] = render_json(doc);

    std::vector<SweepRow> rows;
    for (int i = 1; i <= 30; ++i) {
      const double s = 0.1 * i;
      rows.push_back({s, 1.0, wavelet_criterion(ctx.spectrum(spec, CriterionKind::wavelet), s, 1.0),
                      scaling_criterion(ctx.spectrum(spec, CriterionKind::scaling), s, 1.0)});
    }
    r.artifacts["sobolev_sweep_" + file_stem(id) + ".csv"] = sobolev_sweep_to_csv(rows);
  }
  r.status = verdict(ok);
  return r;
}

CriterionResult consistency_criterion(Context& ctx) {
  CriterionResult r;
  bool ok = true;
  Json doc = Json::array();
  for (const std::string& spec : kRateFamilies) {
    const double slope = ctx.gaussian_rate(spec).slope;
    const double sw = ctx.order(spec, CriterionKind::wavelet, 1.0).s_star;
    const double ss = ctx.order(spec, CriterionKind::scaling, 1.0).s_star;
    ok = ok && std::abs(slope - sw) <= 0.25 && std::abs(sw - ss) <= 0.15;
    const std::string id = ctx.family(spec).id();
    r.observed += std::string(r.observed.empty() ? "" : "; ") + id + " |slope-s*| " + num(std::abs(slope - sw)) +
                  " |s*w-s*s| " + num(std::abs(sw - ss));
    doc.push_back(Json{{"family", id}, {"rate_slope", slope}, {"s_star_wavelet", sw}, {"s_star_scaling", ss}});
  }
  r.status = verdict(ok);
  r.artifacts["consistency.json"] = render_json(doc);
  return r;
}

CriterionResult lp_criterion(Context& ctx) {
  CriterionResult r;
  const SampledFunction& step = ctx.function("step");
  const MRAFamily& haar = ctx.family("haar");
  const Window w{-1.0, 1.0};
  const auto l1 = lp_error_trace(step, haar, 1.0, 2, 8, w);
  const auto sup = lp_error_trace(step, haar, INFINITY, 2, 8, w);
  double worst_rel = 0.0, min_sup = INFINITY;
  for (const TracePoint& t : l1) {
    const double target = std::ldexp(1.0, -t.j - 1);
    worst_rel = std::max(worst_rel, std::abs(t.value - target) / target);
  }
  for (const TracePoint& t : sup) min_sup = std::min(min_sup, t.value);
  r.observed = "max relative L1 deviation " + num(worst_rel) + " (L1 error at j=2: " + num(l1.front().value) +
               "); min sup error " + num(min_sup);
  r.status = verdict(worst_rel <= 0.1 && min_sup >= 0.4);
  r.artifacts["lp_step_haar_p1.csv"] = lp_trace_to_csv("haar", "step", 1.0, l1);
  r.artifacts["lp_step_haar_pinf.csv"] = lp_trace_to_csv("haar", "step", INFINITY, sup);
  return r;
}

CriterionResult spline_criterion(Context& ctx) {
  CriterionResult r;
  const SampledFunction& g = ctx.function("gaussian");
  const SplineApproximation k1 = best_l2_spline(g, SplineSpace::make(1, 1.0 / 32.0, Window{-2.0, 2.0}));
  const DyadicGrid xs = DyadicGrid::over(-2.0, 2.0, ctx.level);
  const SampledFunction p = project(g, ctx.family("haar"), 5, xs);
  double haar_gap = 0.0;
  for (std::size_t i = 0; i + 1 < xs.count(); ++i) haar_gap = std::max(haar_gap, std::abs(p.value(i) - k1(xs.at(i))));

  const SampledFunction& sine = ctx.function("sine");
  const std::vector<double> meshes = {0.25, 0.125, 0.0625, 0.03125, 0.015625};
  RateReport study = spline_convergence_study(sine, 2, meshes, Window{0.0, 3.0});
  study.function = "sine";
  double ratio_lo = INFINITY, ratio_hi = 0.0, orth = 0.0;
  for (std::size_t i = 1; i < study.sup_errors.size(); ++i) {
    const double q = study.sup_errors[i - 1] / study.sup_errors[i];
    ratio_lo = std::min(ratio_lo, q);
    ratio_hi = std::max(ratio_hi, q);
  }
  std::optional<SplineApproximation> finest;
  for (double h : meshes) {
    SplineApproximation s = best_l2_spline(sine, SplineSpace::make(2, h, Window{0.0, 3.0}));
    orth = std::max(orth, s.orthogonality_defect);
    finest = std::move(s);
  }
  const OptimalityReport opt = perturbation_check(sine, *finest, 20, 1e-3, ctx.config.seed);
  r.observed = "k=1 vs Haar " + num(haar_gap) + "; halving ratios " + num(ratio_lo) + ".." + num(ratio_hi) +
               "; orthogonality " + num(orth);
  r.status = verdict(haar_gap <= 1e-8 && ratio_lo >= 3.4 && ratio_hi <= 4.6 && orth < 1e-8);
  r.artifacts["spline_sine_k2.json"] = render_json(to_json(study));
  r.artifacts["spline_sine_k2.csv"] = rate_report_to_csv(study);
  r.artifacts["spline_sine_k2_coefficients.csv"] = spline_to_csv(*finest);
  r.artifacts["spline_optimality.json"] =
      render_json(Json{{"seed", ctx.config.seed},
                       {"trials", opt.trials},
                       {"strictly_worse", opt.strictly_worse},
                       {"min_increase", opt.min_increase}});
  return r;
}

CriterionResult determinism_criterion(Context& ctx) {
  CriterionResult r;
  std::size_t compared = 0, differing = 0;
  for (auto fn : {projection_criterion, robustness_criterion, lebesgue_criterion}) {
    const CriterionResult a = fn(ctx);
    Context fresh(ctx.config);
    const CriterionResult b = fn(fresh);
    for (const auto& [name, content] : a.artifacts) {
      ++compared;
      const auto it = b.artifacts.find(name);
      if (it == b.artifacts.end() || it->second != content) ++differing;
    }
    if (a.observed != b.observed) ++differing;
  }
  r.observed = std::to_string(compared) + " artifacts re-rendered; " + std::to_string(differing) + " differ";
  r.status = verdict(differing == 0 && compared > 0);
  return r;
}

struct Definition {
  const char* id;
  const char* tag;
  const char* title;
  const char* expected;
  CriterionResult (*run)(Context&);
};

const std::vector<Definition>& definitions() {
  static const std::vector<Definition> defs = {
      {"1", "families", "MRA invariants for haar, daubechies:2, daubechies:3, battle_lemarie:2",
       "all invariants within tolerance; runtime < 30 s", families_criterion},
      {"2", "projection", "Haar projection equals dyadic cell averages (ramp, gaussian; j = 0..8)",
       "sup deviation <= 1e-6", projection_criterion},
      {"3", "kernel", "Kernel convolution bound for haar and daubechies:2 (j = 0..6)",
       "collapse defect < 0.05; tail fraction < 0.1; haar mass 2 +- 0.05", kernel_criterion},
      {"3s", "kernel", "Kernel convolution bound for shannon (j = 0..4)", "expected to fail: no integrable majorant",
       shannon_kernel_criterion},
      {"4", "kernel", "Exponential decay fit of the battle_lemarie:2 kernel envelope", "a > 0; R2 > 0.98",
       decay_criterion},
      {"5", "convergence", "Haar trace of the oscillating indicator at 0 (j = 2..10)",
       "|P_j f(0)| <= (8/7) 4^-j (1 + 0.05)", lebesgue_criterion},
      {"6", "convergence", "Summation-order robustness (level order vs interleaved span 2)",
       "final difference <= 1e-10 at 50 points; unbounded schedule rejected", robustness_criterion},
      {"7", "convergence", "Sup-error rate slopes on the gaussian (j = 3..9)",
       "haar in [0.85, 1.1]; daubechies:2 and battle_lemarie:2 in [1.8, 2.2]; R2 > 0.99", rate_criterion},
      {"8", "sobolev", "Critical orders from the wavelet criterion (epsilon = 0.5, 1, 2)",
       "haar 1 +- 0.1; daubechies:2 and battle_lemarie:2 2 +- 0.15; epsilon independent", critical_criterion},
      {"9", "sobolev", "Rate slope vs critical order; wavelet vs scaling threshold",
       "|slope - s*| <= 0.25; |s*_wavelet - s*_scaling| <= 0.15", consistency_criterion},
      {"10", "convergence", "Haar L1 and sup errors for the step function (j = 2..8)",
       "L1 error 2^(-j-1) within 10%; sup error >= 0.4", lp_criterion},
      {"11", "spline", "Best L2 splines: k=1 vs Haar; k=2 sine mesh halving; residual orthogonality",
       "gap <= 1e-8; ratios in [3.4, 4.6]; orthogonality < 1e-8", spline_criterion},
      {"12", "determinism", "Repeated runs render byte-identical artifacts", "no differing artifacts",
       determinism_criterion},
  };
  return defs;
}

}  // namespace

const char* to_string(CriterionStatus s) {
  switch (s) {
    case CriterionStatus::pass: return "PASS";
    case CriterionStatus::fail: return "FAIL";
    case CriterionStatus::expected_fail: return "XFAIL";
    case CriterionStatus::unexpected_pass: return "XPASS";
  }
  return "FAIL";
}

bool SuiteResult::passed() const noexcept {
  return std::none_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.blocking_failure(); });
}

std::string SuiteResult::summary_csv() const {
  CsvTable t({"criterion", "tag", "title", "expected", "observed", "status"});
  for (const CriterionResult& c : criteria) t.row({c.id, c.tag, c.title, c.expected, c.observed, to_string(c.status)});
  return t.str();
}

std::string SuiteResult::summary_json() const {
  Json rows = Json::array();
  for (const CriterionResult& c : criteria) {
    Json files = Json::array();
    for (const auto& [name, content] : c.artifacts) files.push_back(name);
    rows.push_back(Json{{"criterion", c.id},
                        {"tag", c.tag},
                        {"title", c.title},
                        {"expected", c.expected},
                        {"observed", c.observed},
                        {"status", to_string(c.status)},
                        {"artifacts", files}});
  }
  return render_json(Json{{"passed", passed()}, {"criteria", rows}});
}

std::vector<std::string> suite_tags() {
  return {"families", "projection", "kernel", "convergence", "sobolev", "spline", "determinism"};
}

SuiteResult run_suite(const SuiteConfig& config) {
  if (config.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (config.level != 0 && (config.level < 3 || config.level > 16)) throw ConfigError("grid level must lie in 3..16");
  const auto& defs = definitions();
  const std::vector<std::string> tags = suite_tags();
  std::vector<const Definition*> selected;
  for (const std::string& sel : config.only) {
    const bool known = std::find(tags.begin(), tags.end(), sel) != tags.end() ||
                       std::any_of(defs.begin(), defs.end(), [&](const Definition& d) { return sel == d.id; });
    if (!known) throw ConfigError("unknown suite selector '" + sel + "'");
  }
  for (const Definition& d : defs) {
    const bool take = config.only.empty() || std::any_of(config.only.begin(), config.only.end(), [&](const std::string& s) {
                        return s == d.id || s == d.tag;
                      });
    if (take) selected.push_back(&d);
  }

  Context ctx(config);
  SuiteResult result;
  result.criteria.resize(selected.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) {
      const Definition& d = *selected[i];
      CriterionResult r;
      try {
        r = d.run(ctx);
      } catch (const std::exception& e) {
        r.status = std::string(d.id) == "3s" ? CriterionStatus::expected_fail : CriterionStatus::fail;
        r.observed = std::string("error: ") + e.what();
        r.artifacts.clear();
      }
      r.id = d.id;
      r.tag = d.tag;
      r.title = d.title;
      r.expected = d.expected;
      result.criteria[i] = std::move(r);
    }
  };
  const int threads = std::min<int>(config.jobs, static_cast<int>(selected.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return result;
}

void write_suite_report(const SuiteResult& result, const std::filesystem::path& dir) {
  for (const CriterionResult& c : result.criteria)
    for (const auto& [name, content] : c.artifacts) atomic_write(dir / name, content);
  atomic_write(dir / "summary.csv", result.summary_csv());
  atomic_write(dir / "summary.json", result.summary_json());
}

}  // namespace waverate
