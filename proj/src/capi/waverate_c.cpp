// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#include "waverate/waverate.h"

#include <cmath>
#include <new>
#include <sstream>
#include <string>

#include "core/battery.hpp"
#include "core/io.hpp"
#include "core/serialize.hpp"

struct waverate_family {
  waverate::MRAFamily fam;
  std::string id;
};

struct waverate_string {
  std::string text;
};

struct waverate_suite {
  waverate::SuiteResult result;
};

namespace {

thread_local std::string g_last_error;

template <class F>
waverate_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return WAVERATE_OK;
  } catch (const waverate::ConfigError& e) {
    g_last_error = e.what();
    return WAVERATE_ERROR_CONFIG;
  } catch (const waverate::ComputeError& e) {
    g_last_error = e.what();
    return WAVERATE_ERROR_COMPUTE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return WAVERATE_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WAVERATE_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return WAVERATE_ERROR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw waverate::ConfigError(std::string(what) + " must not be NULL");
}

void emit(waverate_string** out, std::string text) {
  if (out) *out = new waverate_string{std::move(text)};
}

waverate::TestFunction test_function(const char* name) {
  require(name, "function name");
  return waverate::builtin_function(name);
}

void check_range(int lo, int hi) {
  if (hi < lo) throw waverate::ConfigError("empty j range");
}

}  // namespace

extern "C" {

const char* waverate_last_error(void) { return g_last_error.c_str(); }

const char* waverate_version(void) { return "0.1.0"; }

int waverate_default_grid_level(void) {
  try {
    return waverate::default_grid_level();
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return -1;
  }
}

const char* waverate_string_data(const waverate_string* s) { return s ? s->text.c_str() : ""; }
size_t waverate_string_size(const waverate_string* s) { return s ? s->text.size() : 0; }
void waverate_string_destroy(waverate_string* s) { delete s; }

waverate_status waverate_family_create(const char* spec, int level, waverate_family** out) {
  return guarded([&] {
    require(spec, "family spec");
    require(out, "output handle");
    auto* h = new waverate_family{waverate::make_family_from_spec(spec, level), {}};
    h->id = h->fam.id();
    *out = h;
  });
}

waverate_status waverate_family_from_json(const char* text, waverate_family** out) {
  return guarded([&] {
    require(text, "family document");
    require(out, "output handle");
    auto* h = new waverate_family{waverate::family_from_json(text), {}};
    h->id = h->fam.id();
    *out = h;
  });
}

waverate_status waverate_family_to_json(const waverate_family* fam, waverate_string** out) {
  return guarded([&] {
    require(fam, "family");
    require(out, "output string");
    emit(out, waverate::family_to_json(fam->fam));
  });
}

void waverate_family_destroy(waverate_family* fam) { delete fam; }

const char* waverate_family_id(const waverate_family* fam) { return fam ? fam->id.c_str() : ""; }

int waverate_family_level(const waverate_family* fam) { return fam ? fam->fam.level : 0; }

waverate_status waverate_family_invariants(const waverate_family* fam, waverate_invariants* out) {
  return guarded([&] {
    require(fam, "family");
    require(out, "output");
    const waverate::InvariantReport r = waverate::check_invariants(fam->fam);
    *out = {r.phi_integral_defect, r.psi_integral_defect, r.partition_defect, r.orthonormality_defect,
            r.passed() ? 1 : 0};
  });
}

waverate_status waverate_expand(const waverate_family* fam, const char* function, int j0, int j1, double left,
                                double right, waverate_string** json_out) {
  return guarded([&] {
    require(fam, "family");
    if (j1 <= j0) throw waverate::ConfigError("expansion needs j0 < j1");
    const auto f = test_function(function).sample(fam->fam.level + 2);
    emit(json_out, waverate::coefficients_to_json(waverate::analyze(f, fam->fam, j0, j1, {left, right})));
  });
}

waverate_status waverate_trace(const waverate_family* fam, const char* function, double x, int j_lo, int j_hi,
                               waverate_string** csv_out) {
  return guarded([&] {
    require(fam, "family");
    check_range(j_lo, j_hi);
    const waverate::TestFunction tf = test_function(function);
    waverate::MarkedPoint point{x, waverate::PointKind::continuity, NAN};
    for (const auto& m : tf.marked)
      if (m.x == x) point = m;
    const auto trace = waverate::pointwise_trace(tf.sample(fam->fam.level + 2), fam->fam, x, j_lo, j_hi);
    emit(csv_out, waverate::trace_to_csv(fam->id, tf.name, point, trace));
  });
}

waverate_status waverate_rate_report(const waverate_family* fam, const char* function, int j_lo, int j_hi,
                                     double left, double right, waverate_rate* summary, waverate_string** json_out,
                                     waverate_string** csv_out) {
  return guarded([&] {
    require(fam, "family");
    check_range(j_lo, j_hi);
    const waverate::TestFunction tf = test_function(function);
    const waverate::RateReport r =
        waverate::sup_error_rates(tf, fam->fam, j_lo, j_hi, {left, right}, fam->fam.level + 2);
    if (summary) *summary = {r.slope, r.intercept, r.r_squared};
    emit(json_out, waverate::render_json(waverate::to_json(r)));
    emit(csv_out, waverate::rate_report_to_csv(r));
  });
}

waverate_status waverate_lp_trace(const waverate_family* fam, const char* function, double p, int j_lo, int j_hi,
                                  double left, double right, waverate_string** csv_out) {
  return guarded([&] {
    require(fam, "family");
    check_range(j_lo, j_hi);
    const waverate::TestFunction tf = test_function(function);
    const auto trace =
        waverate::lp_error_trace(tf.sample(fam->fam.level + 2), fam->fam, p, j_lo, j_hi, {left, right});
    emit(csv_out, waverate::lp_trace_to_csv(fam->id, tf.name, p, trace));
  });
}

waverate_status waverate_kernel_bound(const waverate_family* fam, int j_lo, int j_hi, waverate_decay_model model,
                                      double exponent, waverate_bound* summary, waverate_string** json_out,
                                      waverate_string** csv_out) {
  return guarded([&] {
    require(fam, "family");
    check_range(j_lo, j_hi);
    if (j_lo < 0) throw waverate::ConfigError("kernel scales must be nonnegative");
    std::vector<int> js;
    for (int j = j_lo; j <= j_hi; ++j) js.push_back(j);
    const waverate::BoundReport rep = waverate::verify_convolution_bound(fam->fam, js);
    std::optional<waverate::DecayFit> fit;
    if (model == WAVERATE_DECAY_EXPONENTIAL) fit = waverate::fit_decay(rep.envelope, waverate::DecayModel::exponential);
    if (model == WAVERATE_DECAY_ALGEBRAIC)
      fit = waverate::fit_decay(rep.envelope, waverate::DecayModel::algebraic, exponent);
    if (summary)
      *summary = {rep.collapse_defect, rep.envelope.l1_mass, rep.envelope.tail_fraction, fit ? fit->rate : 0.0,
                  fit ? fit->r_squared : 0.0, rep.passed ? 1 : 0};
    emit(json_out, waverate::bound_report_to_json(fam->id, rep, fit));
    emit(csv_out, waverate::bound_profiles_to_csv(rep));
  });
}

waverate_status waverate_kernel_csv(const waverate_family* fam, int j, waverate_string** csv_out) {
  return guarded([&] {
    require(fam, "family");
    if (j < 0) throw waverate::ConfigError("kernel scale must be nonnegative");
    emit(csv_out, waverate::kernel_to_csv(waverate::profile_kernel(fam->fam, j)));
  });
}

waverate_status waverate_sobolev_sweep(const waverate_family* fam, double s_lo, double s_hi, double s_step,
                                       double epsilon, waverate_string** csv_out) {
  return guarded([&] {
    require(fam, "family");
    if (!(s_lo > 0.0) || !(s_hi >= s_lo) || !(s_step > 0.0)) throw waverate::ConfigError("invalid s sweep");
    const waverate::ShellLayout layout = waverate::default_shell_layout();
    const auto ws = waverate::wavelet_shell_spectrum(fam->fam, layout);
    const auto ss = waverate::scaling_shell_spectrum(fam->fam, layout);
    std::vector<waverate::SweepRow> rows;
    const long n = std::lround(std::floor((s_hi - s_lo) / s_step + 1e-9));
    for (long i = 0; i <= n; ++i) {
      const double s = s_lo + static_cast<double>(i) * s_step;
      rows.push_back({s, epsilon, waverate::wavelet_criterion(ws, s, epsilon),
                      waverate::scaling_criterion(ss, s, epsilon)});
    }
    emit(csv_out, waverate::sobolev_sweep_to_csv(rows));
  });
}

waverate_status waverate_critical_order(const waverate_family* fam, waverate_criterion kind, double epsilon,
                                        double* s_star, waverate_string** json_out) {
  return guarded([&] {
    require(fam, "family");
    const auto c = waverate::critical_order(
        fam->fam, kind == WAVERATE_CRITERION_SCALING ? waverate::CriterionKind::scaling : waverate::CriterionKind::wavelet,
        epsilon);
    if (s_star) *s_star = c.s_star;
    emit(json_out, waverate::render_json(waverate::to_json(c)));
  });
}

waverate_status waverate_spline_study(const char* function, int order, double h0, int count, double left,
                                      double right, int function_level, waverate_rate* summary,
                                      waverate_string** json_out, waverate_string** csv_out) {
  return guarded([&] {
    if (count < 2) throw waverate::ConfigError("spline study needs at least two meshes");
    const waverate::TestFunction tf = test_function(function);
    std::vector<double> meshes;
    for (int i = 0; i < count; ++i) meshes.push_back(std::ldexp(h0, -i));
    const waverate::RateReport r = waverate::spline_convergence_study(tf, order, meshes, {left, right}, function_level);
    if (summary) *summary = {r.slope, r.intercept, r.r_squared};
    emit(json_out, waverate::render_json(waverate::to_json(r)));
    emit(csv_out, waverate::rate_report_to_csv(r));
  });
}

waverate_status waverate_spline_coefficients(const char* function, int order, double h, double left, double right,
                                             int function_level, waverate_string** csv_out) {
  return guarded([&] {
    const waverate::TestFunction tf = test_function(function);
    const auto s = waverate::best_l2_spline(tf.sample(function_level),
                                            waverate::SplineSpace::make(order, h, {left, right}));
    emit(csv_out, waverate::spline_to_csv(s));
  });
}

void waverate_suite_options_init(waverate_suite_options* opts) {
  if (!opts) return;
  opts->only = nullptr;
  opts->jobs = 1;
  opts->seed = waverate::SuiteConfig{}.seed;
  opts->level = 0;
}

waverate_status waverate_suite_run(const waverate_suite_options* opts, waverate_suite** out) {
  return guarded([&] {
    require(out, "output handle");
    waverate::SuiteConfig cfg;
    if (opts) {
      cfg.jobs = opts->jobs;
      cfg.seed = opts->seed;
      cfg.level = opts->level;
      if (opts->only) {
        std::stringstream ss(opts->only);
        std::string item;
        while (std::getline(ss, item, ','))
          if (!item.empty()) cfg.only.push_back(item);
      }
    }
    *out = new waverate_suite{waverate::run_suite(cfg)};
  });
}

void waverate_suite_destroy(waverate_suite* suite) { delete suite; }

int waverate_suite_passed(const waverate_suite* suite) { return suite && suite->result.passed() ? 1 : 0; }

size_t waverate_suite_count(const waverate_suite* suite) { return suite ? suite->result.criteria.size() : 0; }

waverate_status waverate_suite_criterion(const waverate_suite* suite, size_t index, waverate_criterion_view* out) {
  return guarded([&] {
    require(suite, "suite");
    require(out, "output");
    if (index >= suite->result.criteria.size()) throw waverate::ConfigError("criterion index out of range");
    const auto& c = suite->result.criteria[index];
    *out = {c.id.c_str(),       c.tag.c_str(),
            c.title.c_str(),    c.expected.c_str(),
            c.observed.c_str(), waverate::to_string(c.status),
            c.blocking_failure() ? 1 : 0};
  });
}

waverate_status waverate_suite_write(const waverate_suite* suite, const char* directory) {
  return guarded([&] {
    require(suite, "suite");
    require(directory, "directory");
    waverate::write_suite_report(suite->result, directory);
  });
}

waverate_status waverate_suite_summary_csv(const waverate_suite* suite, waverate_string** out) {
  return guarded([&] {
    require(suite, "suite");
    require(out, "output string");
    emit(out, suite->result.summary_csv());
  });
}

waverate_status waverate_write_file(const char* path, const char* data, size_t size) {
  return guarded([&] {
    require(path, "path");
    require(data, "data");
    waverate::atomic_write(path, std::string_view(data, size));
  });
}

}  // extern "C"
