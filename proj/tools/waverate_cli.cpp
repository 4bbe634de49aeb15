// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "waverate/waverate.h"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitCompute = 2;
constexpr int kExitSuite = 3;

struct CliError : std::runtime_error {
  CliError(int code, const std::string& msg) : std::runtime_error(msg), code(code) {}
  int code;
};

[[noreturn]] void config_error(const std::string& msg) { throw CliError(kExitConfig, msg); }

void check(waverate_status st) {
  if (st == WAVERATE_OK) return;
  throw CliError(st == WAVERATE_ERROR_CONFIG ? kExitConfig : kExitCompute, waverate_last_error());
}

struct StringDeleter {
  void operator()(waverate_string* s) const { waverate_string_destroy(s); }
};
using StringPtr = std::unique_ptr<waverate_string, StringDeleter>;

struct FamilyDeleter {
  void operator()(waverate_family* f) const { waverate_family_destroy(f); }
};
using FamilyPtr = std::unique_ptr<waverate_family, FamilyDeleter>;

std::string text(const StringPtr& s) { return std::string(waverate_string_data(s.get()), waverate_string_size(s.get())); }

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    config_error("invalid " + what + " '" + s + "'");
  }
  if (used != s.size()) config_error("invalid " + what + " '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_double(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e6) config_error("invalid " + what + " '" + s + "'");
  return static_cast<int>(v);
}

struct IntRange {
  int lo = 0;
  int hi = 0;
};

/// "a..b" or a single integer; lo <= hi is required.
IntRange parse_int_range(const std::string& s, const std::string& what) {
  const auto dots = s.find("..");
  IntRange r;
  if (dots == std::string::npos) {
    r.lo = r.hi = parse_int(s, what);
  } else {
    r.lo = parse_int(s.substr(0, dots), what);
    r.hi = parse_int(s.substr(dots + 2), what);
  }
  if (r.hi < r.lo) config_error("invalid " + what + " '" + s + "': upper end below lower end");
  return r;
}

struct Sweep {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
};

/// "a..b:step".
Sweep parse_sweep(const std::string& s) {
  const auto dots = s.find("..");
  const auto colon = s.find(':');
  if (dots == std::string::npos || colon == std::string::npos || colon < dots)
    config_error("sweep must read lo..hi:step, got '" + s + "'");
  Sweep w{parse_double(s.substr(0, dots), "sweep start"), parse_double(s.substr(dots + 2, colon - dots - 2), "sweep end"),
          parse_double(s.substr(colon + 1), "sweep step")};
  if (!(w.lo > 0.0) || w.hi < w.lo || !(w.step > 0.0)) config_error("invalid sweep '" + s + "'");
  return w;
}

struct Interval {
  double left = 0.0;
  double right = 0.0;
};

/// "a,b" or "a..b".
Interval parse_window(const std::string& s) {
  auto sep = s.find("..");
  std::size_t width = 2;
  if (sep == std::string::npos) {
    sep = s.find(',');
    width = 1;
  }
  if (sep == std::string::npos) config_error("window must read left,right");
  Interval w{parse_double(s.substr(0, sep), "window"), parse_double(s.substr(sep + width), "window")};
  if (!(w.right > w.left)) config_error("window '" + s + "' is empty");
  return w;
}

Interval default_window(const std::string& function) {
  if (function == "gaussian") return {-2.0, 2.0};
  if (function == "ramp") return {-0.75, 0.5};
  if (function == "step") return {0.25, 1.75};
  if (function == "cusp") return {-0.5, 0.5};
  if (function == "oscillating") return {-0.75, -0.25};
  if (function == "sine") return {0.5, 2.5};
  config_error("unknown test function '" + function + "'");
}

struct Common {
  std::string family = "haar";
  std::string family_file;
  int level = 0;
  std::string output;
  std::string format = "json";
};

FamilyPtr load_family(const Common& c) {
  waverate_family* f = nullptr;
  if (!c.family_file.empty()) {
    std::ifstream in(c.family_file, std::ios::binary);
    if (!in) config_error("cannot read " + c.family_file);
    std::stringstream ss;
    ss << in.rdbuf();
    check(waverate_family_from_json(ss.str().c_str(), &f));
  } else {
    check(waverate_family_create(c.family.c_str(), c.level, &f));
  }
  return FamilyPtr(f);
}

/// Writes the document to --output (atomically) and the summary to stdout, or
/// the document to stdout and the summary to stderr.
void deliver(const Common& c, const std::string& doc, const std::string& summary) {
  if (!c.output.empty()) {
    check(waverate_write_file(c.output.c_str(), doc.data(), doc.size()));
    std::cout << summary << '\n';
  } else {
    std::cout << doc;
    std::cerr << summary << '\n';
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void add_common(CLI::App* app, Common& c, bool with_family, bool with_format) {
  if (with_family) {
    app->add_option("--family", c.family, "Family spec: haar, shannon, daubechies:N, battle_lemarie:K");
    app->add_option("--family-file", c.family_file, "Family JSON document (overrides --family)");
  }
  app->add_option("--level", c.level, "Sampling level (default: WAVERATE_GRID_LEVEL or built-in)");
  app->add_option("--output,-o", c.output, "Output file (default: standard output)");
  if (with_format) app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void validate_level(int level) {
  if (level != 0 && (level < 3 || level > 16)) config_error("level must lie in 3..16");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet expansion convergence laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(waverate_version()));

  Common fam_c, exp_c, ker_c, rate_c, sob_c, spl_c;

  CLI::App* family = app.add_subcommand("family", "Build a family, check its invariants, export JSON");
  add_common(family, fam_c, true, false);

  CLI::App* expand = app.add_subcommand("expand", "Expansion coefficients of a test function (JSON)");
  add_common(expand, exp_c, true, false);
  std::string exp_function = "gaussian", exp_j = "2..6", exp_window;
  expand->add_option("--function", exp_function, "Test function");
  expand->add_option("--j", exp_j, "Levels j0..j1 (inclusive)");
  expand->add_option("--window", exp_window, "left,right (default: per function)");

  CLI::App* kernel = app.add_subcommand("kernel", "Reproducing kernel profiles and convolution bound");
  add_common(kernel, ker_c, true, true);
  std::string ker_j = "0..6", ker_fit = "none";
  bool ker_check = false;
  double ker_exponent = 1.0;
  kernel->add_option("--j", ker_j, "Scale range a..b (a single scale without --check-bound)");
  kernel->add_flag("--check-bound", ker_check, "Verify the radial convolution bound over the range");
  kernel->add_option("--fit", ker_fit, "Decay fit: none, exponential, algebraic")
      ->check(CLI::IsMember({"none", "exponential", "algebraic"}));
  kernel->add_option("--exponent", ker_exponent, "Exponent N for the algebraic fit");

  CLI::App* rate = app.add_subcommand("rate", "Sup-error rate regression (or L^p traces with --p)");
  add_common(rate, rate_c, true, true);
  std::string rate_function = "gaussian", rate_j = "3..9", rate_window, rate_p;
  rate->add_option("--function", rate_function, "Test function");
  rate->add_option("--j", rate_j, "Level range a..b");
  rate->add_option("--window", rate_window, "left,right (default: per function)");
  rate->add_option("--p", rate_p, "1, 2 or inf: emit an L^p error trace instead");

  CLI::App* sobolev = app.add_subcommand("sobolev", "Frequency-domain criteria and critical order");
  add_common(sobolev, sob_c, true, false);
  std::string sob_sweep = "0.1..3.0:0.1", sob_criterion = "wavelet";
  double sob_eps = 1.0;
  bool sob_critical = false;
  sobolev->add_option("--sweep-s", sob_sweep, "Sweep lo..hi:step (CSV)");
  sobolev->add_option("--epsilon", sob_eps, "Frequency radius epsilon");
  sobolev->add_flag("--critical", sob_critical, "Bisect for the critical order instead (JSON)");
  sobolev->add_option("--criterion", sob_criterion, "wavelet or scaling")->check(CLI::IsMember({"wavelet", "scaling"}));

  CLI::App* spline = app.add_subcommand("spline", "Best L2 spline approximation study");
  add_common(spline, spl_c, false, true);
  std::string spl_function = "sine", spl_window = "0,3";
  int spl_order = 2, spl_halvings = 4;
  double spl_mesh = 0.25;
  bool spl_coeffs = false;
  spline->add_option("--function", spl_function, "Test function");
  spline->add_option("--order", spl_order, "Spline order k");
  spline->add_option("--mesh", spl_mesh, "Coarsest mesh h");
  spline->add_option("--halvings", spl_halvings, "Number of mesh halvings");
  spline->add_option("--window", spl_window, "left,right");
  spline->add_flag("--coefficients", spl_coeffs, "Export coefficients for --mesh only (CSV)");

  CLI::App* suite = app.add_subcommand("suite", "Run the acceptance battery");
  std::vector<std::string> suite_only;
  int suite_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::uint64_t suite_seed = 0;
  int suite_level = 0;
  std::string suite_dir = "suite_report";
  suite->add_option("--only", suite_only, "Tags or criterion ids")->delimiter(',');
  suite->add_option("--jobs", suite_jobs, "Worker threads");
  bool seed_given = false;
  suite->add_option("--seed", suite_seed, "Seed for randomized checks")->each([&](const std::string&) { seed_given = true; });
  suite->add_option("--level", suite_level, "Sampling level");
  suite->add_option("--output,-o", suite_dir, "Report directory");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      std::cout << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      std::cout << app.help();
      return 0;
    } catch (const CLI::CallForVersion&) {
      std::cout << waverate_version() << '\n';
      return 0;
    } catch (const CLI::ParseError& e) {
      config_error(e.what());
    }

    if (family->parsed()) {
      validate_level(fam_c.level);
      FamilyPtr f = load_family(fam_c);
      waverate_invariants inv{};
      check(waverate_family_invariants(f.get(), &inv));
      waverate_string* js = nullptr;
      check(waverate_family_to_json(f.get(), &js));
      StringPtr doc(js);
      deliver(fam_c, text(doc),
              std::string("family ") + waverate_family_id(f.get()) + " level=" +
                  std::to_string(waverate_family_level(f.get())) + " orthonormality_defect=" +
                  fmt(inv.orthonormality_defect) + " invariants=" + (inv.passed ? "pass" : "fail"));
      return 0;
    }

    if (expand->parsed()) {
      validate_level(exp_c.level);
      const IntRange j = parse_int_range(exp_j, "j range");
      const Interval w = exp_window.empty() ? default_window(exp_function) : parse_window(exp_window);
      FamilyPtr f = load_family(exp_c);
      waverate_string* js = nullptr;
      check(waverate_expand(f.get(), exp_function.c_str(), j.lo, j.hi + 1, w.left, w.right, &js));
      StringPtr doc(js);
      deliver(exp_c, text(doc),
              std::string("expand ") + waverate_family_id(f.get()) + " " + exp_function + " j=" +
                  std::to_string(j.lo) + ".." + std::to_string(j.hi));
      return 0;
    }

    if (kernel->parsed()) {
      validate_level(ker_c.level);
      const IntRange j = parse_int_range(ker_j, "j range");
      if (j.lo < 0) config_error("kernel scales must be nonnegative");
      if (ker_check && j.hi - j.lo < 2) config_error("the bound check needs at least three scales");
      if (!ker_check && j.lo != j.hi) config_error("without --check-bound give a single scale");
      FamilyPtr f = load_family(ker_c);
      if (!ker_check) {
        waverate_string* cs = nullptr;
        check(waverate_kernel_csv(f.get(), j.lo, &cs));
        StringPtr doc(cs);
        deliver(ker_c, text(doc), std::string("kernel ") + waverate_family_id(f.get()) + " j=" + std::to_string(j.lo));
        return 0;
      }
      const waverate_decay_model model = ker_fit == "exponential" ? WAVERATE_DECAY_EXPONENTIAL
                                         : ker_fit == "algebraic" ? WAVERATE_DECAY_ALGEBRAIC
                                                                  : WAVERATE_DECAY_NONE;
      waverate_bound b{};
      waverate_string *js = nullptr, *cs = nullptr;
      check(waverate_kernel_bound(f.get(), j.lo, j.hi, model, ker_exponent, &b, &js, &cs));
      StringPtr jdoc(js), cdoc(cs);
      deliver(ker_c, ker_c.format == "csv" ? text(cdoc) : text(jdoc),
              std::string("kernel ") + waverate_family_id(f.get()) + " collapse_defect=" + fmt(b.collapse_defect) +
                  " l1_mass=" + fmt(b.l1_mass) + " bound=" + (b.passed ? "pass" : "fail"));
      return 0;
    }

    if (rate->parsed()) {
      validate_level(rate_c.level);
      const IntRange j = parse_int_range(rate_j, "j range");
      const Interval w = rate_window.empty() ? default_window(rate_function) : parse_window(rate_window);
      std::optional<double> p;
      if (!rate_p.empty()) {
        if (rate_p == "inf") {
          p = INFINITY;
        } else {
          p = parse_double(rate_p, "p");
          if (*p != 1.0 && *p != 2.0) config_error("p must be 1, 2 or inf");
        }
      } else if (j.hi - j.lo < 3) {
        config_error("rate regression needs at least 4 levels");
      }
      FamilyPtr f = load_family(rate_c);
      if (p) {
        waverate_string* cs = nullptr;
        check(waverate_lp_trace(f.get(), rate_function.c_str(), *p, j.lo, j.hi, w.left, w.right, &cs));
        StringPtr doc(cs);
        deliver(rate_c, text(doc),
                std::string("rate ") + waverate_family_id(f.get()) + " " + rate_function + " p=" + rate_p);
        return 0;
      }
      waverate_rate r{};
      waverate_string *js = nullptr, *cs = nullptr;
      check(waverate_rate_report(f.get(), rate_function.c_str(), j.lo, j.hi, w.left, w.right, &r, &js, &cs));
      StringPtr jdoc(js), cdoc(cs);
      deliver(rate_c, rate_c.format == "csv" ? text(cdoc) : text(jdoc),
              std::string("rate ") + waverate_family_id(f.get()) + " " + rate_function + " slope=" + fmt(r.slope) +
                  " r2=" + fmt(r.r_squared));
      return 0;
    }

    if (sobolev->parsed()) {
      validate_level(sob_c.level);
      if (!(sob_eps > 0.0) || sob_eps > M_PI) config_error("epsilon must lie in (0, pi]");
      const waverate_criterion kind =
          sob_criterion == "scaling" ? WAVERATE_CRITERION_SCALING : WAVERATE_CRITERION_WAVELET;
      if (sob_critical) {
        FamilyPtr f = load_family(sob_c);
        double s_star = 0.0;
        waverate_string* js = nullptr;
        check(waverate_critical_order(f.get(), kind, sob_eps, &s_star, &js));
        StringPtr doc(js);
        deliver(sob_c, text(doc),
                std::string("sobolev ") + waverate_family_id(f.get()) + " s_star=" + fmt(s_star));
        return 0;
      }
      const Sweep s = parse_sweep(sob_sweep);
      FamilyPtr f = load_family(sob_c);
      waverate_string* cs = nullptr;
      check(waverate_sobolev_sweep(f.get(), s.lo, s.hi, s.step, sob_eps, &cs));
      StringPtr doc(cs);
      deliver(sob_c, text(doc), std::string("sobolev ") + waverate_family_id(f.get()) + " sweep " + sob_sweep);
      return 0;
    }

    if (spline->parsed()) {
      validate_level(spl_c.level);
      const Interval w = parse_window(spl_window);
      if (spl_order < 1 || spl_order > 8) config_error("spline order must lie in 1..8");
      if (!(spl_mesh > 0.0)) config_error("mesh must be positive");
      if (spl_halvings < 1) config_error("need at least one halving");
      const int flevel = spl_c.level > 0 ? spl_c.level + 2 : 0;
      if (spl_coeffs) {
        waverate_string* cs = nullptr;
        check(waverate_spline_coefficients(spl_function.c_str(), spl_order, spl_mesh, w.left, w.right, flevel, &cs));
        StringPtr doc(cs);
        deliver(spl_c, text(doc), "spline " + spl_function + " order=" + std::to_string(spl_order) + " h=" + fmt(spl_mesh));
        return 0;
      }
      waverate_rate r{};
      waverate_string *js = nullptr, *cs = nullptr;
      check(waverate_spline_study(spl_function.c_str(), spl_order, spl_mesh, spl_halvings + 1, w.left, w.right, flevel,
                                  &r, &js, &cs));
      StringPtr jdoc(js), cdoc(cs);
      deliver(spl_c, spl_c.format == "csv" ? text(cdoc) : text(jdoc),
              "spline " + spl_function + " order=" + std::to_string(spl_order) + " slope=" + fmt(r.slope));
      return 0;
    }

    if (suite->parsed()) {
      validate_level(suite_level);
      if (suite_jobs < 1) config_error("jobs must be at least 1");
      std::string only;
      for (const std::string& o : suite_only) only += (only.empty() ? "" : ",") + o;
      waverate_suite_options opts;
      waverate_suite_options_init(&opts);
      opts.only = only.c_str();
      opts.jobs = suite_jobs;
      if (seed_given) opts.seed = suite_seed;
      opts.level = suite_level;
      waverate_suite* raw = nullptr;
      check(waverate_suite_run(&opts, &raw));
      std::unique_ptr<waverate_suite, void (*)(waverate_suite*)> s(raw, waverate_suite_destroy);
      check(waverate_suite_write(s.get(), suite_dir.c_str()));
      std::size_t failed = 0;
      for (std::size_t i = 0; i < waverate_suite_count(s.get()); ++i) {
        waverate_criterion_view v{};
        check(waverate_suite_criterion(s.get(), i, &v));
        failed += static_cast<std::size_t>(v.blocking_failure);
        std::cout << v.status << "  [" << v.id << "] " << v.title << ": " << v.observed << '\n';
      }
      std::cout << "suite " << waverate_suite_count(s.get()) << " criteria, " << failed << " failed, report in "
                << suite_dir << '\n';
      return waverate_suite_passed(s.get()) ? 0 : kExitSuite;
    }
  } catch (const CliError& e) {
    std::string msg = e.what();
    for (char& ch : msg)
      if (ch == '\n') ch = ' ';
    std::cerr << "error: " << msg << '\n';
    return e.code;
  }
  return kExitConfig;
}
