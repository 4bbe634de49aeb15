// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#ifndef WAVERATE_WAVERATE_H
#define WAVERATE_WAVERATE_H

#include <stddef.h>
#include <stdint.h>

#if defined(WAVERATE_BUILDING_LIBRARY)
#define WAVERATE_API __attribute__((visibility("default")))
#else
#define WAVERATE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum waverate_status {
  WAVERATE_OK = 0,
  /** Invalid input: bad ranges, unknown names, malformed documents. */
  WAVERATE_ERROR_CONFIG = 1,
  /** Numerical failure: non-convergence, insufficient resolution. */
  WAVERATE_ERROR_COMPUTE = 2,
  /** Unexpected internal failure. */
  WAVERATE_ERROR_INTERNAL = 4
} waverate_status;

typedef struct waverate_family waverate_family;
typedef struct waverate_string waverate_string;
typedef struct waverate_suite waverate_suite;

/** Message of the last failed call on this thread; never NULL. */
WAVERATE_API const char* waverate_last_error(void);
WAVERATE_API const char* waverate_version(void);
/** Default sampling level, honouring WAVERATE_GRID_LEVEL. */
WAVERATE_API int waverate_default_grid_level(void);

/* Owned strings returned by the library. */
WAVERATE_API const char* waverate_string_data(const waverate_string* s);
WAVERATE_API size_t waverate_string_size(const waverate_string* s);
WAVERATE_API void waverate_string_destroy(waverate_string* s);

/* Families. `spec` is "haar", "shannon", "daubechies:N" or "battle_lemarie:K";
 * level <= 0 selects the default level. */
WAVERATE_API waverate_status waverate_family_create(const char* spec, int level, waverate_family** out);
WAVERATE_API waverate_status waverate_family_from_json(const char* text, waverate_family** out);
WAVERATE_API waverate_status waverate_family_to_json(const waverate_family* fam, waverate_string** out);
WAVERATE_API void waverate_family_destroy(waverate_family* fam);
/** Identifier such as "daubechies:2"; owned by the family. */
WAVERATE_API const char* waverate_family_id(const waverate_family* fam);
WAVERATE_API int waverate_family_level(const waverate_family* fam);

typedef struct waverate_invariants {
  double phi_integral_defect;
  double psi_integral_defect;
  double partition_defect;
  double orthonormality_defect;
  int passed;
} waverate_invariants;

WAVERATE_API waverate_status waverate_family_invariants(const waverate_family* fam, waverate_invariants* out);

/* Test functions: gaussian, ramp, step, cusp, oscillating, sine.
 * function_level <= 0 samples at the family level + 2. */

/** Scaling and wavelet coefficients for j0 <= j < j1 over [left, right], as JSON. */
WAVERATE_API waverate_status waverate_expand(const waverate_family* fam, const char* function, int j0, int j1,
                                             double left, double right, waverate_string** json_out);

/** (P_j f)(x) for j_lo <= j <= j_hi as CSV (family, function, kind, x, reference, j, value). */
WAVERATE_API waverate_status waverate_trace(const waverate_family* fam, const char* function, double x, int j_lo,
                                            int j_hi, waverate_string** csv_out);

typedef struct waverate_rate {
  double slope;
  double intercept;
  double r_squared;
} waverate_rate;

/** Sup-error regression over j_lo..j_hi on [left, right]. Either output pointer may be NULL. */
WAVERATE_API waverate_status waverate_rate_report(const waverate_family* fam, const char* function, int j_lo,
                                                  int j_hi, double left, double right, waverate_rate* summary,
                                                  waverate_string** json_out, waverate_string** csv_out);

/** L^p errors (p = 1, 2 or INFINITY) on [left, right] as CSV (family, function, p, j, error). */
WAVERATE_API waverate_status waverate_lp_trace(const waverate_family* fam, const char* function, double p, int j_lo,
                                               int j_hi, double left, double right, waverate_string** csv_out);

typedef enum waverate_decay_model {
  WAVERATE_DECAY_NONE = 0,
  WAVERATE_DECAY_EXPONENTIAL = 1,
  WAVERATE_DECAY_ALGEBRAIC = 2
} waverate_decay_model;

typedef struct waverate_bound {
  double collapse_defect;
  double l1_mass;
  double tail_fraction;
  /** Fitted a (exponential) or C_N (algebraic); 0 without a fit. */
  double fit_rate;
  double fit_r_squared;
  int passed;
} waverate_bound;

/** Convolution-bound check over j_lo..j_hi (at least three scales). */
WAVERATE_API waverate_status waverate_kernel_bound(const waverate_family* fam, int j_lo, int j_hi,
                                                   waverate_decay_model model, double exponent,
                                                   waverate_bound* summary, waverate_string** json_out,
                                                   waverate_string** csv_out);

/** P_j(x, y) on the profile grids as CSV (x, y, value). */
WAVERATE_API waverate_status waverate_kernel_csv(const waverate_family* fam, int j, waverate_string** csv_out);

typedef enum waverate_criterion { WAVERATE_CRITERION_WAVELET = 0, WAVERATE_CRITERION_SCALING = 1 } waverate_criterion;

/** Both criteria for s = s_lo, s_lo + s_step, ... <= s_hi as CSV. */
WAVERATE_API waverate_status waverate_sobolev_sweep(const waverate_family* fam, double s_lo, double s_hi,
                                                    double s_step, double epsilon, waverate_string** csv_out);

WAVERATE_API waverate_status waverate_critical_order(const waverate_family* fam, waverate_criterion kind,
                                                     double epsilon, double* s_star, waverate_string** json_out);

/** Best L2 splines on meshes h0, h0/2, ... (count meshes) over [left, right]. */
WAVERATE_API waverate_status waverate_spline_study(const char* function, int order, double h0, int count,
                                                   double left, double right, int function_level,
                                                   waverate_rate* summary, waverate_string** json_out,
                                                   waverate_string** csv_out);

/** Coefficients of one best L2 spline as CSV (index, knot, coefficient). */
WAVERATE_API waverate_status waverate_spline_coefficients(const char* function, int order, double h, double left,
                                                          double right, int function_level,
                                                          waverate_string** csv_out);

typedef struct waverate_suite_options {
  /** Comma-separated tags or criterion ids; NULL or "" selects everything. */
  const char* only;
  int jobs;
  uint64_t seed;
  /** 0 selects the default level. */
  int level;
} waverate_suite_options;

WAVERATE_API void waverate_suite_options_init(waverate_suite_options* opts);
WAVERATE_API waverate_status waverate_suite_run(const waverate_suite_options* opts, waverate_suite** out);
WAVERATE_API void waverate_suite_destroy(waverate_suite* suite);
/** 1 when no blocking criterion failed. */
WAVERATE_API int waverate_suite_passed(const waverate_suite* suite);
WAVERATE_API size_t waverate_suite_count(const waverate_suite* suite);

typedef struct waverate_criterion_view {
  const char* id;
  const char* tag;
  const char* title;
  const char* expected;
  const char* observed;
  /** "PASS", "FAIL", "XFAIL" or "XPASS". */
  const char* status;
  int blocking_failure;
} waverate_criterion_view;

/** Views stay valid until the suite is destroyed. */
WAVERATE_API waverate_status waverate_suite_criterion(const waverate_suite* suite, size_t index,
                                                      waverate_criterion_view* out);
WAVERATE_API waverate_status waverate_suite_write(const waverate_suite* suite, const char* directory);
WAVERATE_API waverate_status waverate_suite_summary_csv(const waverate_suite* suite, waverate_string** out);

/** Writes text to path through a temporary file and rename. */
WAVERATE_API waverate_status waverate_write_file(const char* path, const char* data, size_t size);

#ifdef __cplusplus
}
#endif

#endif /* WAVERATE_WAVERATE_H */
