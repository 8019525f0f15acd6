// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LINRELU_LINRELU_H_
#define LINRELU_LINRELU_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LINRELU_BUILDING_LIBRARY)
#    define LR_API __declspec(dllexport)
#  else
#    define LR_API __declspec(dllimport)
#  endif
#else
#  define LR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lr_status {
  LR_OK = 0,
  LR_ERR_INVALID_ARGUMENT = 1,
  LR_ERR_CONFIG = 2,
  LR_ERR_NUMERICAL = 3,
  LR_ERR_CONTRACT = 4,
  LR_ERR_DOMAIN = 5,
  LR_ERR_RANGE = 6,
  LR_ERR_PRECISION = 7,
  LR_ERR_INFEASIBLE = 8,
  LR_ERR_UNSUPPORTED = 9,
  LR_ERR_IO = 10,
  LR_ERR_INVALID_HANDLE = 11,
  LR_ERR_INTERNAL = 12
} lr_status;

// Opaque handles. Each has a matching *_destroy; destroying NULL is a no-op.
typedef struct lr_config lr_config;
typedef struct lr_pointset lr_pointset;
typedef struct lr_quadrule lr_quadrule;
typedef struct lr_spectrum lr_spectrum;
typedef struct lr_model lr_model;

LR_API const char* lr_version(void);
LR_API const char* lr_status_name(lr_status status);
// Message of the last failing call on this thread; "" after a success.
LR_API const char* lr_last_error_message(void);

// Config: "key = value" lines, '#' comments.
LR_API lr_status lr_config_create(lr_config** out);
LR_API lr_status lr_config_load(const char* path, lr_config** out);
LR_API lr_status lr_config_set(lr_config* cfg, const char* key, const char* value);
// Accepts "key=value".
LR_API lr_status lr_config_set_assignment(lr_config* cfg, const char* assignment);
// Writes at most cap bytes including the terminator; *needed gets the full length.
LR_API lr_status lr_config_get(const lr_config* cfg, const char* key, char* buf, size_t cap, size_t* needed);
LR_API lr_status lr_config_hash(const lr_config* cfg, char* buf, size_t cap);
LR_API void lr_config_destroy(lr_config* cfg);

typedef struct lr_point_params {
  int k;
  double lambda;
  int n1;
  int n2;
  double resolution;
} lr_point_params;

// Defaults: k = 1, lambda = 1, n1 = n2 = 0 (derived), resolution = 0.01.
LR_API lr_point_params lr_point_params_default(void);

typedef struct lr_points_info {
  int d;
  int64_t n;
  double h;
  double h_sep;
  // Covering-grid radius of the mesh-norm estimate; negative if uncertified.
  double resolution;
} lr_points_info;

// Strategies: equispaced_circle, fibonacci_s2, uniform_random,
// petrushev_tensor, band_with_poly_completion. params may be NULL.
LR_API lr_status lr_points_generate(int d, int64_t n, const char* strategy, uint64_t seed,
                                    const lr_point_params* params, lr_pointset** out);
// coords holds n rows of d + 1 doubles.
LR_API lr_status lr_points_create(int d, int64_t n, const double* coords, double resolution,
                                  lr_pointset** out);
LR_API lr_status lr_points_thin(const lr_pointset* ps, double target_ratio, lr_pointset** out);
LR_API lr_status lr_points_info_get(const lr_pointset* ps, lr_points_info* info);
// Copies n * (d + 1) doubles.
LR_API lr_status lr_points_coords(const lr_pointset* ps, double* out, size_t len);
LR_API lr_status lr_points_save(const lr_pointset* ps, const char* path);
LR_API lr_status lr_points_load(const char* path, lr_pointset** out);
LR_API void lr_points_destroy(lr_pointset* ps);

typedef struct lr_quad_info {
  int exact_degree;
  int projection_degree;
  int64_t n;
  double tol;
  double residual;
  double weight_constant;
} lr_quad_info;

// degree < 0 picks the default degree for the point set.
LR_API lr_status lr_quad_build(const lr_pointset* ps, int degree, double tol, lr_quadrule** out);
LR_API lr_status lr_quad_info_get(const lr_quadrule* rule, lr_quad_info* info);
LR_API lr_status lr_quad_weights(const lr_quadrule* rule, double* out, size_t len);
LR_API lr_status lr_quad_integrate(const lr_quadrule* rule, const double* values, size_t len, double* out);
LR_API lr_status lr_quad_save(const lr_quadrule* rule, const char* path);
LR_API void lr_quad_destroy(lr_quadrule* rule);

LR_API lr_status lr_spectrum_create(int d, int k, int m_max, lr_spectrum** out);
LR_API lr_status lr_spectrum_coefficient(const lr_spectrum* spec, int m, double* out);
LR_API lr_status lr_spectrum_tail(const lr_spectrum* spec, double* out);
LR_API lr_status lr_spectrum_save_csv(const lr_spectrum* spec, const char* path);
// Kernel of the activation at x, y in R^d (len = d).
LR_API lr_status lr_kernel(const lr_spectrum* spec, const double* x, const double* y, size_t len, double tol,
                           double* out);
LR_API void lr_spectrum_destroy(lr_spectrum* spec);

typedef struct lr_coef_stat {
  double l2;
  double sqrtn_l2;
  double l1;
} lr_coef_stat;

typedef struct lr_error_norms {
  double l2;
  double h1;       // negative when not computed
  double h1_semi;  // negative when not computed
} lr_error_norms;

// Least squares on the ball of radius `radius` in R^d using fit_points grid
// points. norm_cap = 0 disables the cap.
LR_API lr_status lr_model_fit_ls(const lr_pointset* directions, int k, const char* target, double radius,
                                 int64_t fit_points, double ridge, double norm_cap, lr_model** out);
// Quadrature-based construction for a sphere target.
LR_API lr_status lr_model_fit_constructive(const lr_quadrule* rule, int k, const char* target, lr_model** out);
LR_API lr_status lr_model_size(const lr_model* model, int64_t* n);
LR_API lr_status lr_model_coefficients(const lr_model* model, double* out, size_t len);
// x has d entries for ball models and d + 1 for sphere models.
LR_API lr_status lr_model_eval(const lr_model* model, const double* x, size_t len, double* out);
LR_API lr_status lr_model_gradient(const lr_model* model, const double* x, size_t len, double* out, size_t out_len);
LR_API lr_status lr_model_coef_stat(const lr_model* model, lr_coef_stat* out);
// s = 0 gives L2 only, s = 1 also H1 (ball models). radius is the ball radius
// and is ignored for sphere models. eval_points = 0 picks a default.
LR_API lr_status lr_model_errors(const lr_model* model, const char* target, int s, double radius, int64_t eval_points,
                                 lr_error_norms* out);
LR_API lr_status lr_model_save(const lr_model* model, const char* path);
LR_API lr_status lr_model_load(const char* path, lr_model** out);
LR_API void lr_model_destroy(lr_model* model);

typedef struct lr_slope {
  double slope;
  double stderr_slope;
  int sufficient;  // 0 with fewer than 4 usable points
} lr_slope;

typedef struct lr_rates_summary {
  int rows;
  int failed_rows;
  lr_slope l2;
  lr_slope h1;
  lr_slope coef;
  double theoretical_l2;
  double theoretical_h1;
} lr_rates_summary;

typedef struct lr_randcmp_summary {
  int rows;
  int failed_draws;
  lr_slope det;
  lr_slope random_median;
  double theoretical;
} lr_randcmp_summary;

typedef struct lr_pde_summary {
  int rows;
  int failed_rows;
  lr_slope excess;
  double exact_energy;
  double theoretical;
} lr_pde_summary;

// Experiment drivers. out_dir may be NULL to skip writing CSV/JSON files.
// summary may be NULL.
LR_API lr_status lr_run_rates(const lr_config* cfg, const char* out_dir, lr_rates_summary* summary);
LR_API lr_status lr_run_randcmp(const lr_config* cfg, const char* out_dir, lr_randcmp_summary* summary);
LR_API lr_status lr_run_pde(const lr_config* cfg, const char* out_dir, lr_pde_summary* summary);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // LINRELU_LINRELU_H_
