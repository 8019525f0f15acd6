// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "linrelu/linrelu.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <optional>
#include <string>

#include "core/activation.hpp"
#include "core/config.hpp"
#include "core/error.hpp"
#include "core/fns.hpp"
#include "core/harness.hpp"
#include "core/quadrature.hpp"
#include "core/serialize.hpp"
#include "core/sphere.hpp"
#include "core/targets.hpp"

struct lr_config {
  linrelu::Config cfg;
};
struct lr_pointset {
  linrelu::PointSet ps;
};
struct lr_quadrule {
  linrelu::QuadratureRule rule;
};
struct lr_spectrum {
  linrelu::ActivationSpectrum spec;
};
struct lr_model {
  linrelu::FiniteNeuronModel model;
};

namespace {

using linrelu::ErrorKind;

thread_local std::string g_last_error;

lr_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return LR_ERR_CONFIG;
    case ErrorKind::Contract: return LR_ERR_CONTRACT;
    case ErrorKind::Domain: return LR_ERR_DOMAIN;
    case ErrorKind::Range: return LR_ERR_RANGE;
    case ErrorKind::Precision: return LR_ERR_PRECISION;
    case ErrorKind::Numerical: return LR_ERR_NUMERICAL;
    case ErrorKind::Infeasible: return LR_ERR_INFEASIBLE;
    case ErrorKind::Unsupported: return LR_ERR_UNSUPPORTED;
    case ErrorKind::Io: return LR_ERR_IO;
  }
  return LR_ERR_INTERNAL;
}

lr_status set_error(lr_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
lr_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return LR_OK;
  } catch (const linrelu::Error& e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(LR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(LR_ERR_INTERNAL, e.what());
  }
}

#define LR_CHECK_HANDLE(h)                                                  \
  do {                                                                      \
    if ((h) == nullptr) return set_error(LR_ERR_INVALID_HANDLE, #h " is NULL"); \
  } while (0)

#define LR_CHECK_ARG(cond, msg)                                \
  do {                                                         \
    if (!(cond)) return set_error(LR_ERR_INVALID_ARGUMENT, msg); \
  } while (0)

lr_slope to_c(const linrelu::SlopeFit& f) { return {f.slope, f.stderr_slope, f.sufficient ? 1 : 0}; }

std::size_t coords_len(const linrelu::PointSet& ps) {
  return static_cast<std::size_t>(ps.size()) * static_cast<std::size_t>(ps.dim() + 1);
}

}  // namespace

extern "C" {

const char* lr_version(void) { return "0.1.0"; }

const char* lr_status_name(lr_status status) {
  switch (status) {
    case LR_OK: return "ok";
    case LR_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case LR_ERR_CONFIG: return "config";
    case LR_ERR_NUMERICAL: return "numerical";
    case LR_ERR_CONTRACT: return "contract";
    case LR_ERR_DOMAIN: return "domain";
    case LR_ERR_RANGE: return "range";
    case LR_ERR_PRECISION: return "precision";
    case LR_ERR_INFEASIBLE: return "infeasible";
    case LR_ERR_UNSUPPORTED: return "unsupported";
    case LR_ERR_IO: return "io";
    case LR_ERR_INVALID_HANDLE: return "invalid_handle";
    case LR_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* lr_last_error_message(void) { return g_last_error.c_str(); }

lr_status lr_config_create(lr_config** out) {
  LR_CHECK_ARG(out, "out is NULL");
  return guarded([&] { *out = new lr_config{}; });
}

lr_status lr_config_load(const char* path, lr_config** out) {
  LR_CHECK_ARG(path && out, "path or out is NULL");
  return guarded([&] { *out = new lr_config{linrelu::Config::load(path)}; });
}

lr_status lr_config_set(lr_config* cfg, const char* key, const char* value) {
  LR_CHECK_HANDLE(cfg);
  LR_CHECK_ARG(key && value, "key or value is NULL");
  return guarded([&] { cfg->cfg.set(key, value); });
}

lr_status lr_config_set_assignment(lr_config* cfg, const char* assignment) {
  LR_CHECK_HANDLE(cfg);
  LR_CHECK_ARG(assignment, "assignment is NULL");
  return guarded([&] { cfg->cfg.set_assignment(assignment); });
}

lr_status lr_config_get(const lr_config* cfg, const char* key, char* buf, size_t cap, size_t* needed) {
  LR_CHECK_HANDLE(cfg);
  LR_CHECK_ARG(key, "key is NULL");
  if (!cfg->cfg.has(key)) return set_error(LR_ERR_CONFIG, std::string("missing key '") + key + "'");
  const std::string v = cfg->cfg.get(key, "");
  if (needed) *needed = v.size() + 1;
  if (buf && cap > 0) {
    const std::size_t n = std::min(cap - 1, v.size());
    std::memcpy(buf, v.data(), n);
    buf[n] = '\0';
  }
  g_last_error.clear();
  return LR_OK;
}

lr_status lr_config_hash(const lr_config* cfg, char* buf, size_t cap) {
  LR_CHECK_HANDLE(cfg);
  LR_CHECK_ARG(buf && cap >= 17, "hash buffer needs 17 bytes");
  const std::string h = linrelu::hex64(cfg->cfg.hash());
  std::memcpy(buf, h.c_str(), h.size() + 1);
  g_last_error.clear();
  return LR_OK;
}

void lr_config_destroy(lr_config* cfg) { delete cfg; }

lr_point_params lr_point_params_default(void) {
  const linrelu::PointParams p;
  return {p.k, p.lambda, p.n1, p.n2, p.resolution};
}

lr_status lr_points_generate(int d, int64_t n, const char* strategy, uint64_t seed, const lr_point_params* params,
                             lr_pointset** out) {
  LR_CHECK_ARG(strategy && out, "strategy or out is NULL");
  return guarded([&] {
    linrelu::PointParams p;
    if (params) p = {params->k, params->lambda, params->n1, params->n2, params->resolution};
    *out = new lr_pointset{
        linrelu::generate_points(d, n, linrelu::parse_point_strategy(strategy), seed, p)};
  });
}

lr_status lr_points_create(int d, int64_t n, const double* coords, double resolution, lr_pointset** out) {
  LR_CHECK_ARG(coords && out, "coords or out is NULL");
  LR_CHECK_ARG(d >= 1 && n >= 1, "need d >= 1 and n >= 1");
  return guarded([&] {
    linrelu::PointMatrix m = Eigen::Map<const linrelu::PointMatrix>(coords, n, d + 1);
    *out = new lr_pointset{linrelu::PointSet(d, std::move(m), resolution)};
  });
}

lr_status lr_points_thin(const lr_pointset* ps, double target_ratio, lr_pointset** out) {
  LR_CHECK_HANDLE(ps);
  LR_CHECK_ARG(out, "out is NULL");
  return guarded([&] { *out = new lr_pointset{linrelu::thin_to_quasi_uniform(ps->ps, target_ratio)}; });
}

lr_status lr_points_info_get(const lr_pointset* ps, lr_points_info* info) {
  LR_CHECK_HANDLE(ps);
  LR_CHECK_ARG(info, "info is NULL");
  *info = {ps->ps.dim(), ps->ps.size(), ps->ps.mesh_norm(), ps->ps.separation(), ps->ps.resolution()};
  g_last_error.clear();
  return LR_OK;
}

lr_status lr_points_coords(const lr_pointset* ps, double* out, size_t len) {
  LR_CHECK_HANDLE(ps);
  LR_CHECK_ARG(out && len >= coords_len(ps->ps), "output buffer too small");
  std::memcpy(out, ps->ps.points().data(), coords_len(ps->ps) * sizeof(double));
  g_last_error.clear();
  return LR_OK;
}

lr_status lr_points_save(const lr_pointset* ps, const char* path) {
  LR_CHECK_HANDLE(ps);
  LR_CHECK_ARG(path, "path is NULL");
  return guarded([&] { linrelu::write_text_file(path, linrelu::pointset_to_json(ps->ps)); });
}

lr_status lr_points_load(const char* path, lr_pointset** out) {
  LR_CHECK_ARG(path && out, "path or out is NULL");
  return guarded([&] { *out = new lr_pointset{linrelu::pointset_from_json(linrelu::read_text_file(path))}; });
}

void lr_points_destroy(lr_pointset* ps) { delete ps; }

lr_status lr_quad_build(const lr_pointset* ps, int degree, double tol, lr_quadrule** out) {
  LR_CHECK_HANDLE(ps);
  LR_CHECK_ARG(out, "out is NULL");
  return guarded([&] {
    const int target = degree < 0 ? linrelu::default_exact_degree(ps->ps) : degree;
    *out = new lr_quadrule{linrelu::build_rule(ps->ps, target, tol)};
  });
}

lr_status lr_quad_info_get(const lr_quadrule* rule, lr_quad_info* info) {
  LR_CHECK_HANDLE(rule);
  LR_CHECK_ARG(info, "info is NULL");
  const auto& r = rule->rule;
  *info = {r.exact_degree, r.projection_degree, r.points.size(), r.tol, r.residual, r.weight_constant};
  g_last_error.clear();
  return LR_OK;
}

lr_status lr_quad_weights(const lr_quadrule* rule, double* out, size_t len) {
  LR_CHECK_HANDLE(rule);
  const auto n = static_cast<std::size_t>(rule->rule.weights.size());
  LR_CHECK_ARG(out && len >= n, "output buffer too small");
  std::memcpy(out, rule->rule.weights.data(), n * sizeof(double));
  g_last_error.clear();
  return LR_OK;
}

lr_status lr_quad_integrate(const lr_quadrule* rule, const double* values, size_t len, double* out) {
  LR_CHECK_HANDLE(rule);
  LR_CHECK_ARG(values && out, "values or out is NULL");
  return guarded([&] { *out = linrelu::integrate(rule->rule, {values, len}); });
}

lr_status lr_quad_save(const lr_quadrule* rule, const char* path) {
  LR_CHECK_HANDLE(rule);
  LR_CHECK_ARG(path, "path is NULL");
  return guarded([&] { linrelu::write_text_file(path, linrelu::rule_to_json(rule->rule)); });
}

void lr_quad_destroy(lr_quadrule* rule) { delete rule; }

lr_status lr_spectrum_create(int d, int k, int m_max, lr_spectrum** out) {
  LR_CHECK_ARG(out, "out is NULL");
  return guarded([&] { *out = new lr_spectrum{linrelu::ActivationSpectrum(d, k, m_max)}; });
}

lr_status lr_spectrum_coefficient(const lr_spectrum* spec, int m, double* out) {
  LR_CHECK_HANDLE(spec);
  LR_CHECK_ARG(out, "out is NULL");
  return guarded([&] { *out = spec->spec.coefficient(m); });
}

lr_status lr_spectrum_tail(const lr_spectrum* spec, double* out) {
  LR_CHECK_HANDLE(spec);
  LR_CHECK_ARG(out, "out is NULL");
  return guarded([&] { *out = spec->spec.tail_estimate(); });
}

lr_status lr_spectrum_save_csv(const lr_spectrum* spec, const char* path) {
  LR_CHECK_HANDLE(spec);
  LR_CHECK_ARG(path, "path is NULL");
  return guarded([&] {
    std::ofstream os(path, std::ios::binary);
    linrelu::require(static_cast<bool>(os), ErrorKind::Io, std::string("cannot write '") + path + "'");
    spec->spec.write_csv(os);
    linrelu::require(static_cast<bool>(os), ErrorKind::Io, std::string("write failed for '") + path + "'");
  });
}

lr_status lr_kernel(const lr_spectrum* spec, const double* x, const double* y, size_t len, double tol, double* out) {
  LR_CHECK_HANDLE(spec);
  LR_CHECK_ARG(x && y && out, "x, y or out is NULL");
  return guarded([&] { *out = linrelu::relu_kernel(spec->spec, {x, len}, {y, len}, tol); });
}

void lr_spectrum_destroy(lr_spectrum* spec) { delete spec; }

lr_status lr_model_fit_ls(const lr_pointset* directions, int k, const char* target, double radius, int64_t fit_points,
                          double ridge, double norm_cap, lr_model** out) {
  LR_CHECK_HANDLE(directions);
  LR_CHECK_ARG(target && out, "target or out is NULL");
  return guarded([&] {
    const int d = directions->ps.dim();
    const auto f = linrelu::make_target(target, d, linrelu::Domain::Ball);
    const auto grid = linrelu::ball_grid(d, radius, fit_points, linrelu::GridRole::Fit);
    *out = new lr_model{linrelu::least_squares_fit(f, directions->ps, k, grid, ridge, norm_cap).model};
  });
}

lr_status lr_model_fit_constructive(const lr_quadrule* rule, int k, const char* target, lr_model** out) {
  LR_CHECK_HANDLE(rule);
  LR_CHECK_ARG(target && out, "target or out is NULL");
  return guarded([&] {
    const int d = rule->rule.points.dim();
    const int j = rule->rule.projection_degree;
    const auto g = linrelu::make_target(target, d, linrelu::Domain::Sphere);
    const linrelu::ActivationSpectrum spec(d, k, std::max(j, k + 1));
    const auto ref = linrelu::reference_grid(d, 2 * j + 64);
    *out = new lr_model{linrelu::constructive_fit(g, rule->rule, spec, ref)};
  });
}

lr_status lr_model_size(const lr_model* model, int64_t* n) {
  LR_CHECK_HANDLE(model);
  LR_CHECK_ARG(n, "n is NULL");
  *n = model->model.size();
  g_last_error.clear();
  return LR_OK;
}

lr_status lr_model_coefficients(const lr_model* model, double* out, size_t len) {
  LR_CHECK_HANDLE(model);
  const auto& a = model->model.coefficients();
  LR_CHECK_ARG(out && len >= static_cast<std::size_t>(a.size()), "output buffer too small");
  std::memcpy(out, a.data(), static_cast<std::size_t>(a.size()) * sizeof(double));
  g_last_error.clear();
  return LR_OK;
}

lr_status lr_model_eval(const lr_model* model, const double* x, size_t len, double* out) {
  LR_CHECK_HANDLE(model);
  LR_CHECK_ARG(x && out, "x or out is NULL");
  return guarded([&] { *out = model->model({x, len}); });
}

lr_status lr_model_gradient(const lr_model* model, const double* x, size_t len, double* out, size_t out_len) {
  LR_CHECK_HANDLE(model);
  LR_CHECK_ARG(x && out, "x or out is NULL");
  return guarded([&] { model->model.gradient({x, len}, {out, out_len}); });
}

lr_status lr_model_coef_stat(const lr_model* model, lr_coef_stat* out) {
  LR_CHECK_HANDLE(model);
  LR_CHECK_ARG(out, "out is NULL");
  const auto c = linrelu::coef_stat(model->model);
  *out = {c.l2, c.sqrtn_l2, c.l1};
  g_last_error.clear();
  return LR_OK;
}

lr_status lr_model_errors(const lr_model* model, const char* target, int s, double radius, int64_t eval_points,
                          lr_error_norms* out) {
  LR_CHECK_HANDLE(model);
  LR_CHECK_ARG(target && out, "target or out is NULL");
  return guarded([&] {
    const auto& m = model->model;
    const int d = m.dim();
    const auto f = linrelu::make_target(target, d, m.domain());
    linrelu::SampleGrid grid;
    if (m.domain() == linrelu::Domain::Ball) {
      const int64_t pts = eval_points > 0 ? eval_points : (d == 1 ? 4096 : 64 * m.size());
      grid = linrelu::ball_grid(d, radius, pts, linrelu::GridRole::Eval);
    } else {
      const int deg = eval_points > 0 ? static_cast<int>(eval_points) : (d == 1 ? 32767 : 200);
      grid = linrelu::sphere_grid(d, deg);
    }
    const auto e = linrelu::error_norms(m, f, grid, s);
    *out = {e.l2, e.h1, e.h1_semi};
  });
}

lr_status lr_model_save(const lr_model* model, const char* path) {
  LR_CHECK_HANDLE(model);
  LR_CHECK_ARG(path, "path is NULL");
  return guarded([&] { linrelu::write_text_file(path, linrelu::model_to_json(model->model)); });
}

lr_status lr_model_load(const char* path, lr_model** out) {
  LR_CHECK_ARG(path && out, "path or out is NULL");
  return guarded([&] { *out = new lr_model{linrelu::model_from_json(linrelu::read_text_file(path))}; });
}

void lr_model_destroy(lr_model* model) { delete model; }

lr_status lr_run_rates(const lr_config* cfg, const char* out_dir, lr_rates_summary* summary) {
  LR_CHECK_HANDLE(cfg);
  return guarded([&] {
    const auto rep = linrelu::run_rates(cfg->cfg);
    if (out_dir) linrelu::write_outputs(rep, out_dir);
    if (summary) {
      int failed = 0;
      for (const auto& r : rep.rows) failed += r.error_code.empty() ? 0 : 1;
      *summary = {static_cast<int>(rep.rows.size()), failed, to_c(rep.l2_fit), to_c(rep.h1_fit),
                  to_c(rep.coef_fit), rep.theoretical_l2, rep.theoretical_h1};
    }
  });
}

lr_status lr_run_randcmp(const lr_config* cfg, const char* out_dir, lr_randcmp_summary* summary) {
  LR_CHECK_HANDLE(cfg);
  return guarded([&] {
    const auto rep = linrelu::run_randcmp(cfg->cfg);
    if (out_dir) linrelu::write_outputs(rep, out_dir);
    if (summary) {
      int failed = 0;
      for (const auto& r : rep.draws) failed += r.error_code.empty() ? 0 : 1;
      *summary = {static_cast<int>(rep.rows.size()), failed, to_c(rep.det_fit), to_c(rep.random_fit),
                  rep.theoretical};
    }
  });
}

lr_status lr_run_pde(const lr_config* cfg, const char* out_dir, lr_pde_summary* summary) {
  LR_CHECK_HANDLE(cfg);
  return guarded([&] {
    const auto rep = linrelu::run_pde(cfg->cfg);
    if (out_dir) linrelu::write_outputs(rep, out_dir);
    if (summary) {
      int failed = 0;
      for (const auto& r : rep.rows) failed += r.error_code.empty() ? 0 : 1;
      *summary = {static_cast<int>(rep.rows.size()), failed, to_c(rep.excess_fit), rep.exact_energy,
                  rep.theoretical};
    }
  });
}

}  // extern "C"
