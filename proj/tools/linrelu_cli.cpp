// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linrelu/linrelu.h"

namespace {

struct CliError {
  lr_status status;
};

void check(lr_status s) {
  if (s != LR_OK) throw CliError{s};
}

int exit_code(lr_status s) {
  switch (s) {
    case LR_OK: return 0;
    case LR_ERR_NUMERICAL:
    case LR_ERR_PRECISION:
    case LR_ERR_INFEASIBLE:
    case LR_ERR_RANGE:
    case LR_ERR_INTERNAL: return 3;
    default: return 2;
  }
}

class Handle {
 public:
  explicit Handle(lr_config* c) : cfg_(c) {}
  ~Handle() { lr_config_destroy(cfg_); }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;

  lr_config* get() const { return cfg_; }

  std::optional<std::string> str(const char* key) const {
    std::size_t needed = 0;
    if (lr_config_get(cfg_, key, nullptr, 0, &needed) != LR_OK) return std::nullopt;
    std::string v(needed, '\0');
    check(lr_config_get(cfg_, key, v.data(), v.size(), nullptr));
    v.resize(needed - 1);
    return v;
  }
  std::string str(const char* key, const std::string& fallback) const { return str(key).value_or(fallback); }
  long long integer(const char* key, long long fallback) const {
    const auto v = str(key);
    if (!v) return fallback;
    return parse_number<long long>(key, *v);
  }
  double real(const char* key, double fallback) const {
    const auto v = str(key);
    if (!v) return fallback;
    return parse_number<double>(key, *v);
  }
  std::vector<double> reals(const char* key) const {
    const auto v = str(key);
    if (!v) fail_config(std::string("missing key '") + key + "'");
    std::vector<double> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number<double>(key, item));
    return out;
  }

  [[noreturn]] static void fail_config(const std::string& msg) {
    std::fprintf(stderr, "config error: %s\n", msg.c_str());
    throw CliError{LR_ERR_CONFIG};
  }

 private:
  template <class T>
  static T parse_number(const char* key, const std::string& text) {
    T v{};
    std::istringstream is(text);
    is >> v;
    if (!is || !(is >> std::ws).eof()) fail_config(std::string("bad value for '") + key + "': " + text);
    return v;
  }

  lr_config* cfg_;
};

std::string join(const std::string& dir, const char* name) { return (std::filesystem::path(dir) / name).string(); }

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "io error: cannot create '%s'\n", dir.c_str());
    throw CliError{LR_ERR_IO};
  }
}

lr_pointset* make_points(const Handle& cfg) {
  lr_point_params p = lr_point_params_default();
  const int d = static_cast<int>(cfg.integer("d", 2));
  p.k = static_cast<int>(cfg.integer("k", 1));
  p.lambda = cfg.real("lambda", 1.0);
  p.n1 = static_cast<int>(cfg.integer("n1", 0));
  p.n2 = static_cast<int>(cfg.integer("n2", 0));
  p.resolution = cfg.real("mesh_resolution", 0.01);
  const std::string strategy = cfg.str("strategy", d == 1 ? "equispaced_circle" : "fibonacci_s2");
  lr_pointset* ps = nullptr;
  check(lr_points_generate(d, cfg.integer("n", 128), strategy.c_str(),
                           static_cast<uint64_t>(cfg.integer("seed", 0)), &p, &ps));
  return ps;
}

void print_points(const lr_pointset* ps) {
  lr_points_info info{};
  check(lr_points_info_get(ps, &info));
  std::printf("d=%d n=%lld h=%.17g h_sep=%.17g resolution=%.17g\n", info.d, static_cast<long long>(info.n), info.h,
              info.h_sep, info.resolution);
}

void cmd_points(const Handle& cfg, const std::string& out) {
  lr_pointset* ps = make_points(cfg);
  print_points(ps);
  const lr_status s = lr_points_save(ps, join(out, "points.json").c_str());
  lr_points_destroy(ps);
  check(s);
}

void cmd_quad(const Handle& cfg, const std::string& out) {
  lr_pointset* ps = make_points(cfg);
  lr_quadrule* rule = nullptr;
  lr_status s = lr_quad_build(ps, static_cast<int>(cfg.integer("quad_degree", -1)), cfg.real("quad_tol", 1e-8), &rule);
  if (s == LR_OK) {
    lr_quad_info info{};
    lr_quad_info_get(rule, &info);
    std::printf("D=%d J=%d n=%lld residual=%.3e weight_constant=%.6g\n", info.exact_degree, info.projection_degree,
                static_cast<long long>(info.n), info.residual, info.weight_constant);
    s = lr_points_save(ps, join(out, "points.json").c_str());
    if (s == LR_OK) s = lr_quad_save(rule, join(out, "rule.json").c_str());
  }
  lr_quad_destroy(rule);
  lr_points_destroy(ps);
  check(s);
}

void cmd_spectrum(const Handle& cfg, const std::string& out) {
  lr_spectrum* spec = nullptr;
  check(lr_spectrum_create(static_cast<int>(cfg.integer("d", 2)), static_cast<int>(cfg.integer("k", 1)),
                           static_cast<int>(cfg.integer("m_max", 64)), &spec));
  double tail = 0.0;
  lr_status s = lr_spectrum_tail(spec, &tail);
  if (s == LR_OK) {
    std::printf("tail_estimate=%.6e\n", tail);
    s = lr_spectrum_save_csv(spec, join(out, "spectrum.csv").c_str());
  }
  lr_spectrum_destroy(spec);
  check(s);
}

void cmd_kernel(const Handle& cfg) {
  const auto x = cfg.reals("x");
  const auto y = cfg.reals("y");
  if (x.size() != y.size() || x.empty()) Handle::fail_config("x and y need the same nonzero length");
  lr_spectrum* spec = nullptr;
  check(lr_spectrum_create(static_cast<int>(x.size()), static_cast<int>(cfg.integer("k", 1)),
                           static_cast<int>(cfg.integer("m_max", 4096)), &spec));
  double value = 0.0;
  const lr_status s = lr_kernel(spec, x.data(), y.data(), x.size(), cfg.real("kernel_tol", 1e-6), &value);
  lr_spectrum_destroy(spec);
  check(s);
  std::printf("%.17g\n", value);
}

void cmd_approx(const Handle& cfg, const std::string& out) {
  const std::string path = cfg.str("path", "ls");
  const int k = static_cast<int>(cfg.integer("k", 1));
  const int d = static_cast<int>(cfg.integer("d", 2));
  lr_pointset* ps = make_points(cfg);
  lr_model* model = nullptr;
  lr_status s = LR_OK;
  std::string target;
  if (path == "ls") {
    target = cfg.str("target", "gaussian_bump");
    const long long fit_points = cfg.integer("fit_points", d == 1 ? 4096 : 64 * cfg.integer("n", 128));
    s = lr_model_fit_ls(ps, k, target.c_str(), cfg.real("lambda", 1.0), fit_points, cfg.real("ridge", 0.0),
                        cfg.real("norm_cap", 0.0), &model);
  } else if (path == "constructive") {
    target = cfg.str("target", k % 2 == 1 ? "smooth_even" : "smooth_odd");
    lr_quadrule* rule = nullptr;
    s = lr_quad_build(ps, static_cast<int>(cfg.integer("quad_degree", -1)), cfg.real("quad_tol", 1e-8), &rule);
    if (s == LR_OK) s = lr_model_fit_constructive(rule, k, target.c_str(), &model);
    lr_quad_destroy(rule);
  } else {
    lr_points_destroy(ps);
    Handle::fail_config("path must be 'ls' or 'constructive'");
  }
  lr_points_destroy(ps);
  if (s == LR_OK) {
    lr_error_norms e{};
    lr_coef_stat c{};
    const int sob = path == "ls" && k >= 1 ? static_cast<int>(cfg.integer("s", 1)) : 0;
    s = lr_model_errors(model, target.c_str(), sob, cfg.real("lambda", 1.0), cfg.integer("eval_points", 0), &e);
    if (s == LR_OK) {
      lr_model_coef_stat(model, &c);
      std::printf("error_l2=%.6e", e.l2);
      if (e.h1 >= 0) std::printf(" error_h1=%.6e", e.h1);
      std::printf(" sqrtn_a_norm=%.6g a_l1=%.6g\n", c.sqrtn_l2, c.l1);
      s = lr_model_save(model, join(out, "model.json").c_str());
    }
  }
  lr_model_destroy(model);
  check(s);
}

void print_slope(const char* label, const lr_slope& f, double theory) {
  if (f.sufficient) {
    std::printf("%s slope=%.4f stderr=%.4f theory=%.4f\n", label, f.slope, f.stderr_slope, theory);
  } else {
    std::printf("%s slope=insufficient data theory=%.4f\n", label, theory);
  }
}

void cmd_rates(const Handle& cfg, const std::string& out) {
  lr_rates_summary s{};
  check(lr_run_rates(cfg.get(), out.c_str(), &s));
  std::printf("rows=%d failed=%d\n", s.rows, s.failed_rows);
  print_slope("l2", s.l2, s.theoretical_l2);
  if (s.h1.sufficient) print_slope("h1", s.h1, s.theoretical_h1);
  if (s.coef.sufficient) std::printf("sqrtn_a_norm slope=%.4f\n", s.coef.slope);
}

void cmd_randcmp(const Handle& cfg, const std::string& out) {
  lr_randcmp_summary s{};
  check(lr_run_randcmp(cfg.get(), out.c_str(), &s));
  std::printf("rows=%d failed_draws=%d\n", s.rows, s.failed_draws);
  print_slope("deterministic", s.det, s.theoretical);
  print_slope("random_median", s.random_median, s.theoretical);
}

void cmd_pde(const Handle& cfg, const std::string& out) {
  lr_pde_summary s{};
  check(lr_run_pde(cfg.get(), out.c_str(), &s));
  std::printf("rows=%d failed=%d exact_energy=%.17g\n", s.rows, s.failed_rows, s.exact_energy);
  print_slope("excess", s.excess, s.theoretical);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linrelu: linearized ReLU^k approximation experiments"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = "out";
  std::optional<long long> seed;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "overrides the seed key");
  app.add_option("--set", overrides, "key=value override (repeatable)");

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"points", "generate a direction set and report its mesh norm"},
      {"quad", "build a positive quadrature rule on a direction set"},
      {"spectrum", "write activation harmonic coefficients"},
      {"approx", "fit one model and report its errors"},
      {"rates", "error-vs-n study with slope fits"},
      {"randcmp", "deterministic vs random direction comparison"},
      {"pde", "energy ERM study for the elliptic model problem"},
      {"kernel", "evaluate the activation kernel at x, y"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    lr_config* raw = nullptr;
    if (config_path.empty()) {
      check(lr_config_create(&raw));
    } else {
      check(lr_config_load(config_path.c_str(), &raw));
    }
    Handle cfg(raw);
    for (const auto& kv : overrides) check(lr_config_set_assignment(cfg.get(), kv.c_str()));
    if (seed) check(lr_config_set(cfg.get(), "seed", std::to_string(*seed).c_str()));

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd != "kernel") ensure_dir(out_dir);
    if (cmd == "points") cmd_points(cfg, out_dir);
    else if (cmd == "quad") cmd_quad(cfg, out_dir);
    else if (cmd == "spectrum") cmd_spectrum(cfg, out_dir);
    else if (cmd == "approx") cmd_approx(cfg, out_dir);
    else if (cmd == "rates") cmd_rates(cfg, out_dir);
    else if (cmd == "randcmp") cmd_randcmp(cfg, out_dir);
    else if (cmd == "pde") cmd_pde(cfg, out_dir);
    else if (cmd == "kernel") cmd_kernel(cfg);
  } catch (const CliError& e) {
    const char* msg = lr_last_error_message();
    if (msg && *msg) std::fprintf(stderr, "%s error: %s\n", lr_status_name(e.status), msg);
    return exit_code(e.status);
  }
  return 0;
}
