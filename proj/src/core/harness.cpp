// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

#include "core/error.hpp"
#include "core/fns.hpp"
#include "core/pde_erm.hpp"
#include "core/quadrature.hpp"
#include "core/sphere.hpp"
#include "core/targets.hpp"
#include "json.hpp"

namespace linrelu {

namespace {

using Json = nlohmann::ordered_json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const double pos = q * double(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - double(lo)) * (v[hi] - v[lo]);
}

Json slope_json(const SlopeFit& f) {
  Json j;
  if (f.sufficient) {
    j["slope"] = f.slope;
    j["stderr"] = f.stderr_slope;
  } else {
    j["slope"] = "insufficient data";
    j["stderr"] = nullptr;
  }
  return j;
}

// Slope over rows where pick() returns a positive finite value.
template <class Row, class Pick, class Abscissa>
SlopeFit slope_over(const std::vector<Row>& rows, Pick pick, Abscissa x) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : rows) {
    if (!r.error_code.empty()) continue;
    const double y = pick(r);
    if (std::isfinite(y) && y > 0.0) {
      xs.push_back(x(r));
      ys.push_back(y);
    }
  }
  return fit_slope(xs, ys);
}

std::string error_code_of(const std::exception& e) {
  if (const auto* le = dynamic_cast<const Error*>(&e)) return error_kind_name(le->kind());
  return "internal";
}

int get_dim(const Config& cfg, int fallback) {
  const long long d = cfg.get_int("d", fallback);
  require(d >= 1 && d <= 16, ErrorKind::Config, "d must lie in [1, 16]");
  return static_cast<int>(d);
}

int get_power(const Config& cfg, int fallback) {
  const long long k = cfg.get_int("k", fallback);
  require(k >= 0 && k <= 16, ErrorKind::Config, "k must lie in [0, 16]");
  return static_cast<int>(k);
}

PointParams point_params(const Config& cfg, int k) {
  PointParams p;
  p.k = k;
  p.lambda = cfg.get_double("lambda", 1.0);
  p.n1 = static_cast<int>(cfg.get_int("n1", 0));
  p.n2 = static_cast<int>(cfg.get_int("n2", 0));
  p.resolution = cfg.get_double("mesh_resolution", 0.01);
  require(p.resolution > 0, ErrorKind::Config, "mesh_resolution must be positive");
  require(p.lambda > 0, ErrorKind::Config, "lambda must be positive");
  return p;
}

std::vector<long long> positive_list(const Config& cfg, const std::string& key,
                                     const std::vector<long long>& fallback) {
  auto v = cfg.get_int_list(key, fallback);
  for (auto x : v) require(x >= 1, ErrorKind::Config, key + ": entries must be >= 1");
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

int quad_degree_for(const Config& cfg, const PointSet& ps) {
  const std::string mode = cfg.get("quad_degree", "auto");
  if (mode == "auto") return default_exact_degree(ps, cfg.get_double("quad_c1", 0.5));
  if (mode == "full") {
    if (ps.dim() == 1) return static_cast<int>(ps.size()) - 1;
    int deg = 0;
    while ((deg + 2) * (deg + 2) <= ps.size()) ++deg;
    return deg;
  }
  const long long v = parse_int(mode, "quad_degree");
  require(v >= 0, ErrorKind::Config, "quad_degree must be >= 0");
  return static_cast<int>(v);
}

}  // namespace

SlopeFit fit_slope(std::span<const double> n, std::span<const double> err) {
  require(n.size() == err.size(), ErrorKind::Contract, "fit_slope: length mismatch");
  SlopeFit out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    require(n[i] > 0 && err[i] > 0, ErrorKind::Domain, "fit_slope: values must be positive");
  }
  if (n.size() < 4) {
    out.slope = kNaN;
    out.stderr_slope = kNaN;
    return out;
  }
  const double count = double(n.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    mx += std::log(n[i]);
    my += std::log(err[i]);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double dx = std::log(n[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(err[i]) - my);
  }
  require(sxx > 0, ErrorKind::Domain, "fit_slope: abscissae are all equal");
  out.slope = sxy / sxx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double r = std::log(err[i]) - my - out.slope * (std::log(n[i]) - mx);
    sse += r * r;
  }
  out.stderr_slope = std::sqrt(sse / (count - 2.0) / sxx);
  out.sufficient = true;
  return out;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

RateReport run_rates(const Config& cfg) {
  RateReport rep;
  rep.config_hash = hex64(cfg.hash());
  rep.d = get_dim(cfg, 2);
  rep.k = get_power(cfg, 1);
  rep.path = cfg.get("path", "ls");
  require(rep.path == "ls" || rep.path == "constructive", ErrorKind::Config,
          "path must be 'ls' or 'constructive'");
  const bool constructive = rep.path == "constructive";
  const Domain domain = constructive ? Domain::Sphere : Domain::Ball;
  const int d = rep.d;
  const int k = rep.k;
  rep.target = cfg.get("target", constructive ? (k % 2 == 1 ? "smooth_even" : "smooth_odd") : "gaussian_bump");
  const TargetFunction target = make_target(rep.target, d, domain);
  rep.strategy = cfg.get("strategy", constructive ? (d == 1 ? "equispaced_circle" : "fibonacci_s2")
                                                  : "band_with_poly_completion");
  const PointStrategy strategy = parse_point_strategy(rep.strategy);
  const PointParams params = point_params(cfg, k);
  const auto n_grid = positive_list(cfg, "n_grid", {32, 64, 128, 256, 512});
  const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed", 0));
  const double cap = cfg.get_double("norm_cap", 0.0);
  const double ridge = cfg.get_double("ridge", 0.0);
  require(cap >= 0 && ridge >= 0, ErrorKind::Config, "norm_cap and ridge must be >= 0");
  const int s = static_cast<int>(cfg.get_int("s", !constructive && k >= 1 ? 1 : 0));
  require(s == 0 || s == 1, ErrorKind::Config, "s must be 0 or 1");
  require(!(s == 1 && constructive), ErrorKind::Config, "s = 1 is available on the ls path only");
  const double natural = 0.5 * (d + 2 * k + 1);
  const double r = std::min(cfg.get_double("regularity", target.regularity), natural);
  rep.theoretical_l2 = -r / d;
  rep.theoretical_h1 = -(r - 1.0) / d;
  const int threads = static_cast<int>(cfg.get_int("threads", 0));

  SampleGrid fit_grid;
  SampleGrid eval_grid;
  if (constructive) {
    require(d == 1 || d == 2, ErrorKind::Config, "constructive path requires d in {1, 2}");
    eval_grid = sphere_grid(d, static_cast<int>(cfg.get_int("eval_degree", d == 1 ? 32767 : 200)));
  } else {
    const double lambda = params.lambda;
    const long long fit_points = cfg.get_int("fit_points", d == 1 ? 4096 : 64 * n_grid.back());
    const long long eval_points = cfg.get_int("eval_points", fit_points);
    require(fit_points >= n_grid.back(), ErrorKind::Config, "fit_points must be >= the largest n");
    fit_grid = ball_grid(d, lambda, fit_points, GridRole::Fit);
    eval_grid = ball_grid(d, lambda, eval_points, GridRole::Eval);
  }

  rep.rows.resize(n_grid.size());
  parallel_for(n_grid.size(), threads, [&](std::size_t i) {
    RateRow& row = rep.rows[i];
    row.n_requested = n_grid[i];
    try {
      const PointSet ps = generate_points(d, n_grid[i], strategy, seed, params);
      row.n = ps.size();
      row.h = ps.mesh_norm();
      if (constructive) {
        const QuadratureRule rule = build_rule(ps, quad_degree_for(cfg, ps), cfg.get_double("quad_tol", 1e-8));
        row.exact_degree = rule.exact_degree;
        const int j_max = rule.projection_degree;
        const ActivationSpectrum spectrum(d, k, std::max(j_max, k + 1));
        const ReferenceGrid ref = reference_grid(d, 2 * j_max + static_cast<int>(cfg.get_int("ref_margin", 64)));
        const FiniteNeuronModel model = constructive_fit(target, rule, spectrum, ref);
        std::vector<double> samples(static_cast<std::size_t>(ref.nodes.rows()));
        const auto dim = static_cast<std::size_t>(d + 1);
        for (std::size_t q = 0; q < samples.size(); ++q) samples[q] = target({ref.nodes.data() + q * dim, dim});
        row.mismatch = truncation_mismatch(model, spectrum, project_all(ref, samples, j_max), j_max);
        row.l2 = error_norms(model, target, eval_grid, 0).l2;
        const CoefStat cs = coef_stat(model);
        row.sqrtn_a = cs.sqrtn_l2;
        row.a_l1 = cs.l1;
      } else {
        const LsFit fit = least_squares_fit(target, ps, k, fit_grid, ridge, cap);
        const ErrorNorms e = error_norms(fit.model, target, eval_grid, s);
        row.l2 = e.l2;
        row.h1 = e.h1;
        row.cap_active = fit.cap_active;
        const CoefStat cs = coef_stat(fit.model);
        row.sqrtn_a = cs.sqrtn_l2;
        row.a_l1 = cs.l1;
      }
    } catch (const std::exception& e) {
      row.error_code = error_code_of(e);
      row.error_message = e.what();
    }
  });

  auto by_n = [](const RateRow& row) { return double(row.n); };
  rep.l2_fit = slope_over(rep.rows, [](const RateRow& row) { return row.l2; }, by_n);
  rep.h1_fit = slope_over(rep.rows, [](const RateRow& row) { return row.h1; }, by_n);
  rep.coef_fit = slope_over(rep.rows, [](const RateRow& row) { return row.sqrtn_a; }, by_n);
  return rep;
}

RandCmpReport run_randcmp(const Config& cfg) {
  RandCmpReport rep;
  rep.config_hash = hex64(cfg.hash());
  rep.d = get_dim(cfg, 2);
  rep.k = get_power(cfg, 1);
  const int d = rep.d;
  const int k = rep.k;
  require(cfg.has("seeds"), ErrorKind::Config, "randcmp needs a seeds list");
  const auto seeds = cfg.get_int_list("seeds", {});
  require(seeds.size() >= 10, ErrorKind::Config, "randcmp needs at least 10 seeds");
  const TargetFunction target = make_target(cfg.get("target", "gaussian_bump"), d, Domain::Ball);
  const PointStrategy det = parse_point_strategy(
      cfg.get("det_strategy", d == 1 ? "equispaced_circle" : d == 2 ? "fibonacci_s2" : "uniform_random"));
  const PointStrategy random = parse_point_strategy(cfg.get("random_strategy", "uniform_random"));
  const PointParams params = point_params(cfg, k);
  const auto n_grid = positive_list(cfg, "n_grid", {64, 128, 256, 512});
  const double natural = 0.5 * (d + 2 * k + 1);
  rep.theoretical = -std::min(cfg.get_double("regularity", target.regularity), natural) / d;
  const long long fit_points = cfg.get_int("fit_points", d == 1 ? 4096 : 64 * n_grid.back());
  const SampleGrid fit_grid = ball_grid(d, params.lambda, fit_points, GridRole::Fit);
  const SampleGrid eval_grid = ball_grid(d, params.lambda, cfg.get_int("eval_points", fit_points), GridRole::Eval);
  const double cap = cfg.get_double("norm_cap", 0.0);
  const double ridge = cfg.get_double("ridge", 0.0);
  const std::uint64_t det_seed = static_cast<std::uint64_t>(cfg.get_int("seed", 0));

  const std::size_t per_n = seeds.size() + 1;
  std::vector<RandDraw> cells(n_grid.size() * per_n);
  parallel_for(cells.size(), static_cast<int>(cfg.get_int("threads", 0)), [&](std::size_t c) {
    const std::size_t i = c / per_n;
    const std::size_t j = c % per_n;
    RandDraw& out = cells[c];
    out.n = n_grid[i];
    out.seed = j == 0 ? static_cast<long long>(det_seed) : seeds[j - 1];
    try {
      const PointSet ps = j == 0 ? generate_points(d, out.n, det, det_seed, params)
                                 : generate_points(d, out.n, random, static_cast<std::uint64_t>(out.seed), params);
      out.h = ps.mesh_norm();
      const LsFit fit = least_squares_fit(target, ps, k, fit_grid, ridge, cap);
      out.l2 = error_norms(fit.model, target, eval_grid, 0).l2;
    } catch (const std::exception& e) {
      out.error_code = error_code_of(e);
      out.l2 = kNaN;
    }
  });

  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    RandCmpRow row;
    row.n = n_grid[i];
    const RandDraw& det_cell = cells[i * per_n];
    row.det_l2 = det_cell.l2;
    row.det_h = det_cell.h;
    row.error_code = det_cell.error_code;
    std::vector<double> errs;
    std::vector<double> hs;
    for (std::size_t j = 1; j < per_n; ++j) {
      const RandDraw& cell = cells[i * per_n + j];
      rep.draws.push_back(cell);
      if (!cell.error_code.empty()) continue;
      errs.push_back(cell.l2);
      hs.push_back(cell.h);
    }
    row.random_ok = static_cast<int>(errs.size());
    row.random_median = quantile(errs, 0.5);
    row.random_q1 = quantile(errs, 0.25);
    row.random_q3 = quantile(errs, 0.75);
    row.random_h_median = quantile(hs, 0.5);
    if (row.error_code.empty() && errs.empty()) row.error_code = "numerical";
    rep.rows.push_back(row);
  }
  auto by_n = [](const RandCmpRow& row) { return double(row.n); };
  rep.det_fit = slope_over(rep.rows, [](const RandCmpRow& row) { return row.det_l2; }, by_n);
  rep.random_fit = slope_over(rep.rows, [](const RandCmpRow& row) { return row.random_median; }, by_n);
  return rep;
}

PdeReport run_pde(const Config& cfg) {
  PdeReport rep;
  rep.config_hash = hex64(cfg.hash());
  rep.d = get_dim(cfg, 1);
  rep.k = get_power(cfg, 2);
  const int d = rep.d;
  const int k = rep.k;
  require(k >= 1, ErrorKind::Config, "pde needs k >= 1");
  const EllipticProblem problem = make_problem(cfg.get("problem", "cos_pi"), d);
  const PointStrategy strategy =
      parse_point_strategy(cfg.get("strategy", d == 1 ? "equispaced_circle" : "fibonacci_s2"));
  const PointParams params = point_params(cfg, k);
  const auto m_grid = positive_list(cfg, "m_grid", {256, 512, 1024, 2048, 4096, 8192, 16384});
  const auto seeds = cfg.get_int_list("seeds", {0, 1, 2, 3, 4, 5, 6, 7});
  const long long fixed_n = cfg.get_int("n", 0);
  require(fixed_n >= 0, ErrorKind::Config, "n must be >= 0");
  rep.norm_cap = cfg.get_double("norm_cap", 0.0);
  require(rep.norm_cap >= 0, ErrorKind::Config, "norm_cap must be >= 0");
  const SampleGrid grid = domain_grid(problem, cfg.get_int("energy_points", 16384));
  rep.exact_energy = energy(problem.solution, problem, grid);

  rep.rows.resize(m_grid.size() * seeds.size());
  parallel_for(rep.rows.size(), static_cast<int>(cfg.get_int("threads", 0)), [&](std::size_t c) {
    PdeRow& row = rep.rows[c];
    row.m = m_grid[c / seeds.size()];
    row.seed = seeds[c % seeds.size()];
    row.n = fixed_n > 0 ? fixed_n : erm_width(row.m, d, k);
    try {
      const auto seed = static_cast<std::uint64_t>(row.seed);
      const PointSet ps = generate_points(d, row.n, strategy, seed, params);
      const PointMatrix x = sample_domain(problem, row.m, seed);
      const ErmResult r = erm_fit(problem, ps, k, x, rep.norm_cap, grid, seed);
      row.n = ps.size();
      row.emp_risk = r.empirical_risk;
      row.energy = r.population_energy;
      row.excess = r.excess_risk;
      row.h1 = r.h1_error;
      row.sqrtn_a = coef_stat(r.model).sqrtn_l2;
      row.certificate = r.certificate;
      row.cap_active = r.cap_active;
    } catch (const std::exception& e) {
      row.error_code = error_code_of(e);
    }
  });

  for (long long m : m_grid) {
    PdeSummaryRow s;
    s.m = m;
    for (const auto& row : rep.rows) {
      if (row.m != m || !row.error_code.empty()) continue;
      s.n = row.n;
      s.mean_excess += row.excess;
      s.mean_h1_sq += row.h1 * row.h1;
      ++s.runs;
    }
    if (s.runs > 0) {
      s.mean_excess /= s.runs;
      s.mean_h1_sq /= s.runs;
    } else {
      s.mean_excess = s.mean_h1_sq = kNaN;
    }
    rep.summary.push_back(s);
  }
  std::vector<double> ms;
  std::vector<double> ex;
  for (const auto& s : rep.summary) {
    if (s.runs > 0 && s.mean_excess > 0) {
      ms.push_back(double(s.m));
      ex.push_back(s.mean_excess);
    }
  }
  rep.excess_fit = fit_slope(ms, ex);
  return rep;
}

void write_rates_csv(const RateReport& rep, std::ostream& os) {
  os << "config_hash,n_requested,n,h,error_l2,error_h1,sqrtn_a_norm,a_l1,exact_degree,"
        "truncation_mismatch,cap_active,error_code\n";
  for (const auto& r : rep.rows) {
    const bool ok = r.error_code.empty();
    os << rep.config_hash << ',' << r.n_requested << ',' << r.n << ',' << num(ok ? r.h : kNaN) << ','
       << num(ok ? r.l2 : kNaN) << ',' << num(ok && r.h1 >= 0 ? r.h1 : kNaN) << ','
       << num(ok ? r.sqrtn_a : kNaN) << ',' << num(ok ? r.a_l1 : kNaN) << ',' << r.exact_degree << ','
       << num(ok && r.mismatch >= 0 ? r.mismatch : kNaN) << ',' << (r.cap_active ? 1 : 0) << ','
       << (ok ? "ok" : r.error_code) << '\n';
  }
}

void write_randcmp_csv(const RandCmpReport& rep, std::ostream& os) {
  os << "config_hash,n,det_l2,det_h,random_median_l2,random_q1_l2,random_q3_l2,random_median_h,"
        "h_ratio,random_ok,error_code\n";
  for (const auto& r : rep.rows) {
    os << rep.config_hash << ',' << r.n << ',' << num(r.det_l2) << ',' << num(r.det_h) << ','
       << num(r.random_median) << ',' << num(r.random_q1) << ',' << num(r.random_q3) << ','
       << num(r.random_h_median) << ',' << num(r.random_h_median / r.det_h) << ',' << r.random_ok << ','
       << (r.error_code.empty() ? "ok" : r.error_code) << '\n';
  }
}

void write_randcmp_draws_csv(const RandCmpReport& rep, std::ostream& os) {
  os << "config_hash,n,seed,h,l2,error_code\n";
  for (const auto& r : rep.draws) {
    os << rep.config_hash << ',' << r.n << ',' << r.seed << ',' << num(r.h) << ',' << num(r.l2) << ','
       << (r.error_code.empty() ? "ok" : r.error_code) << '\n';
  }
}

void write_pde_csv(const PdeReport& rep, std::ostream& os) {
  os << "config_hash,d,k,n,m,M,seed,emp_risk,energy,excess,h1,coef_stat,certificate,cap_active,error_code\n";
  for (const auto& r : rep.rows) {
    const bool ok = r.error_code.empty();
    os << rep.config_hash << ',' << rep.d << ',' << rep.k << ',' << r.n << ',' << r.m << ','
       << num(rep.norm_cap) << ',' << r.seed << ',' << num(ok ? r.emp_risk : kNaN) << ','
       << num(ok ? r.energy : kNaN) << ',' << num(ok ? r.excess : kNaN) << ',' << num(ok ? r.h1 : kNaN)
       << ',' << num(ok ? r.sqrtn_a : kNaN) << ',' << num(ok ? r.certificate : kNaN) << ','
       << (r.cap_active ? 1 : 0) << ',' << (ok ? "ok" : r.error_code) << '\n';
  }
}

std::string report_json(const RateReport& rep) {
  Json j;
  j["config_hash"] = rep.config_hash;
  j["path"] = rep.path;
  j["d"] = rep.d;
  j["k"] = rep.k;
  j["target"] = rep.target;
  j["strategy"] = rep.strategy;
  j["theoretical_slope_l2"] = rep.theoretical_l2;
  j["fitted_slope_l2"] = slope_json(rep.l2_fit);
  j["theoretical_slope_h1"] = rep.theoretical_h1;
  j["fitted_slope_h1"] = slope_json(rep.h1_fit);
  j["fitted_slope_sqrtn_a_norm"] = slope_json(rep.coef_fit);
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row;
    row["n"] = r.n;
    row["h"] = r.h;
    row["error_l2"] = r.l2;
    row["error_h1"] = r.h1 >= 0 ? Json(r.h1) : Json(nullptr);
    row["sqrtn_a_norm"] = r.sqrtn_a;
    row["error_code"] = r.error_code.empty() ? "ok" : r.error_code;
    if (!r.error_message.empty()) row["error_message"] = r.error_message;
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string report_json(const RandCmpReport& rep) {
  Json j;
  j["config_hash"] = rep.config_hash;
  j["d"] = rep.d;
  j["k"] = rep.k;
  j["theoretical_slope_l2"] = rep.theoretical;
  j["fitted_slope_det"] = slope_json(rep.det_fit);
  j["fitted_slope_random_median"] = slope_json(rep.random_fit);
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"n", r.n}, {"det_l2", r.det_l2}, {"random_median_l2", r.random_median},
                    {"random_median_h", r.random_h_median}, {"det_h", r.det_h}});
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string report_json(const PdeReport& rep) {
  Json j;
  j["config_hash"] = rep.config_hash;
  j["d"] = rep.d;
  j["k"] = rep.k;
  j["exact_energy"] = rep.exact_energy;
  j["theoretical_slope_excess"] = rep.theoretical;
  j["fitted_slope_excess"] = slope_json(rep.excess_fit);
  Json rows = Json::array();
  for (const auto& s : rep.summary) {
    rows.push_back({{"m", s.m}, {"n", s.n}, {"mean_excess", s.mean_excess}, {"mean_h1_sq", s.mean_h1_sq},
                    {"runs", s.runs}});
  }
  j["summary"] = rows;
  return j.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::Io, "cannot write '" + path.string() + "'");
  body(out);
  require(static_cast<bool>(out), ErrorKind::Io, "write failed for '" + path.string() + "'");
}

std::filesystem::path ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorKind::Io, "cannot create output directory '" + dir + "'");
  return dir;
}

}  // namespace

void write_outputs(const RateReport& rep, const std::string& dir) {
  const auto base = ensure_dir(dir);
  write_file(base / "rates.csv", [&](std::ostream& os) { write_rates_csv(rep, os); });
  write_file(base / "rates_report.json", [&](std::ostream& os) { os << report_json(rep); });
}

void write_outputs(const RandCmpReport& rep, const std::string& dir) {
  const auto base = ensure_dir(dir);
  write_file(base / "randcmp.csv", [&](std::ostream& os) { write_randcmp_csv(rep, os); });
  write_file(base / "randcmp_draws.csv", [&](std::ostream& os) { write_randcmp_draws_csv(rep, os); });
  write_file(base / "randcmp_report.json", [&](std::ostream& os) { os << report_json(rep); });
}

void write_outputs(const PdeReport& rep, const std::string& dir) {
  const auto base = ensure_dir(dir);
  write_file(base / "pde.csv", [&](std::ostream& os) { write_pde_csv(rep, os); });
  write_file(base / "pde_report.json", [&](std::ostream& os) { os << report_json(rep); });
}

}  // namespace linrelu
