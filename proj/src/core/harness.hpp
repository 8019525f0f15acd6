// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "core/config.hpp"

namespace linrelu {

struct SlopeFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  bool sufficient = false;  // false with fewer than 4 points
};

// OLS of log(err) on log(n). ErrorKind::Domain for nonpositive n or err.
SlopeFit fit_slope(std::span<const double> n, std::span<const double> err);

// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

struct RateRow {
  long long n_requested = 0;
  long long n = 0;
  double h = 0.0;
  double l2 = 0.0;
  double h1 = -1.0;
  double sqrtn_a = 0.0;
  double a_l1 = 0.0;
  int exact_degree = -1;
  double mismatch = -1.0;
  bool cap_active = false;
  std::string error_code;  // empty on success
  std::string error_message;
};

struct RateReport {
  std::string config_hash;
  std::string path;  // "ls" or "constructive"
  int d = 0;
  int k = 0;
  std::string target;
  std::string strategy;
  std::vector<RateRow> rows;  // ascending n_requested
  SlopeFit l2_fit;
  SlopeFit h1_fit;
  SlopeFit coef_fit;
  double theoretical_l2 = 0.0;
  double theoretical_h1 = 0.0;
};

// Keys: d, k, target, strategy, path (ls | constructive), n_grid, seed,
// lambda, norm_cap, ridge, s, fit_points, eval_points, quad_degree
// (auto | full | int), quad_c1, quad_tol, eval_degree, mesh_resolution,
// regularity, threads. See README for defaults.
RateReport run_rates(const Config& cfg);

struct RandCmpRow {
  long long n = 0;
  double det_l2 = 0.0;
  double det_h = 0.0;
  double random_median = 0.0;
  double random_q1 = 0.0;
  double random_q3 = 0.0;
  double random_h_median = 0.0;
  int random_ok = 0;
  std::string error_code;
};

struct RandDraw {
  long long n = 0;
  long long seed = 0;
  double h = 0.0;
  double l2 = 0.0;
  std::string error_code;
};

struct RandCmpReport {
  std::string config_hash;
  int d = 0;
  int k = 0;
  std::vector<RandCmpRow> rows;
  std::vector<RandDraw> draws;
  SlopeFit det_fit;
  SlopeFit random_fit;
  double theoretical = 0.0;
};

// Deterministic strategy vs uniform_random over `seeds` (at least 10).
RandCmpReport run_randcmp(const Config& cfg);

struct PdeRow {
  long long n = 0;
  long long m = 0;
  long long seed = 0;
  double emp_risk = 0.0;
  double energy = 0.0;
  double excess = 0.0;
  double h1 = 0.0;
  double sqrtn_a = 0.0;
  double certificate = 0.0;
  bool cap_active = false;
  std::string error_code;
};

struct PdeSummaryRow {
  long long m = 0;
  long long n = 0;
  double mean_excess = 0.0;
  double mean_h1_sq = 0.0;
  int runs = 0;
};

struct PdeReport {
  std::string config_hash;
  int d = 0;
  int k = 0;
  double norm_cap = 0.0;
  double exact_energy = 0.0;
  std::vector<PdeRow> rows;
  std::vector<PdeSummaryRow> summary;
  SlopeFit excess_fit;
  double theoretical = -0.5;
};

// Keys: d, k, problem, strategy, m_grid, seeds, n (0 = ceil(m^{d/(2(d+2k-1))})),
// norm_cap, energy_points, threads.
PdeReport run_pde(const Config& cfg);

void write_rates_csv(const RateReport& report, std::ostream& os);
void write_randcmp_csv(const RandCmpReport& report, std::ostream& os);
void write_randcmp_draws_csv(const RandCmpReport& report, std::ostream& os);
void write_pde_csv(const PdeReport& report, std::ostream& os);
std::string report_json(const RateReport& report);
std::string report_json(const RandCmpReport& report);
std::string report_json(const PdeReport& report);

// Writes <dir>/<stem>.csv (and extra CSVs) plus <dir>/<stem>_report.json.
void write_outputs(const RateReport& report, const std::string& dir);
void write_outputs(const RandCmpReport& report, const std::string& dir);
void write_outputs(const PdeReport& report, const std::string& dir);

}  // namespace linrelu
