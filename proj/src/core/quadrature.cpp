// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/quadrature.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/legendre_harmonics.hpp"
#include "core/nnls.hpp"

namespace linrelu {

namespace {

Eigen::MatrixXd moment_matrix(const PointSet& ps, int degree) {
  const int d = ps.dim();
  const Eigen::Index rows = harmonic_count_upto(d, degree);
  Eigen::MatrixXd a(rows, ps.size());
  std::vector<double> y(static_cast<std::size_t>(rows));
  for (Eigen::Index j = 0; j < ps.size(); ++j) {
    harmonics_upto(d, degree, ps.row(j), y);
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = y[static_cast<std::size_t>(i)];
  }
  return a;
}

}  // namespace

int default_exact_degree(const PointSet& ps, double c1) {
  require(c1 > 0, ErrorKind::Config, "quadrature constant c1 must be positive");
  return 2 * static_cast<int>(std::floor(c1 / ps.mesh_norm()));
}

double moment_residual(const PointSet& ps, const Eigen::VectorXd& weights, int degree) {
  require(weights.size() == ps.size(), ErrorKind::Contract, "moment_residual: weight count mismatch");
  Eigen::VectorXd r = moment_matrix(ps, degree) * weights;
  r[0] -= 1.0;
  return r.cwiseAbs().maxCoeff();
}

QuadratureRule build_rule(const PointSet& ps, int d_target, double tol) {
  const int d = ps.dim();
  if (d != 1 && d != 2) {
    fail(ErrorKind::Unsupported, "quadrature rules are implemented for d in {1, 2}");
  }
  require(d_target >= 0, ErrorKind::Config, "build_rule: target degree must be >= 0");
  require(tol > 0, ErrorKind::Config, "build_rule: tolerance must be positive");
  std::vector<int> degrees;
  for (int deg = d_target; deg >= 0; deg -= 2) degrees.push_back(deg);
  if (degrees.back() != 0) degrees.push_back(0);

  for (int degree : degrees) {
    const Eigen::MatrixXd a = moment_matrix(ps, degree);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(a.rows());
    b[0] = 1.0;
    const NnlsResult sol = nnls(a, b);
    Eigen::VectorXd r = a * sol.x - b;
    const double residual = r.cwiseAbs().maxCoeff();
    if (residual <= tol) {
      QuadratureRule rule{ps, sol.x, degree, degree / 2, tol, residual, 0.0};
      rule.weight_constant = sol.x.maxCoeff() / std::pow(ps.mesh_norm(), d);
      return rule;
    }
  }
  fail(ErrorKind::Infeasible, "build_rule: no degree >= 0 reaches tolerance " + std::to_string(tol));
}

double integrate(const QuadratureRule& rule, std::span<const double> values) {
  require(values.size() == static_cast<std::size_t>(rule.weights.size()), ErrorKind::Contract,
          "integrate: value count does not match rule size");
  double out = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) out += rule.weights[static_cast<Eigen::Index>(j)] * values[j];
  return out;
}

}  // namespace linrelu
