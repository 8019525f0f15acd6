// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include <Eigen/Core>

#include "core/sphere.hpp"

namespace linrelu {

// Nonnegative weights on a point set reproducing the normalized-measure
// moments of all harmonics of degree <= exact_degree.
struct QuadratureRule {
  PointSet points;
  Eigen::VectorXd weights;
  int exact_degree = 0;
  int projection_degree = 0;  // floor(exact_degree / 2)
  double tol = 0.0;
  double residual = 0.0;      // max abs moment error
  double weight_constant = 0.0;  // max_j tau_j / h^d
};

// 2 floor(c1 / h).
int default_exact_degree(const PointSet& ps, double c1 = 0.5);

// Tries D = d_target, d_target - 2, ... and finally 0, returning the first
// rule whose moment residual is <= tol. ErrorKind::Unsupported for d > 2,
// ErrorKind::Infeasible if even the mass cannot be matched.
QuadratureRule build_rule(const PointSet& ps, int d_target, double tol = 1e-8);

// Max abs moment error of given weights up to degree D.
double moment_residual(const PointSet& ps, const Eigen::VectorXd& weights, int degree);

double integrate(const QuadratureRule& rule, std::span<const double> values);

}  // namespace linrelu
