// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/nnls.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/QR>

#include "core/error.hpp"

namespace linrelu {

namespace {

Eigen::VectorXd solve_passive(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                              const std::vector<Eigen::Index>& passive) {
  Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(passive.size()));
  for (std::size_t i = 0; i < passive.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = a.col(passive[i]);
  return sub.colPivHouseholderQr().solve(b);
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations) {
  require(a.rows() == b.size(), ErrorKind::Contract, "nnls: dimension mismatch");
  const Eigen::Index n = a.cols();
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n);
  NnlsResult out;
  out.x = Eigen::VectorXd::Zero(n);
  std::vector<bool> in_passive(static_cast<std::size_t>(n), false);
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                     a.cwiseAbs().colwise().sum().maxCoeff() *
                     static_cast<double>(std::max(a.rows(), n));

  Eigen::VectorXd w = a.transpose() * (b - a * out.x);
  while (out.iterations < max_iterations) {
    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!in_passive[j] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    }
    if (best < 0) {
      out.converged = true;
      break;
    }
    ++out.iterations;
    in_passive[best] = true;

    for (;;) {
      std::vector<Eigen::Index> passive;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (in_passive[j]) passive.push_back(j);
      }
      if (passive.empty()) break;
      const Eigen::VectorXd s = solve_passive(a, b, passive);
      bool feasible = true;
      for (Eigen::Index i = 0; i < s.size(); ++i) feasible = feasible && s[i] > 0.0;
      if (feasible) {
        out.x.setZero();
        for (std::size_t i = 0; i < passive.size(); ++i) out.x[passive[i]] = s[static_cast<Eigen::Index>(i)];
        break;
      }
      // Step toward s until the first passive variable hits zero.
      double alpha = 1.0;
      for (std::size_t i = 0; i < passive.size(); ++i) {
        const double si = s[static_cast<Eigen::Index>(i)];
        const double xi = out.x[passive[i]];
        if (si <= 0.0) alpha = std::min(alpha, xi / (xi - si));
      }
      for (std::size_t i = 0; i < passive.size(); ++i) {
        double& xi = out.x[passive[i]];
        xi += alpha * (s[static_cast<Eigen::Index>(i)] - xi);
        if (xi <= tol) {
          xi = 0.0;
          in_passive[passive[i]] = false;
        }
      }
    }
    w = a.transpose() * (b - a * out.x);
  }
  out.residual_norm = (a * out.x - b).norm();
  return out;
}

}  // namespace linrelu
