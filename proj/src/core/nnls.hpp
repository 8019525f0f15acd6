// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

namespace linrelu {

struct NnlsResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;  // ||A x - b||_2
  int iterations = 0;
  bool converged = false;
};

// min ||A x - b||_2 subject to x >= 0 (Lawson-Hanson active set).
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations = 0);

}  // namespace linrelu
