// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "core/nnls.hpp"
#include "test_util.hpp"

using namespace linrelu;

namespace {

// Exhaustive oracle: the optimum is the unconstrained least-squares solution
// on some support set that happens to be nonnegative.
double brute_force_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(a.cols());
  double best = b.norm();
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < n; ++j) {
      if (mask & (1 << j)) cols.push_back(j);
    }
    Eigen::MatrixXd sub(a.rows(), Eigen::Index(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) sub.col(Eigen::Index(j)) = a.col(cols[j]);
    const Eigen::VectorXd x = sub.colPivHouseholderQr().solve(b);
    if ((x.array() >= -1e-14).all()) best = std::min(best, (sub * x - b).norm());
  }
  return best;
}

}  // namespace

TEST_SUITE("nnls") {

TEST_CASE("random problems match exhaustive search") {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 4 + trial % 5;
    const int n = 2 + trial % 6;
    Eigen::MatrixXd a(m, n);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = n01(gen);
      b[i] = n01(gen);
    }
    const NnlsResult r = nnls(a, b);
    CHECK(r.converged);
    CHECK((r.x.array() >= 0).all());
    CHECK(r.residual_norm == doctest::Approx((a * r.x - b).norm()).epsilon(1e-12));
    CHECK(r.residual_norm <= brute_force_residual(a, b) + 1e-10);
  }
}

TEST_CASE("interior solution equals least squares") {
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 1, 1, 1;
  const Eigen::Vector2d x0(0.5, 2.0);
  const Eigen::VectorXd b = a * x0;
  const NnlsResult r = nnls(a, b);
  CHECK((r.x - x0).norm() < 1e-14);
  CHECK(r.residual_norm < 1e-14);
}

TEST_CASE("negative target gives zero") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
  const Eigen::Vector3d b(-1, -2, -3);
  const NnlsResult r = nnls(a, b);
  CHECK(r.x.norm() == 0.0);
  CHECK(r.residual_norm == doctest::Approx(b.norm()));
}

}  // TEST_SUITE
