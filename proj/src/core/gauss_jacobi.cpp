// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/gauss_jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "core/error.hpp"

namespace linrelu {

template <class Real>
GaussRule<Real> gauss_jacobi(int n, Real alpha, Real beta) {
  require(n >= 1, ErrorKind::Contract, "gauss_jacobi: n must be >= 1");
  require(alpha > -1 && beta > -1, ErrorKind::Contract, "gauss_jacobi: alpha, beta must be > -1");
  using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  const Real ab = alpha + beta;
  Vec diag(n);
  Vec off(std::max(n - 1, 0));
  diag[0] = (beta - alpha) / (ab + 2);
  for (int i = 1; i < n; ++i) {
    const Real s = 2 * i + ab;
    diag[i] = (beta * beta - alpha * alpha) / (s * (s + 2));
  }
  if (n > 1) {
    off[0] = std::sqrt(4 * (1 + alpha) * (1 + beta) / ((2 + ab) * (2 + ab) * (3 + ab)));
    for (int i = 2; i < n; ++i) {
      const Real s = 2 * i + ab;
      off[i - 1] = std::sqrt(4 * i * (i + alpha) * (i + beta) * (i + ab) /
                             (s * s * (s + 1) * (s - 1)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>> eig;
  eig.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  require(eig.info() == Eigen::Success, ErrorKind::Numerical, "gauss_jacobi: eigensolver failed");

  using std::exp;
  using std::lgamma;
  using std::log;
  const Real mu0 = exp((ab + 1) * log(Real(2)) + lgamma(alpha + 1) + lgamma(beta + 1) -
                       lgamma(ab + 2));
  GaussRule<Real> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = eig.eigenvalues()[i];
    const Real v0 = eig.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

template <class Real>
GaussRule<Real> split_sphere_weight_rule(int d, int n_half) {
  require(d >= 1, ErrorKind::Contract, "split_sphere_weight_rule: d must be >= 1");
  const Real a = Real(d - 2) / 2;
  // On [0, 1], t = (1 + s) / 2 and (1 - t^2)^a dt
  //   = 2^{-a-1} (1 - s)^a ((3 + s) / 2)^a ds.
  const GaussRule<Real> right = gauss_jacobi<Real>(n_half, a, Real(0));
  const Real scale = std::pow(Real(2), -a - 1);
  GaussRule<Real> rule;
  rule.nodes.resize(2 * n_half);
  rule.weights.resize(2 * n_half);
  for (int i = 0; i < n_half; ++i) {
    const Real s = right.nodes[i];
    const Real w = right.weights[i] * scale * std::pow((3 + s) / 2, a);
    // Mirror image on [-1, 0].
    rule.nodes[n_half - 1 - i] = -(1 + s) / 2;
    rule.weights[n_half - 1 - i] = w;
    rule.nodes[n_half + i] = (1 + s) / 2;
    rule.weights[n_half + i] = w;
  }
  return rule;
}

template GaussRule<double> gauss_jacobi<double>(int, double, double);
template GaussRule<long double> gauss_jacobi<long double>(int, long double, long double);
template GaussRule<double> split_sphere_weight_rule<double>(int, int);
template GaussRule<long double> split_sphere_weight_rule<long double>(int, int);

}  // namespace linrelu
