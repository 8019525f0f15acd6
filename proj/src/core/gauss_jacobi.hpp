// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace linrelu {

template <class Real>
struct GaussRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

// n-point Gauss-Jacobi rule for the weight (1 - s)^alpha (1 + s)^beta on
// [-1, 1], via Golub-Welsch. alpha, beta > -1.
template <class Real>
GaussRule<Real> gauss_jacobi(int n, Real alpha, Real beta);

template <class Real>
GaussRule<Real> gauss_legendre(int n) {
  return gauss_jacobi<Real>(n, Real(0), Real(0));
}

// Rule on [-1, 1] for the weight (1 - t^2)^{(d-2)/2}, split at t = 0 so that
// integrands with a kink or jump at the origin are integrated accurately.
// n_half nodes on each side; nodes ascending.
template <class Real>
GaussRule<Real> split_sphere_weight_rule(int d, int n_half);

extern template GaussRule<double> gauss_jacobi<double>(int, double, double);
extern template GaussRule<long double> gauss_jacobi<long double>(int, long double, long double);
extern template GaussRule<double> split_sphere_weight_rule<double>(int, int);
extern template GaussRule<long double> split_sphere_weight_rule<long double>(int, int);

}  // namespace linrelu
