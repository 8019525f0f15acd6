// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "core/legendre_harmonics.hpp"
#include "core/quadrature.hpp"
#include "core/sphere.hpp"
#include "test_util.hpp"

using namespace linrelu;

namespace {

// fibonacci_s2(200) with the default target degree: regression values from
// the NNLS solver.
constexpr int kFib200Degree = 4;
constexpr double kFib200WeightConstant = 2.20536;

std::vector<double> sample(const QuadratureRule& r, int m, int l, bool squared) {
  std::vector<double> v(static_cast<std::size_t>(r.points.size()));
  for (Eigen::Index i = 0; i < r.points.size(); ++i) {
    const double y = harmonic_eval(r.points.dim(), m, l, r.points.row(i));
    v[static_cast<std::size_t>(i)] = squared ? y * y : y;
  }
  return v;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("equispaced circle gives uniform weights") {
  const PointSet ps = generate_points(1, 8, PointStrategy::EquispacedCircle, 0);
  const QuadratureRule r = build_rule(ps, 7);
  CHECK(r.exact_degree == 7);
  CHECK(r.projection_degree == 3);
  CHECK(r.residual < 1e-12);
  for (Eigen::Index i = 0; i < 8; ++i) CHECK(r.weights[i] == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("degree is decremented until feasible") {
  const PointSet ps = generate_points(1, 8, PointStrategy::EquispacedCircle, 0);
  const QuadratureRule r = build_rule(ps, 11);
  CHECK(r.exact_degree == 7);
}

TEST_CASE("single point") {
  PointMatrix p(1, 3);
  p << 0, 0, 1;
  const QuadratureRule r = build_rule(PointSet(2, p, 0.01), 4);
  CHECK(r.exact_degree == 0);
  CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("fibonacci n=200 regression") {
  const PointSet ps = generate_points(2, 200, PointStrategy::FibonacciS2, 0);
  const int target = default_exact_degree(ps);
  CHECK(target == 2 * static_cast<int>(std::floor(0.5 / ps.mesh_norm())));
  const QuadratureRule r = build_rule(ps, target);
  CHECK(r.exact_degree == kFib200Degree);
  CHECK(r.residual <= 1e-8);
  CHECK(r.weight_constant == doctest::Approx(kFib200WeightConstant).epsilon(1e-5));
  const double h2 = ps.mesh_norm() * ps.mesh_norm();
  for (Eigen::Index i = 0; i < r.weights.size(); ++i) {
    CHECK(r.weights[i] >= 0.0);
    CHECK(r.weights[i] <= kFib200WeightConstant * h2 * (1 + 1e-5));
  }
  CHECK(moment_residual(ps, r.weights, r.exact_degree) == doctest::Approx(r.residual).epsilon(1e-6));
}

TEST_CASE("integration properties") {
  const PointSet ps = generate_points(2, 400, PointStrategy::FibonacciS2, 0);
  const QuadratureRule r = build_rule(ps, default_exact_degree(ps));
  REQUIRE(r.exact_degree >= 4);
  const std::vector<double> one(static_cast<std::size_t>(ps.size()), 1.0);
  CHECK(std::abs(integrate(r, one) - 1.0) < 1e-10);
  for (int m = 1; m <= r.exact_degree; ++m) {
    for (int l = 1; l <= 2 * m + 1; ++l) CHECK(std::abs(integrate(r, sample(r, m, l, false))) <= r.tol);
  }
  CHECK(std::abs(integrate(r, sample(r, 2, 1, true)) - 1.0) <= 10 * r.tol);
  CHECK_ERROR_KIND(integrate(r, std::vector<double>(3, 1.0)), ErrorKind::Contract);
}

TEST_CASE("unsupported dimension") {
  const PointSet ps = generate_points(3, 20, PointStrategy::UniformRandom, 0);
  CHECK_ERROR_KIND(build_rule(ps, 2), ErrorKind::Unsupported);
}

}  // TEST_SUITE
