// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/special_functions/gegenbauer.hpp>
#include <boost/math/special_functions/spherical_harmonic.hpp>

#include "core/activation.hpp"
#include "core/legendre_harmonics.hpp"
#include "test_util.hpp"

using namespace linrelu;
using std::numbers::pi;

namespace {

// Zonal polynomial from Boost's Gegenbauer polynomials, scaled so p_m(1) = N(m).
double zonal_oracle(int d, int m, double t) {
  if (m == 0) return 1.0;
  if (d == 1) return 2.0 * std::cos(m * std::acos(t));
  const double lambda = 0.5 * (d - 1);
  return double(harmonic_dim(d, m)) * boost::math::gegenbauer(m, lambda, t) / boost::math::gegenbauer(m, lambda, 1.0);
}

std::vector<double> polar(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace

TEST_SUITE("legendre") {

TEST_CASE("harmonic space dimensions") {
  CHECK(harmonic_dim(2, 3) == 7);
  CHECK(harmonic_dim(5, 0) == 1);
  CHECK(harmonic_dim(1, 5) == 2);
  CHECK(harmonic_dim(3, 2) == 9);
  for (int m = 0; m < 30; ++m) CHECK(harmonic_dim(2, m) == std::uint64_t(2 * m + 1));
}

TEST_CASE("sphere areas") {
  CHECK(sphere_area(0) == doctest::Approx(2.0));
  CHECK(sphere_area(1) == doctest::Approx(2 * pi).epsilon(1e-15));
  CHECK(sphere_area(2) == doctest::Approx(4 * pi).epsilon(1e-15));
  CHECK(sphere_area(3) == doctest::Approx(2 * pi * pi).epsilon(1e-15));
}

TEST_CASE("low-degree zonal values") {
  const LegendreBasis b2(2, 4);
  const LegendreBasis b1(1, 4);
  for (double t : {-1.0, -0.3, 0.0, 0.7, 1.0}) CHECK(b2.eval(0, t) == 1.0);
  CHECK(b2.eval(1, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(b1.eval(2, 0.0) == doctest::Approx(-2.0).epsilon(1e-15));
  for (int d = 1; d <= 6; ++d) {
    const LegendreBasis b(d, 1);
    CHECK(b.eval(1, 0.3) == doctest::Approx((d + 1) * 0.3).epsilon(1e-14));
  }
  CHECK_ERROR_KIND(b2.eval(5, 0.1), ErrorKind::Range);
}

TEST_CASE("zonal polynomials match Gegenbauer oracle") {
  for (int d = 1; d <= 5; ++d) {
    const LegendreBasis basis(d, 40);
    std::vector<double> all(41);
    for (double t = -1.0; t <= 1.0; t += 0.0625) {
      basis.eval_all(t, all);
      for (int m = 0; m <= 40; ++m) {
        const double want = zonal_oracle(d, m, t);
        const double scale = double(harmonic_dim(d, m));
        CHECK(std::abs(basis.eval(m, t) - want) <= 1e-12 * scale);
        CHECK(std::abs(all[m] - want) <= 1e-12 * scale);
        CHECK(std::abs(all[m]) <= scale * (1 + 1e-12));
      }
    }
    for (int m = 0; m <= 40; ++m) CHECK(basis.eval(m, 1.0) == doctest::Approx(basis.norm_at_one(m)).epsilon(1e-13));
  }
}

TEST_CASE("circle harmonics") {
  const std::vector<double> any{std::cos(0.4), std::sin(0.4)};
  CHECK(harmonic_eval(1, 0, 1, any) == 1.0);
  const std::vector<double> at{std::cos(pi / 6), std::sin(pi / 6)};
  CHECK(std::abs(harmonic_eval(1, 3, 1, at)) < 1e-15);
  CHECK(harmonic_eval(1, 3, 2, at) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(harmonic_count_upto(1, 4) == 9);
  CHECK(harmonic_index(1, 2, 1) == 3);
  CHECK(harmonic_index(1, 2, 2) == 4);
}

TEST_CASE("sphere harmonics match Boost up to sign") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = std::acos(2 * u(gen) - 1);
    const double phi = 2 * pi * u(gen);
    const auto eta = polar(theta, phi);
    for (int m = 0; m <= 8; ++m) {
      for (int l = 1; l <= 2 * m + 1; ++l) {
        const int mu = l - 1 - m;
        double want;
        if (mu == 0) {
          want = boost::math::spherical_harmonic_r(m, 0, theta, phi);
        } else if (mu > 0) {
          want = std::sqrt(2.0) * boost::math::spherical_harmonic_r(m, mu, theta, phi);
        } else {
          want = std::sqrt(2.0) * boost::math::spherical_harmonic_i(m, -mu, theta, phi);
        }
        want *= std::sqrt(4 * pi);  // normalized surface measure
        CHECK(std::abs(std::abs(harmonic_eval(2, m, l, eta)) - std::abs(want)) < 1e-12);
      }
    }
  }
  CHECK(harmonic_count_upto(2, 3) == 16);
  CHECK(harmonic_index(2, 3, 1) == 9);
}

TEST_CASE("harmonics_upto agrees with single evaluations") {
  const auto eta = polar(0.7, 2.1);
  std::vector<double> all(static_cast<std::size_t>(harmonic_count_upto(2, 6)));
  harmonics_upto(2, 6, eta, all);
  for (int m = 0; m <= 6; ++m) {
    for (int l = 1; l <= 2 * m + 1; ++l) {
      CHECK(all[static_cast<std::size_t>(harmonic_index(2, m, l))] == doctest::Approx(harmonic_eval(2, m, l, eta)).epsilon(1e-14));
    }
  }
}

TEST_CASE("addition theorem and normalization") {
  std::mt19937_64 gen(5);
  for (int d : {1, 2}) {
    const LegendreBasis basis(d, 20);
    for (int trial = 0; trial < 25; ++trial) {
      const auto u = test::random_sphere_point(gen, d);
      const auto v = test::random_sphere_point(gen, d);
      double dot = 0;
      for (int i = 0; i <= d; ++i) dot += u[i] * v[i];
      for (int m = 0; m <= 20; ++m) {
        double sum = 0.0;
        double sum_uu = 0.0;
        for (int l = 1; l <= int(harmonic_dim(d, m)); ++l) {
          sum += harmonic_eval(d, m, l, u) * harmonic_eval(d, m, l, v);
          sum_uu += harmonic_eval(d, m, l, u) * harmonic_eval(d, m, l, u);
        }
        CHECK(std::abs(sum - basis.eval(m, dot)) < 1e-9);
        CHECK(std::abs(sum_uu - double(harmonic_dim(d, m))) < 1e-9);
      }
    }
  }
}

TEST_CASE("unsupported harmonic dimension") {
  const std::vector<double> eta{0, 0, 0, 1};
  CHECK_ERROR_KIND(harmonic_eval(3, 1, 1, eta), ErrorKind::Unsupported);
  CHECK_ERROR_KIND(reference_grid(3, 4), ErrorKind::Unsupported);
}

TEST_CASE("reference grid on the circle") {
  const ReferenceGrid g = reference_grid(1, 10);
  REQUIRE(g.nodes.rows() == 11);
  for (Eigen::Index i = 0; i < 11; ++i) CHECK(g.weights[i] == doctest::Approx(1.0 / 11).epsilon(1e-15));
  CHECK(g.weights.sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("reference grid exactness on S^2") {
  const ReferenceGrid g = reference_grid(2, 12);
  CHECK(std::abs(g.weights.sum() - 1.0) < 1e-14);
  for (int m = 0; m <= 6; ++m) {
    for (int l = 1; l <= 2 * m + 1; ++l) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < g.nodes.rows(); ++i) {
        const double y = harmonic_eval(2, m, l, {g.nodes.data() + 3 * i, 3});
        s += g.weights[i] * y * y;
      }
      CHECK(std::abs(s - 1.0) < (m == 3 && l == 1 ? 1e-12 : 1e-9));
    }
  }
}

TEST_CASE("projection of single harmonics and constants") {
  const ReferenceGrid g = reference_grid(2, 16);
  std::vector<double> y21(static_cast<std::size_t>(g.nodes.rows()));
  std::vector<double> one(y21.size(), 1.0);
  for (std::size_t i = 0; i < y21.size(); ++i) y21[i] = harmonic_eval(2, 2, 1, {g.nodes.data() + 3 * i, 3});
  const HarmonicProjection p = project_all(g, y21, 4);
  for (int m = 0; m <= 4; ++m) {
    for (Eigen::Index l = 0; l < p.coefficients(m).size(); ++l) {
      const double want = (m == 2 && l == 0) ? 1.0 : 0.0;
      CHECK(std::abs(p.coefficients(m)[l] - want) < 1e-9);
    }
  }
  const HarmonicProjection c = project_all(g, one, 4);
  const auto eta = polar(1.1, 0.3);
  CHECK(c.eval(0, eta) == doctest::Approx(1.0).epsilon(1e-13));
  for (int m = 1; m <= 4; ++m) CHECK(std::abs(c.eval(m, eta)) < 1e-12);
  CHECK_ERROR_KIND(project_all(g, one, 9), ErrorKind::Precision);
}

TEST_CASE("projection of a ridge recovers the activation coefficient") {
  // g(eta) = sigma_1(theta0 . eta) on S^1; Pi_2 g(theta0) = sigma_hat_1(2) N(2).
  const ReferenceGrid g = reference_grid(1, 4096);
  const std::vector<double> theta0{std::cos(0.3), std::sin(0.3)};
  std::vector<double> s(static_cast<std::size_t>(g.nodes.rows()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = sigma_k(1, g.nodes(Eigen::Index(i), 0) * theta0[0] + g.nodes(Eigen::Index(i), 1) * theta0[1]);
  }
  const HarmonicProjection p = project_all(g, s, 2);
  CHECK(p.eval(2, theta0) == doctest::Approx(2.0 / (3.0 * pi)).epsilon(1e-6));
  const ActivationSpectrum spec(1, 1, 4);
  CHECK(p.eval(2, theta0) == doctest::Approx(spec.coefficient(2) * 2.0).epsilon(1e-6));
}

}  // TEST_SUITE
