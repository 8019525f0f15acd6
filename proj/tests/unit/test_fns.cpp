// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "core/activation.hpp"
#include "core/fns.hpp"
#include "core/legendre_harmonics.hpp"
#include "core/quadrature.hpp"
#include "core/sphere.hpp"
#include "core/targets.hpp"
#include "test_util.hpp"

using namespace linrelu;
using std::numbers::pi;

namespace {

FiniteNeuronModel random_ball_model(int d, int k, int n, std::uint64_t seed) {
  const PointSet ps = generate_points(d, n, PointStrategy::UniformRandom, seed);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n01;
  Eigen::VectorXd a(n);
  for (int j = 0; j < n; ++j) a[j] = n01(gen);
  return FiniteNeuronModel(k, Domain::Ball, ps, a);
}

TargetFunction ridge_target(const PointSet& ps, Eigen::Index j, int k) {
  const int d = ps.dim();
  const Eigen::VectorXd th = ps.points().row(j).transpose();
  TargetFunction f;
  f.name = "ridge";
  f.d = d;
  f.domain = Domain::Ball;
  f.regularity = 10;
  auto inner = [th, d](std::span<const double> x) {
    double s = th[d];
    for (int i = 0; i < d; ++i) s += th[i] * x[i];
    return s;
  };
  f.value = [inner, k](std::span<const double> x) { return sigma_k(k, inner(x)); };
  f.gradient = [inner, th, k, d](std::span<const double> x, std::span<double> g) {
    const double s = sigma_k_prime(k, inner(x));
    for (int i = 0; i < d; ++i) g[i] = s * th[i];
  };
  return f;
}

bool near_kink(const FiniteNeuronModel& m, const std::vector<double>& x) {
  const int d = m.dim();
  for (Eigen::Index j = 0; j < m.size(); ++j) {
    double s = m.directions().points()(j, d);
    for (int i = 0; i < d; ++i) s += m.directions().points()(j, i) * x[static_cast<std::size_t>(i)];
    if (std::abs(s) < 1e-4) return true;
  }
  return false;
}

// <f, Y_{m,l}> on a fine circle grid; independent of the Funk-Hecke path.
double circle_projection(const FiniteNeuronModel& model, int m, int l) {
  const ReferenceGrid g = reference_grid(1, 1 << 15);
  double s = 0.0;
  for (Eigen::Index i = 0; i < g.nodes.rows(); ++i) {
    const std::span<const double> eta(g.nodes.data() + 2 * i, 2);
    s += g.weights[i] * model(eta) * harmonic_eval(1, m, l, eta);
  }
  return s;
}

}  // namespace

TEST_SUITE("fns") {

TEST_CASE("single ridge value and gradient") {
  PointMatrix p(1, 3);
  p << 1, 0, 0;
  const FiniteNeuronModel model(2, Domain::Ball, PointSet(2, p, 0.01), Eigen::VectorXd::Ones(1));
  const std::vector<double> x{0.5, 0.0};
  CHECK(model(x) == doctest::Approx(0.25).epsilon(1e-15));
  std::vector<double> g(2);
  model.gradient(x, g);
  CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g[1] == 0.0);
  const std::vector<double> dead{-0.5, 0.3};
  CHECK(model(dead) == 0.0);
  model.gradient(dead, g);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 0.0);
  CHECK_ERROR_KIND(model(std::vector<double>{0.1}), ErrorKind::Contract);
}

TEST_CASE("k=0 gradient is unsupported") {
  const FiniteNeuronModel m = random_ball_model(2, 0, 5, 1);
  std::vector<double> g(2);
  CHECK_ERROR_KIND(m.gradient(std::vector<double>{0.1, 0.2}, g), ErrorKind::Unsupported);
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 gen(77);
  for (int k : {1, 2, 3}) {
    for (int d : {1, 2}) {
      const FiniteNeuronModel model = random_ball_model(d, k, 12, 100 + k);
      double worst = 0.0;
      for (int t = 0; t < 50; ++t) {
        auto x = test::random_ball_point(gen, d, 0.95);
        if (near_kink(model, x)) continue;
        std::vector<double> g(static_cast<std::size_t>(d));
        model.gradient(x, g);
        for (int i = 0; i < d; ++i) {
          auto xp = x, xm = x;
          xp[i] += 1e-5;
          xm[i] -= 1e-5;
          const double fd = (model(xp) - model(xm)) / 2e-5;
          worst = std::max(worst, std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i])));
        }
      }
      INFO("d=" << d << " k=" << k);
      CHECK(worst < 1e-6);
    }
  }
}

TEST_CASE("coefficient statistics") {
  const PointSet ps = generate_points(1, 4, PointStrategy::EquispacedCircle, 0);
  const CoefStat zero = coef_stat(FiniteNeuronModel(1, Domain::Ball, ps, Eigen::VectorXd::Zero(4)));
  CHECK(zero.l2 == 0.0);
  CHECK(zero.sqrtn_l2 == 0.0);
  CHECK(zero.l1 == 0.0);
  const CoefStat ones = coef_stat(FiniteNeuronModel(1, Domain::Ball, ps, Eigen::VectorXd::Ones(4)));
  CHECK(ones.l2 == 2.0);
  CHECK(ones.sqrtn_l2 == 4.0);
  CHECK(ones.l1 == 4.0);
}

TEST_CASE("cap is enforced at construction") {
  const PointSet ps = generate_points(1, 4, PointStrategy::EquispacedCircle, 0);
  CHECK_ERROR_KIND(FiniteNeuronModel(1, Domain::Ball, ps, Eigen::VectorXd::Ones(4), 3.0), ErrorKind::Contract);
  CHECK_NOTHROW(FiniteNeuronModel(1, Domain::Ball, ps, Eigen::VectorXd::Ones(4), 4.0));
}

TEST_CASE("grids integrate constants") {
  for (int d : {1, 2}) {
    for (GridRole role : {GridRole::Fit, GridRole::Eval}) {
      const SampleGrid g = ball_grid(d, 1.5, 2000, role);
      CHECK(g.points.rows() >= 2000);
      const double volume = d == 1 ? 3.0 : pi * 2.25;
      CHECK(g.weights.sum() == doctest::Approx(volume).epsilon(1e-12));
    }
  }
  const SampleGrid s = sphere_grid(2, 20);
  CHECK(s.weights.sum() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_ERROR_KIND(ball_grid(3, 1.0, 100), ErrorKind::Unsupported);
}

TEST_CASE("least squares recovers a representable target") {
  PointParams params;
  params.k = 2;
  const PointSet ps = generate_points(2, 40, PointStrategy::BandWithPolyCompletion, 0, params);
  const TargetFunction f = ridge_target(ps, 7, 2);
  const SampleGrid fit = ball_grid(2, 1.0, 4000, GridRole::Fit);
  const LsFit r = least_squares_fit(f, ps, 2, fit);
  const ErrorNorms e = error_norms(r.model, f, ball_grid(2, 1.0, 4000, GridRole::Eval), 1);
  CHECK(e.l2 <= 1e-8);
  CHECK(e.h1 <= 1e-8);
  CHECK(!r.cap_active);
}

TEST_CASE("least squares of zero is zero") {
  const PointSet ps = generate_points(1, 16, PointStrategy::EquispacedCircle, 0);
  const TargetFunction zero = make_target("zero", 1, Domain::Ball);
  const LsFit r = least_squares_fit(zero, ps, 1, ball_grid(1, 1.0, 512));
  CHECK(r.model.coefficients().norm() == 0.0);
  CHECK(error_norms(r.model, zero, ball_grid(1, 1.0, 512, GridRole::Eval), 1).h1 == 0.0);
}

TEST_CASE("norm cap binds through ridge bisection") {
  const PointSet ps = generate_points(2, 64, PointStrategy::FibonacciS2, 0);
  const TargetFunction f = make_target("gaussian_bump", 2, Domain::Ball);
  const SampleGrid grid = ball_grid(2, 1.0, 4096);
  const LsFit free_fit = least_squares_fit(f, ps, 1, grid);
  const double unconstrained = coef_stat(free_fit.model).sqrtn_l2;
  const double cap = 0.5 * unconstrained;
  const LsFit capped = least_squares_fit(f, ps, 1, grid, 0.0, cap);
  const double got = coef_stat(capped.model).sqrtn_l2;
  CHECK(capped.cap_active);
  CHECK(capped.ridge > 0);
  CHECK(got <= cap * (1 + 1e-9));
  CHECK(got >= cap * (1 - 1e-6));
  const LsFit loose = least_squares_fit(f, ps, 1, grid, 0.0, 2 * unconstrained);
  CHECK(!loose.cap_active);
}

TEST_CASE("error norms are stable under grid refinement") {
  const FiniteNeuronModel model = random_ball_model(2, 1, 30, 5);
  const TargetFunction f = make_target("gaussian_bump", 2, Domain::Ball);
  const double coarse = error_norms(model, f, ball_grid(2, 1.0, 20000, GridRole::Eval), 1).l2;
  const double fine = error_norms(model, f, ball_grid(2, 1.0, 80000, GridRole::Eval), 1).l2;
  CHECK(std::abs(coarse - fine) < 0.01 * fine);
  CHECK_ERROR_KIND(error_norms(model, make_target("zero", 2, Domain::Ball), sphere_grid(2, 8), 0),
                   ErrorKind::Contract);
}

TEST_CASE("constructive fit reproduces a single harmonic") {
  // Y_{2,1} is even, matching the parity required for k = 1, and 2 lies in E.
  TargetFunction g;
  g.name = "y21";
  g.d = 1;
  g.domain = Domain::Sphere;
  g.value = [](std::span<const double> eta) { return harmonic_eval(1, 2, 1, eta); };
  g.regularity = 100;
  g.parity = 1;
  const PointSet ps = generate_points(1, 32, PointStrategy::EquispacedCircle, 0);
  const QuadratureRule rule = build_rule(ps, 31);
  const ActivationSpectrum spec(1, 1, rule.projection_degree);
  const FiniteNeuronModel model = constructive_fit(g, rule, spec, reference_grid(1, 2 * rule.projection_degree + 64));
  CHECK(std::abs(circle_projection(model, 2, 1) - 1.0) < 1e-6);
  CHECK(std::abs(circle_projection(model, 2, 2)) < 1e-6);
  CHECK(std::abs(circle_projection(model, 4, 1)) < 1e-6);
}

TEST_CASE("constructive fit of zero and parity checks") {
  const PointSet ps = generate_points(1, 16, PointStrategy::EquispacedCircle, 0);
  const QuadratureRule rule = build_rule(ps, 15);
  const ActivationSpectrum spec(1, 1, rule.projection_degree);
  const ReferenceGrid ref = reference_grid(1, 2 * rule.projection_degree + 64);
  const FiniteNeuronModel zero = constructive_fit(make_target("zero", 1, Domain::Sphere), rule, spec, ref);
  CHECK(zero.coefficients().norm() == 0.0);
  CHECK_ERROR_KIND(constructive_fit(make_target("smooth_odd", 1, Domain::Sphere), rule, spec, ref),
                   ErrorKind::Contract);
  const ActivationSpectrum spec2(1, 2, rule.projection_degree);
  CHECK_NOTHROW(constructive_fit(make_target("smooth_odd", 1, Domain::Sphere), rule, spec2, ref));
  const QuadratureRule tiny = build_rule(generate_points(1, 3, PointStrategy::EquispacedCircle, 0), 2);
  const ActivationSpectrum spec3(1, 1, 2);
  CHECK_ERROR_KIND(constructive_fit(make_target("smooth_even", 1, Domain::Sphere), tiny, spec3, ref),
                   ErrorKind::Precision);
}

TEST_CASE("constructive fit matches harmonic coefficients up to J") {
  const TargetFunction g = make_target("smooth_even", 2, Domain::Sphere);
  const PointSet ps = generate_points(2, 400, PointStrategy::FibonacciS2, 0);
  const QuadratureRule rule = build_rule(ps, default_exact_degree(ps));
  const int j = rule.projection_degree;
  const ActivationSpectrum spec(2, 1, std::max(j, 2));
  const ReferenceGrid ref = reference_grid(2, 2 * j + 64);
  const FiniteNeuronModel model = constructive_fit(g, rule, spec, ref);
  std::vector<double> samples(static_cast<std::size_t>(ref.nodes.rows()));
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = g({ref.nodes.data() + 3 * i, 3});
  const double mismatch = truncation_mismatch(model, spec, project_all(ref, samples, j), j);
  CHECK(mismatch <= 10 * (rule.residual + 1e-10));
}

TEST_CASE("cell densities") {
  const PointSet ps = generate_points(1, 4, PointStrategy::EquispacedCircle, 0);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(4);
  a[0] = 1.0;
  const CellDensity c = density_from_model(FiniteNeuronModel(1, Domain::Sphere, ps, a));
  CHECK(c.exact);
  for (Eigen::Index j = 0; j < 4; ++j) CHECK(c.cell_measure[j] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(c.value[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(c(std::vector<double>{std::cos(0.2), std::sin(0.2)}) == doctest::Approx(4.0));
  CHECK(c(std::vector<double>{0.0, 1.0}) == 0.0);

  const PointSet fib = generate_points(2, 100, PointStrategy::FibonacciS2, 0);
  const CellDensity z = density_from_model(FiniteNeuronModel(1, Domain::Sphere, fib, Eigen::VectorXd::Zero(100)));
  CHECK(std::abs(z.cell_measure.sum() - 1.0) < 0.01);
  CHECK(z.value.norm() == 0.0);
  // Cells of a near-uniform set have measure close to 1/n.
  CHECK(z.cell_measure.minCoeff() > 0.5 / 100);
  CHECK(z.cell_measure.maxCoeff() < 2.0 / 100);
}

}  // TEST_SUITE
