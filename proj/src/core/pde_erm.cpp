// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/pde_erm.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include <Eigen/Cholesky>

#include "core/error.hpp"
#include "core/gauss_jacobi.hpp"
#include "core/rng.hpp"

namespace linrelu {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRidgeFloor = 1e-12;

}  // namespace

EllipticProblem make_problem(const std::string& name, int d) {
  require(d == 1 || d == 2, ErrorKind::Config, "elliptic problems are defined for d in {1, 2}");
  EllipticProblem p;
  p.name = name;
  p.d = d;
  p.volume = d == 1 ? 1.0 : kPi;
  p.source.d = p.solution.d = d;
  p.source.name = name + "_source";
  p.solution.name = name;
  p.solution.regularity = p.source.regularity = std::numeric_limits<double>::infinity();
  if (name == "zero") {
    p.source = make_target("zero", d, Domain::Ball);
    p.solution = make_target("zero", d, Domain::Ball);
    return p;
  }
  require(name == "cos_pi", ErrorKind::Config, "unknown elliptic problem '" + name + "'");
  if (d == 1) {
    p.solution.value = [](std::span<const double> x) { return std::cos(kPi * x[0]); };
    p.solution.gradient = [](std::span<const double> x, std::span<double> g) {
      g[0] = -kPi * std::sin(kPi * x[0]);
    };
    p.source.value = [](std::span<const double> x) { return (kPi * kPi + 1.0) * std::cos(kPi * x[0]); };
    return p;
  }
  p.solution.value = [](std::span<const double> x) {
    return std::cos(kPi * (x[0] * x[0] + x[1] * x[1]));
  };
  p.solution.gradient = [](std::span<const double> x, std::span<double> g) {
    const double s = -2.0 * kPi * std::sin(kPi * (x[0] * x[0] + x[1] * x[1]));
    g[0] = s * x[0];
    g[1] = s * x[1];
  };
  p.source.value = [](std::span<const double> x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    return 4.0 * kPi * std::sin(kPi * r2) + (4.0 * kPi * kPi * r2 + 1.0) * std::cos(kPi * r2);
  };
  return p;
}

PointMatrix sample_domain(const EllipticProblem& problem, Eigen::Index m, std::uint64_t seed) {
  require(m >= 0, ErrorKind::Contract, "sample_domain: m must be >= 0");
  CounterRng rng(seed, 0x706465);
  PointMatrix x(m, problem.d);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (problem.d == 1) {
      x(i, 0) = rng.uniform();
      continue;
    }
    double u;
    double v;
    do {
      u = rng.uniform(-1.0, 1.0);
      v = rng.uniform(-1.0, 1.0);
    } while (u * u + v * v > 1.0);
    x(i, 0) = u;
    x(i, 1) = v;
  }
  return x;
}

SampleGrid domain_grid(const EllipticProblem& problem, Eigen::Index min_points) {
  if (problem.d == 2) return ball_grid(2, 1.0, min_points, GridRole::Eval);
  const Eigen::Index panels = std::max<Eigen::Index>(1, (min_points + 3) / 4);
  const auto gl = gauss_legendre<double>(4);
  SampleGrid grid;
  grid.domain = Domain::Ball;
  grid.d = 1;
  grid.points.resize(4 * panels, 1);
  grid.weights.resize(4 * panels);
  const double width = 1.0 / double(panels);
  for (Eigen::Index p = 0; p < panels; ++p) {
    for (int q = 0; q < 4; ++q) {
      grid.points(4 * p + q, 0) = width * (double(p) + 0.5 * (1.0 + gl.nodes[q]));
      grid.weights[4 * p + q] = 0.5 * width * gl.weights[q];
    }
  }
  return grid;
}

double psi(const TargetFunction& g, const EllipticProblem& problem, std::span<const double> x) {
  require(g.has_gradient(), ErrorKind::Contract, "energy: function has no gradient");
  double grad[2] = {0.0, 0.0};
  g.gradient(x, {grad, static_cast<std::size_t>(problem.d)});
  const double v = g(x);
  double g2 = 0.0;
  for (int i = 0; i < problem.d; ++i) g2 += grad[i] * grad[i];
  return 0.5 * g2 + 0.5 * v * v - problem.source(x) * v;
}

double energy(const TargetFunction& g, const EllipticProblem& problem, const SampleGrid& grid) {
  const auto dim = static_cast<std::size_t>(problem.d);
  double out = 0.0;
  for (Eigen::Index i = 0; i < grid.points.rows(); ++i) {
    out += grid.weights[i] * psi(g, problem, {grid.points.data() + i * dim, dim});
  }
  return out;
}

double empirical_risk(const TargetFunction& g, const EllipticProblem& problem, const PointMatrix& samples) {
  require(samples.rows() > 0, ErrorKind::Contract, "empirical_risk: no samples");
  const auto dim = static_cast<std::size_t>(problem.d);
  double out = 0.0;
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    out += psi(g, problem, {samples.data() + i * dim, dim});
  }
  return problem.volume * out / double(samples.rows());
}

TargetFunction model_function(const FiniteNeuronModel& model) {
  auto shared = std::make_shared<const FiniteNeuronModel>(model);
  TargetFunction f;
  f.name = "model";
  f.d = model.dim();
  f.domain = model.domain();
  f.value = [shared](std::span<const double> x) { return (*shared)(x); };
  if (model.domain() == Domain::Ball && model.power() >= 1) {
    f.gradient = [shared](std::span<const double> x, std::span<double> g) { shared->gradient(x, g); };
  }
  return f;
}

ErmResult erm_fit(const EllipticProblem& problem, const PointSet& directions, int k,
                  const PointMatrix& samples, double cap, const SampleGrid& grid, std::uint64_t seed) {
  require(k >= 1, ErrorKind::Config, "erm_fit: k must be >= 1");
  require(directions.dim() == problem.d, ErrorKind::Contract, "erm_fit: dimension mismatch");
  require(samples.rows() > 0 && samples.cols() == problem.d, ErrorKind::Contract,
          "erm_fit: samples must be a nonempty m x d matrix");
  const int d = problem.d;
  const Eigen::Index n = directions.size();
  const Eigen::Index m = samples.rows();
  const PointMatrix& th = directions.points();

  // Rows: phi and its d partial derivatives at each sample, scaled so that
  // A = F^T F and b = F0^T h.
  Eigen::MatrixXd values(m, n);
  Eigen::MatrixXd grads(m * d, n);
  Eigen::VectorXd h(m);
  const auto dim = static_cast<std::size_t>(d);
  for (Eigen::Index i = 0; i < m; ++i) {
    std::span<const double> x{samples.data() + i * d, dim};
    h[i] = problem.source(x);
    for (Eigen::Index j = 0; j < n; ++j) {
      double s = th(j, d);
      for (int c = 0; c < d; ++c) s += th(j, c) * x[c];
      values(i, j) = sigma_k(k, s);
      const double ds = sigma_k_prime(k, s);
      for (int c = 0; c < d; ++c) grads(i * d + c, j) = ds * th(j, c);
    }
  }
  const double scale = problem.volume / double(m);
  Eigen::MatrixXd a = scale * (values.transpose() * values + grads.transpose() * grads);
  const Eigen::VectorXd b = scale * (values.transpose() * h);

  double ridge = 0.0;
  if (Eigen::LLT<Eigen::MatrixXd>(a).info() != Eigen::Success) ridge = kRidgeFloor;
  CappedSolve sol = solve_capped(a, b, ridge, cap, 0.0);

  ErmResult out{FiniteNeuronModel(k, Domain::Ball, directions, sol.a, cap)};
  out.samples = m;
  out.seed = seed;
  out.ridge = sol.ridge;
  out.cap_active = sol.cap_active;
  const double bn = b.norm();
  out.certificate = bn > 0 ? ((a + sol.ridge * Eigen::MatrixXd::Identity(n, n)) * sol.a - b).norm() / bn : 0.0;
  out.empirical_risk = 0.5 * sol.a.dot(a * sol.a) - b.dot(sol.a);
  const TargetFunction g = model_function(out.model);
  out.population_energy = energy(g, problem, grid);
  out.exact_energy = energy(problem.solution, problem, grid);
  out.excess_risk = out.population_energy - out.exact_energy;
  double err = 0.0;
  std::vector<double> gm(dim);
  std::vector<double> gf(dim);
  for (Eigen::Index i = 0; i < grid.points.rows(); ++i) {
    std::span<const double> x{grid.points.data() + i * d, dim};
    const double e = g(x) - problem.solution(x);
    g.gradient(x, gm);
    problem.solution.gradient(x, gf);
    double s = e * e;
    for (std::size_t c = 0; c < dim; ++c) s += (gm[c] - gf[c]) * (gm[c] - gf[c]);
    err += grid.weights[i] * s;
  }
  out.h1_error = std::sqrt(err);
  return out;
}

Eigen::Index erm_width(Eigen::Index m, int d, int k) {
  require(m >= 1 && d >= 1 && k >= 1, ErrorKind::Contract, "erm_width: need m, d, k >= 1");
  // Smallest n with n^q >= m^p, q = 2 (d + 2k - 1), p = d, in exact integers
  // where possible.
  const int p = d;
  const int q = 2 * (d + 2 * k - 1);
  auto pow_ld = [](long double base, int e) {
    long double r = 1.0L;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
  };
  const long double rhs = pow_ld(static_cast<long double>(m), p);
  Eigen::Index n = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(
                                                 std::floor(std::pow(double(m), double(p) / q))) - 1);
  while (pow_ld(static_cast<long double>(n), q) < rhs) ++n;
  return n;
}

}  // namespace linrelu
