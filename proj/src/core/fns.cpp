// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/fns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "core/error.hpp"
#include "core/gauss_jacobi.hpp"
#include "core/rng.hpp"

namespace linrelu {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t input_dim(Domain domain, int d) { return domain == Domain::Ball ? d : d + 1; }

void append_polar(SampleGrid& grid, double radius, int n_r, int n_phi, double phase) {
  const auto gl = gauss_legendre<double>(n_r);
  const Eigen::Index start = grid.points.rows();
  grid.points.conservativeResize(start + Eigen::Index(n_r) * n_phi, 2);
  grid.weights.conservativeResize(start + Eigen::Index(n_r) * n_phi);
  Eigen::Index row = start;
  for (int i = 0; i < n_r; ++i) {
    const double r = 0.5 * radius * (1.0 + gl.nodes[i]);
    const double w = 0.5 * radius * gl.weights[i] * r * (2 * kPi / n_phi);
    for (int j = 0; j < n_phi; ++j) {
      const double a = 2 * kPi * (j + phase) / n_phi;
      grid.points(row, 0) = r * std::cos(a);
      grid.points(row, 1) = r * std::sin(a);
      grid.weights[row] = w;
      ++row;
    }
  }
}

}  // namespace

FiniteNeuronModel::FiniteNeuronModel(int k, Domain domain, PointSet directions,
                                     Eigen::VectorXd coefficients, double norm_cap)
    : k_(k), domain_(domain), directions_(std::move(directions)), a_(std::move(coefficients)), cap_(norm_cap) {
  require(k_ >= 0, ErrorKind::Contract, "model: k must be >= 0");
  require(a_.size() == directions_.size(), ErrorKind::Contract,
          "model: coefficient count does not match direction count");
  require(cap_ >= 0, ErrorKind::Contract, "model: norm cap must be >= 0");
  if (cap_ > 0) {
    const double norm = std::sqrt(double(a_.size())) * a_.norm();
    require(norm <= cap_ * (1.0 + 1e-9), ErrorKind::Contract,
            "model: sqrt(n) |a| = " + std::to_string(norm) + " exceeds cap " + std::to_string(cap_));
  }
}

double FiniteNeuronModel::inner(Eigen::Index j, std::span<const double> x) const {
  const double* th = directions_.points().data() + j * directions_.points().cols();
  const int d = directions_.dim();
  double s = domain_ == Domain::Ball ? th[d] : 0.0;
  const int count = domain_ == Domain::Ball ? d : d + 1;
  for (int i = 0; i < count; ++i) s += th[i] * x[i];
  return s;
}

double FiniteNeuronModel::operator()(std::span<const double> x) const {
  require(x.size() == input_dim(domain_, dim()), ErrorKind::Contract, "model: input has wrong dimension");
  double out = 0.0;
  for (Eigen::Index j = 0; j < size(); ++j) {
    if (a_[j] != 0.0) out += a_[j] * sigma_k(k_, inner(j, x));
  }
  return out;
}

void FiniteNeuronModel::gradient(std::span<const double> x, std::span<double> out) const {
  require(domain_ == Domain::Ball, ErrorKind::Unsupported, "model gradient: ball models only");
  require(x.size() == static_cast<std::size_t>(dim()) && out.size() == x.size(), ErrorKind::Contract,
          "model gradient: wrong dimension");
  std::fill(out.begin(), out.end(), 0.0);
  for (Eigen::Index j = 0; j < size(); ++j) {
    const double s = a_[j] * sigma_k_prime(k_, inner(j, x));
    if (s == 0.0) continue;
    for (int i = 0; i < dim(); ++i) out[i] += s * directions_.points()(j, i);
  }
}

SampleGrid ball_grid(int d, double radius, Eigen::Index min_points, GridRole role) {
  require(radius > 0, ErrorKind::Config, "ball_grid: radius must be positive");
  require(min_points >= 1, ErrorKind::Config, "ball_grid: need at least one point");
  SampleGrid grid;
  grid.domain = Domain::Ball;
  grid.d = d;
  if (d == 1) {
    if (role == GridRole::Fit) {
      grid.points.resize(min_points, 1);
      grid.weights = Eigen::VectorXd::Constant(min_points, 2 * radius / double(min_points));
      for (Eigen::Index i = 0; i < min_points; ++i) {
        grid.points(i, 0) = -radius + 2 * radius * (double(i) + 0.5) / double(min_points);
      }
    } else {
      const Eigen::Index panels = std::max<Eigen::Index>(1, (min_points + 1) / 2);
      const auto gl = gauss_legendre<double>(4);
      const double width = 2 * radius / double(panels);
      grid.points.resize(4 * panels, 1);
      grid.weights.resize(4 * panels);
      for (Eigen::Index p = 0; p < panels; ++p) {
        for (int q = 0; q < 4; ++q) {
          grid.points(4 * p + q, 0) = -radius + width * (double(p) + 0.5 * (1.0 + gl.nodes[q]));
          grid.weights[4 * p + q] = 0.5 * width * gl.weights[q];
        }
      }
    }
    return grid;
  }
  if (d == 2) {
    int n_r = static_cast<int>(std::ceil(std::sqrt(double(min_points) / 4.0)));
    double phase = 0.0;
    if (role == GridRole::Eval) {
      n_r = static_cast<int>(std::ceil(1.5 * n_r)) + 1;
      phase = 0.5;
    }
    grid.points.resize(0, 2);
    grid.weights.resize(0);
    append_polar(grid, radius, n_r, 4 * n_r, phase);
    return grid;
  }
  fail(ErrorKind::Unsupported, "ball grids are implemented for d in {1, 2}");
}

SampleGrid sphere_grid(int d, int exact_degree) {
  ReferenceGrid ref = reference_grid(d, exact_degree);
  SampleGrid grid;
  grid.domain = Domain::Sphere;
  grid.d = d;
  grid.points = std::move(ref.nodes);
  grid.weights = std::move(ref.weights);
  return grid;
}

Eigen::MatrixXd feature_matrix(const PointSet& directions, int k, Domain domain, const PointMatrix& x) {
  const int d = directions.dim();
  require(x.cols() == static_cast<Eigen::Index>(input_dim(domain, d)), ErrorKind::Contract,
          "feature_matrix: inputs have wrong dimension");
  const PointMatrix& th = directions.points();
  Eigen::MatrixXd phi(x.rows(), directions.size());
  const int count = static_cast<int>(x.cols());
  for (Eigen::Index j = 0; j < directions.size(); ++j) {
    const double bias = domain == Domain::Ball ? th(j, d) : 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      double s = bias;
      for (int c = 0; c < count; ++c) s += th(j, c) * x(i, c);
      phi(i, j) = sigma_k(k, s);
    }
  }
  return phi;
}

CappedSolve solve_capped(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double ridge,
                         double cap, double pinv_rel_tol) {
  require(a.rows() == a.cols() && a.rows() == b.size(), ErrorKind::Contract,
          "solve_capped: dimension mismatch");
  require(ridge >= 0 && cap >= 0, ErrorKind::Config, "solve_capped: ridge and cap must be >= 0");
  const Eigen::Index n = a.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  require(eig.info() == Eigen::Success, ErrorKind::Numerical, "solve_capped: eigensolver failed");
  const Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
  const Eigen::VectorXd bt = eig.eigenvectors().transpose() * b;
  const double lam_max = std::max(lam.maxCoeff(), 0.0);
  const double cutoff = pinv_rel_tol * lam_max;

  auto coords = [&](double r) {
    Eigen::VectorXd c(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double denom = lam[i] + r;
      c[i] = (r == 0.0 && lam[i] <= cutoff) || denom <= 0.0 ? 0.0 : bt[i] / denom;
    }
    return c;
  };

  CappedSolve out;
  out.ridge = ridge;
  Eigen::VectorXd c = coords(ridge);
  const double target = cap / std::sqrt(double(n));
  if (cap > 0 && c.norm() > target) {
    out.cap_active = true;
    double lo = std::max(ridge, 1e-14 * lam_max);
    double hi = std::max({ridge, lam_max, 1e-300});
    while (coords(hi).norm() > target) hi *= 2.0;
    c = coords(hi);
    out.ridge = hi;
    for (int it = 0; it < 60; ++it) {
      if ((target - c.norm()) <= 1e-6 * target) break;
      const double mid = std::sqrt(lo * hi);
      const Eigen::VectorXd cm = coords(mid);
      ++out.bisection_steps;
      if (cm.norm() > target) {
        lo = mid;
      } else {
        hi = mid;
        c = cm;
        out.ridge = mid;
      }
    }
  }
  out.a = eig.eigenvectors() * c;
  return out;
}

LsFit least_squares_fit(const TargetFunction& f, const PointSet& directions, int k,
                        const SampleGrid& grid, double ridge, double norm_cap) {
  require(f.d == directions.dim() && grid.d == directions.dim(), ErrorKind::Contract,
          "least_squares_fit: dimension mismatch");
  require(f.domain == grid.domain, ErrorKind::Contract, "least_squares_fit: target and grid domains differ");
  require(grid.points.rows() >= directions.size(), ErrorKind::Contract,
          "least_squares_fit: grid has fewer points than neurons");
  Eigen::MatrixXd phi = feature_matrix(directions, k, grid.domain, grid.points);
  Eigen::VectorXd y(grid.points.rows());
  const auto dim = static_cast<std::size_t>(grid.points.cols());
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = f({grid.points.data() + i * dim, dim});
  const Eigen::VectorXd sw = grid.weights.cwiseSqrt();
  phi = sw.asDiagonal() * phi;
  y = y.cwiseProduct(sw);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(phi.cols(), phi.cols());
  gram.selfadjointView<Eigen::Lower>().rankUpdate(phi.transpose());
  gram = gram.selfadjointView<Eigen::Lower>();
  const Eigen::VectorXd rhs = phi.transpose() * y;
  CappedSolve sol = solve_capped(gram, rhs, ridge, norm_cap);
  return LsFit{FiniteNeuronModel(k, grid.domain, directions, std::move(sol.a), norm_cap), sol.ridge,
               sol.cap_active};
}

FiniteNeuronModel constructive_fit(const TargetFunction& g, const QuadratureRule& rule,
                                   const ActivationSpectrum& spectrum, const ReferenceGrid& grid) {
  const int d = rule.points.dim();
  const int k = spectrum.power();
  require(g.domain == Domain::Sphere, ErrorKind::Contract, "constructive_fit: target must live on the sphere");
  require(g.d == d && spectrum.dim() == d && grid.d == d, ErrorKind::Contract,
          "constructive_fit: dimension mismatch");
  const int required = (k + 1) % 2 == 0 ? 1 : -1;
  require(g.parity.has_value() && (*g.parity == 0 || *g.parity == required), ErrorKind::Contract,
          "constructive_fit: target parity must be (-1)^(k+1)");
  const int j_max = rule.projection_degree;
  require(j_max >= k + 1, ErrorKind::Precision,
          "constructive_fit: rule degree J = " + std::to_string(j_max) + " is below k + 1");
  require(spectrum.max_degree() >= j_max, ErrorKind::Contract, "constructive_fit: spectrum too short");

  std::vector<double> samples(static_cast<std::size_t>(grid.nodes.rows()));
  const auto dim = static_cast<std::size_t>(d + 1);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = g({grid.nodes.data() + i * dim, dim});
  }
  const HarmonicProjection proj = project_all(grid, samples, j_max);

  // Harmonic coefficients divided by c(m), zero off the support.
  const Eigen::Index count = harmonic_count_upto(d, j_max);
  Eigen::VectorXd scaled = Eigen::VectorXd::Zero(count);
  for (int m = 0; m <= j_max; ++m) {
    if (!spectrum.in_support(m)) continue;
    const Eigen::Index first = harmonic_count_upto(d, m - 1);
    scaled.segment(first, proj.coefficients(m).size()) = proj.coefficients(m) / spectrum.coefficient(m);
  }
  Eigen::VectorXd a(rule.points.size());
  std::vector<double> y(static_cast<std::size_t>(count));
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    harmonics_upto(d, j_max, rule.points.row(j), y);
    a[j] = rule.weights[j] * Eigen::Map<const Eigen::VectorXd>(y.data(), count).dot(scaled);
  }
  return FiniteNeuronModel(k, Domain::Sphere, rule.points, std::move(a));
}

Eigen::VectorXd model_harmonic_coefficients(const FiniteNeuronModel& model,
                                            const ActivationSpectrum& spectrum, int degree) {
  require(model.domain() == Domain::Sphere, ErrorKind::Contract,
          "model_harmonic_coefficients: sphere models only");
  require(spectrum.max_degree() >= degree, ErrorKind::Contract,
          "model_harmonic_coefficients: spectrum too short");
  const int d = model.dim();
  const Eigen::Index count = harmonic_count_upto(d, degree);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(count);
  std::vector<double> y(static_cast<std::size_t>(count));
  for (Eigen::Index j = 0; j < model.size(); ++j) {
    harmonics_upto(d, degree, model.directions().row(j), y);
    acc += model.coefficients()[j] * Eigen::Map<const Eigen::VectorXd>(y.data(), count);
  }
  for (int m = 0; m <= degree; ++m) {
    const Eigen::Index first = harmonic_count_upto(d, m - 1);
    const Eigen::Index len = harmonic_count_upto(d, m) - first;
    acc.segment(first, len) *= spectrum.coefficient(m);
  }
  return acc;
}

double truncation_mismatch(const FiniteNeuronModel& model, const ActivationSpectrum& spectrum,
                           const HarmonicProjection& projection, int degree) {
  require(projection.max_degree() >= degree, ErrorKind::Contract, "truncation_mismatch: projection too short");
  const Eigen::VectorXd fm = model_harmonic_coefficients(model, spectrum, degree);
  double worst = 0.0;
  for (int m = 0; m <= degree; ++m) {
    if (!spectrum.in_support(m)) continue;
    const Eigen::Index first = harmonic_count_upto(model.dim(), m - 1);
    const auto& gm = projection.coefficients(m);
    worst = std::max(worst, (fm.segment(first, gm.size()) - gm).cwiseAbs().maxCoeff());
  }
  return worst;
}

ErrorNorms error_norms(const FiniteNeuronModel& model, const TargetFunction& f,
                       const SampleGrid& grid, int s) {
  require(s == 0 || s == 1, ErrorKind::Contract, "error_norms: s must be 0 or 1");
  require(grid.domain == model.domain() && f.domain == model.domain(), ErrorKind::Contract,
          "error_norms: domain mismatch");
  if (s == 1) {
    require(model.domain() == Domain::Ball, ErrorKind::Contract, "error_norms: H^1 needs a ball model");
    require(model.power() >= 1, ErrorKind::Unsupported, "error_norms: H^1 needs k >= 1");
    require(f.has_gradient(), ErrorKind::Contract, "error_norms: target has no gradient");
  }
  const auto dim = static_cast<std::size_t>(grid.points.cols());
  std::vector<double> gm(dim);
  std::vector<double> gf(dim);
  double l2 = 0.0;
  double semi = 0.0;
  for (Eigen::Index i = 0; i < grid.points.rows(); ++i) {
    std::span<const double> x{grid.points.data() + i * dim, dim};
    const double e = model(x) - f(x);
    l2 += grid.weights[i] * e * e;
    if (s == 1) {
      model.gradient(x, gm);
      f.gradient(x, gf);
      for (std::size_t c = 0; c < dim; ++c) semi += grid.weights[i] * (gm[c] - gf[c]) * (gm[c] - gf[c]);
    }
  }
  ErrorNorms out;
  out.l2 = std::sqrt(l2);
  if (s == 1) {
    out.h1_semi = std::sqrt(semi);
    out.h1 = std::sqrt(l2 + semi);
  }
  return out;
}

CoefStat coef_stat(const FiniteNeuronModel& model) {
  const auto& a = model.coefficients();
  const double l2 = a.norm();
  return {l2, std::sqrt(double(a.size())) * l2, a.cwiseAbs().sum()};
}

Eigen::Index CellDensity::cell_of(std::span<const double> eta) const {
  const PointMatrix& pts = directions.points();
  Eigen::Index best = 0;
  double best_dot = -2.0;
  for (Eigen::Index j = 0; j < pts.rows(); ++j) {
    double dot = 0.0;
    for (Eigen::Index c = 0; c < pts.cols(); ++c) dot += pts(j, c) * eta[c];
    if (dot > best_dot) {
      best_dot = dot;
      best = j;
    }
  }
  return best;
}

CellDensity density_from_model(const FiniteNeuronModel& model, std::int64_t mc_samples,
                               std::uint64_t seed) {
  require(model.domain() == Domain::Sphere, ErrorKind::Contract, "density_from_model: sphere models only");
  const PointSet& ps = model.directions();
  const int d = ps.dim();
  const Eigen::Index n = ps.size();
  CellDensity out{ps, Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), d == 1};
  if (d == 1) {
    std::vector<std::pair<double, Eigen::Index>> angles;
    for (Eigen::Index j = 0; j < n; ++j) {
      double a = std::atan2(ps.points()(j, 1), ps.points()(j, 0));
      if (a < 0) a += 2 * kPi;
      angles.emplace_back(a, j);
    }
    std::sort(angles.begin(), angles.end());
    for (std::size_t i = 0; i < angles.size(); ++i) {
      const double prev = i == 0 ? angles.back().first - 2 * kPi : angles[i - 1].first;
      const double next = i + 1 == angles.size() ? angles.front().first + 2 * kPi : angles[i + 1].first;
      out.cell_measure[angles[i].second] = n == 1 ? 1.0 : 0.5 * (next - prev) / (2 * kPi);
    }
  } else {
    require(mc_samples >= 1, ErrorKind::Config, "density_from_model: need at least one sample");
    CounterRng rng(seed, 0x63656c6c);
    std::vector<double> eta(static_cast<std::size_t>(d + 1));
    for (std::int64_t s = 0; s < mc_samples; ++s) {
      double norm2 = 0.0;
      for (auto& v : eta) {
        v = rng.normal();
        norm2 += v * v;
      }
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& v : eta) v *= inv;
      out.cell_measure[out.cell_of(eta)] += 1.0;
    }
    out.cell_measure /= double(mc_samples);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    out.value[j] = out.cell_measure[j] > 0 ? model.coefficients()[j] / out.cell_measure[j] : 0.0;
  }
  return out;
}

}  // namespace linrelu
