// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "core/activation.hpp"
#include "core/legendre_harmonics.hpp"
#include "core/quadrature.hpp"
#include "core/sphere.hpp"
#include "core/targets.hpp"

namespace linrelu {

// f(x) = sum_j a_j sigma_k(theta_j . x~) with x~ = (x, 1) on the ball, or
// f(eta) = sum_j a_j sigma_k(theta_j . eta) on the sphere. norm_cap = 0 means
// uncapped; otherwise sqrt(n) |a|_2 <= norm_cap.
class FiniteNeuronModel {
 public:
  FiniteNeuronModel(int k, Domain domain, PointSet directions, Eigen::VectorXd coefficients,
                    double norm_cap = 0.0);

  int dim() const { return directions_.dim(); }
  int power() const { return k_; }
  Domain domain() const { return domain_; }
  Eigen::Index size() const { return directions_.size(); }
  const PointSet& directions() const { return directions_; }
  const Eigen::VectorXd& coefficients() const { return a_; }
  double norm_cap() const { return cap_; }

  double operator()(std::span<const double> x) const;
  // Gradient in R^d; ball models with k >= 1 only.
  void gradient(std::span<const double> x, std::span<double> out) const;

 private:
  double inner(Eigen::Index j, std::span<const double> x) const;

  int k_;
  Domain domain_;
  PointSet directions_;
  Eigen::VectorXd a_;
  double cap_;
};

// Quadrature nodes with weights for the Lebesgue measure on a ball of the
// given radius, or for the normalized measure on S^d.
struct SampleGrid {
  Domain domain = Domain::Ball;
  int d = 0;
  PointMatrix points;
  Eigen::VectorXd weights;
};

enum class GridRole { Fit, Eval };

// d = 1: Fit uses min_points midpoints, Eval a composite 4-point Gauss rule
// with at least twice as many nodes. d = 2: polar product grids, Gauss in the
// radius times equispaced angles; Eval is finer and angle-shifted.
SampleGrid ball_grid(int d, double radius, Eigen::Index min_points, GridRole role = GridRole::Fit);
SampleGrid sphere_grid(int d, int exact_degree);

// sigma_k(theta_j . x~) at every grid point (rows) and direction (columns).
Eigen::MatrixXd feature_matrix(const PointSet& directions, int k, Domain domain,
                               const PointMatrix& x);

struct CappedSolve {
  Eigen::VectorXd a;
  double ridge = 0.0;
  bool cap_active = false;
  int bisection_steps = 0;
};

// Minimizes a^T A a / 2 - b^T a + ridge |a|^2 / 2 for symmetric positive
// semidefinite A. With ridge = 0 the minimum-norm solution is returned
// (eigenvalues below pinv_rel_tol * max dropped). If cap > 0 and
// sqrt(n) |a| > cap, the ridge is raised by log-space bisection until the cap
// binds to 1e-6 relative, keeping the feasible side.
CappedSolve solve_capped(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double ridge,
                         double cap, double pinv_rel_tol = 1e-13);

struct LsFit {
  FiniteNeuronModel model;
  double ridge = 0.0;
  bool cap_active = false;
};

// Weighted least squares of f on the grid over span{sigma_k(theta_j . x~)}.
LsFit least_squares_fit(const TargetFunction& f, const PointSet& directions, int k,
                        const SampleGrid& grid, double ridge = 0.0, double norm_cap = 0.0);

// Coefficients a_j = tau_j sum_{m in E, m <= J} c(m)^{-1} (Pi_m g)(theta_j),
// J = rule.projection_degree. The model's harmonic coefficients match those of
// g for every m <= J.
FiniteNeuronModel constructive_fit(const TargetFunction& g, const QuadratureRule& rule,
                                   const ActivationSpectrum& spectrum, const ReferenceGrid& grid);

// Harmonic coefficients of a sphere model, c(m) sum_j a_j Y_{m,l}(theta_j),
// for m <= degree, in harmonic_index order.
Eigen::VectorXd model_harmonic_coefficients(const FiniteNeuronModel& model,
                                            const ActivationSpectrum& spectrum, int degree);

// Max over m <= degree, m in E, of |model coefficient - projection coefficient|.
double truncation_mismatch(const FiniteNeuronModel& model, const ActivationSpectrum& spectrum,
                           const HarmonicProjection& projection, int degree);

struct ErrorNorms {
  double l2 = 0.0;
  double h1 = -1.0;  // full H^1 norm of the error; negative when not computed
  double h1_semi = -1.0;
};

// s = 0: L^2 only. s = 1: also the H^1 norm (ball models, k >= 1, f with gradient).
ErrorNorms error_norms(const FiniteNeuronModel& model, const TargetFunction& f,
                       const SampleGrid& grid, int s);

struct CoefStat {
  double l2 = 0.0;
  double sqrtn_l2 = 0.0;
  double l1 = 0.0;
};

CoefStat coef_stat(const FiniteNeuronModel& model);

// Piecewise-constant psi = sum_j a_j / |A_j| 1_{A_j} on the nearest-neighbour
// cells A_j, |A_j| in the normalized measure.
struct CellDensity {
  PointSet directions;
  Eigen::VectorXd cell_measure;
  Eigen::VectorXd value;
  bool exact = false;  // true for d = 1 (arc lengths)

  Eigen::Index cell_of(std::span<const double> eta) const;
  double operator()(std::span<const double> eta) const { return value[cell_of(eta)]; }
};

// d = 1 uses exact arc lengths; otherwise Monte Carlo with mc_samples draws.
CellDensity density_from_model(const FiniteNeuronModel& model, std::int64_t mc_samples = 1000000,
                               std::uint64_t seed = 0);

}  // namespace linrelu
