// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "core/fns.hpp"
#include "core/targets.hpp"

namespace linrelu {

// -Laplace(f) + f = h on Omega with homogeneous Neumann data. Omega is (0, 1)
// for d = 1 and the unit disk for d = 2. The exact solution is manufactured.
struct EllipticProblem {
  std::string name;
  int d = 1;
  double volume = 1.0;  // |Omega|
  TargetFunction source;
  TargetFunction solution;
};

// "cos_pi": f = cos(pi x) on (0, 1), or f = cos(pi r^2) on the disk.
// "zero":   f = h = 0.
EllipticProblem make_problem(const std::string& name, int d);

// Uniform samples on Omega, one per row; deterministic in seed.
PointMatrix sample_domain(const EllipticProblem& problem, Eigen::Index m, std::uint64_t seed);

// Quadrature on Omega: composite 4-point Gauss on (0, 1), polar grid on the disk.
SampleGrid domain_grid(const EllipticProblem& problem, Eigen::Index min_points = 16384);

// Psi(g) = |grad g|^2 / 2 + g^2 / 2 - h g.
double psi(const TargetFunction& g, const EllipticProblem& problem, std::span<const double> x);
double energy(const TargetFunction& g, const EllipticProblem& problem, const SampleGrid& grid);
// |Omega| / m * sum_i Psi(g)(x_i). ErrorKind::Contract for m = 0.
double empirical_risk(const TargetFunction& g, const EllipticProblem& problem, const PointMatrix& samples);

// Wraps a ball model as a function with gradient.
TargetFunction model_function(const FiniteNeuronModel& model);

struct ErmResult {
  FiniteNeuronModel model;
  double empirical_risk = 0.0;
  double population_energy = 0.0;
  double exact_energy = 0.0;
  double excess_risk = 0.0;
  double h1_error = 0.0;
  Eigen::Index samples = 0;
  std::uint64_t seed = 0;
  double ridge = 0.0;
  bool cap_active = false;
  // |(A + ridge I) a - b| / |b|; zero when b = 0.
  double certificate = 0.0;
};

// Minimizes a^T A a / 2 - b^T a with A = |Omega|/m sum (grad phi grad phi^T +
// phi phi^T), b = |Omega|/m sum h phi, subject to sqrt(n) |a| <= cap
// (cap = 0: unconstrained). A ridge of 1e-12 is added when A is not positive
// definite. Energies are evaluated on grid.
ErmResult erm_fit(const EllipticProblem& problem, const PointSet& directions, int k,
                  const PointMatrix& samples, double cap, const SampleGrid& grid,
                  std::uint64_t seed = 0);

// ceil(m^{d / (2 (d + 2k - 1))}) computed without floating-point overshoot.
Eigen::Index erm_width(Eigen::Index m, int d, int k);

}  // namespace linrelu
