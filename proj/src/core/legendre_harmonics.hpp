// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "core/sphere.hpp"

namespace linrelu {

// Surface area of S^d: 2 pi^{(d+1)/2} / Gamma((d+1)/2).
double sphere_area(int d);

// Dimension of the degree-m harmonic space on S^d,
// C(m+d, d) - C(m+d-2, d), in exact integer arithmetic.
std::uint64_t harmonic_dim(int d, int m);

// Zonal polynomials p_m on [-1, 1] normalized so that p_m(1) = N(m); they are
// the reproducing kernels sum_l Y_{m,l}(u) Y_{m,l}(v) = p_m(u . v) for the
// normalized surface measure.
class LegendreBasis {
 public:
  LegendreBasis(int d, int m_max);

  int dim() const { return d_; }
  int max_degree() const { return m_max_; }
  double norm_at_one(int m) const { return n_[m]; }

  // Throws ErrorKind::Range for m > max_degree. t is clamped to [-1, 1].
  double eval(int m, double t) const;
  // p_0(t), ..., p_{m_max}(t) into out (size max_degree() + 1).
  void eval_all(double t, std::span<double> out) const;

 private:
  int d_;
  int m_max_;
  double lambda_;
  std::vector<double> n_;
};

// Real orthonormal harmonic bases for the normalized measure on S^1 and S^2.
// S^1: Y_0 = 1; Y_{m,1} = sqrt2 cos(m phi), Y_{m,2} = sqrt2 sin(m phi).
// S^2: Y_{m,l} with order mu = l - 1 - m, cos for mu > 0, sin for mu < 0.
Eigen::Index harmonic_count_upto(int d, int degree);
Eigen::Index harmonic_index(int d, int m, int l);
double harmonic_eval(int d, int m, int l, std::span<const double> eta);
// All Y_{m,l} with m <= degree, in harmonic_index order.
void harmonics_upto(int d, int degree, std::span<const double> eta, std::span<double> out);

// Product rule for the normalized measure, exact for polynomials of degree
// <= exact_degree.
struct ReferenceGrid {
  int d = 0;
  int exact_degree = 0;
  PointMatrix nodes;
  Eigen::VectorXd weights;
};

ReferenceGrid reference_grid(int d, int exact_degree);

// Harmonic coefficients of sampled data, ghat(m, l) = sum_i w_i g_i Y_{m,l}(x_i).
class HarmonicProjection {
 public:
  HarmonicProjection(int d, int m_max, std::vector<Eigen::VectorXd> coefficients)
      : d_(d), m_max_(m_max), coefficients_(std::move(coefficients)) {}

  int dim() const { return d_; }
  int max_degree() const { return m_max_; }
  const Eigen::VectorXd& coefficients(int m) const { return coefficients_.at(m); }
  // (Pi_m g)(eta).
  double eval(int m, std::span<const double> eta) const;

 private:
  int d_;
  int m_max_;
  std::vector<Eigen::VectorXd> coefficients_;
};

// Coefficients for every degree 0..m_max. Throws ErrorKind::Precision when
// the grid cannot resolve products of degree 2 m_max.
HarmonicProjection project_all(const ReferenceGrid& grid, std::span<const double> samples, int m_max);

}  // namespace linrelu
