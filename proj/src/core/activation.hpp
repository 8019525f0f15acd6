// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace linrelu {

// max(0, t)^k; for k = 0 the step with sigma_0(0) = 1.
double sigma_k(int k, double t);
// k max(0, t)^{k-1}, zero for t <= 0. ErrorKind::Unsupported for k = 0.
double sigma_k_prime(int k, double t);

// Coefficients of sigma_k in the zonal basis: sigma_k(t) = sum_m c(m) p_m(t)
// in L^2 of [-1, 1] with weight (1 - t^2)^{(d-2)/2}.
class ActivationSpectrum {
 public:
  ActivationSpectrum(int d, int k, int m_max);

  int dim() const { return d_; }
  int power() const { return k_; }
  int max_degree() const { return m_max_; }
  // True for m <= k and for odd m - k.
  bool in_support(int m) const { return m <= k_ || (m - k_) % 2 == 1; }
  double coefficient(int m) const;
  const std::vector<double>& coefficients() const { return c_; }

  // Estimate of sum_{m > m_max} c(m)^2 N(m) from the power-law decay of the
  // last retained terms.
  double tail_estimate() const;

  // Rows "m,in_E,sigma_hat" with a header line.
  void write_csv(std::ostream& os) const;

 private:
  int d_;
  int k_;
  int m_max_;
  std::vector<double> c_;
};

// Closed form for m >= k + 1 in the support, evaluated through log-Gamma.
double spectrum_closed_form(int d, int k, int m);
// <p_m, sigma_k> / ||p_m||^2 by split Gauss-Jacobi quadrature in long double.
double spectrum_by_quadrature(int d, int k, int m);

// Smooth interpolant of c(m)^2 m^{2r}:
//   (omega_{d-1} k! Gamma(d/2) / (omega_d 2^{k+1} sqrt(pi)))^2 t^{2r}
//     (Gamma((t - k)/2) / Gamma((t + d + k + 1)/2))^2,  t >= k + 1.
double xi(int d, int k, double r, double t);
// sum_j C(beta, j) (-1)^{beta - j} xi(m + j).
double xi_forward_difference(int d, int k, double r, int m, int beta);

// omega_d |x~|^k |y~|^k sum_{m <= m_max} c(m)^2 p_m(u . v), x~ = (x, 1),
// u = x~ / |x~|. The factor omega_d makes this the integral over S^d with the
// unnormalized surface measure. Throws ErrorKind::Precision when the
// normalized tail estimate exceeds tol.
double relu_kernel(const ActivationSpectrum& spec, std::span<const double> x,
                   std::span<const double> y, double tol = 1e-6);

// sqrt of int (f - sum_{m <= m_max} c(m) p_m)^2 w_d dt by split Gauss-Jacobi.
double expansion_residual(int d, const std::function<double(double)>& f,
                          std::span<const double> coefficients);
double expansion_residual(const ActivationSpectrum& spec);

}  // namespace linrelu
