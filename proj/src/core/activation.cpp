// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/activation.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "core/error.hpp"
#include "core/gauss_jacobi.hpp"
#include "core/legendre_harmonics.hpp"

namespace linrelu {

namespace {

double log_sphere_area(int d) {
  const double h = 0.5 * (d + 1);
  return std::log(2.0) + h * std::log(std::numbers::pi) - std::lgamma(h);
}

// p_0..p_m at t in long double, normalized so p_j(1) = N(j).
void zonal_all(int d, int m, long double t, std::vector<long double>& out) {
  const long double lambda = 0.5L * (d - 1);
  out.assign(m + 1, 0.0L);
  out[0] = 1.0L;
  if (m == 0) return;
  long double r_prev = 1.0L;
  long double r = t;
  out[1] = static_cast<long double>(harmonic_dim(d, 1)) * t;
  for (int j = 1; j < m; ++j) {
    const long double next = ((2 * j + 2 * lambda) * t * r - j * r_prev) / (j + 2 * lambda);
    r_prev = r;
    r = next;
    out[j + 1] = static_cast<long double>(harmonic_dim(d, j + 1)) * r;
  }
}

}  // namespace

double sigma_k(int k, double t) {
  require(k >= 0, ErrorKind::Domain, "sigma_k: k must be >= 0");
  if (k == 0) return t >= 0.0 ? 1.0 : 0.0;
  if (t <= 0.0) return 0.0;
  double out = t;
  for (int i = 1; i < k; ++i) out *= t;
  return out;
}

double sigma_k_prime(int k, double t) {
  require(k >= 0, ErrorKind::Domain, "sigma_k_prime: k must be >= 0");
  if (k == 0) fail(ErrorKind::Unsupported, "sigma_k_prime: the step activation has no classical derivative");
  if (t <= 0.0) return 0.0;
  return k * sigma_k(k - 1, t);
}

double spectrum_closed_form(int d, int k, int m) {
  require(d >= 1 && k >= 0, ErrorKind::Domain, "spectrum_closed_form: need d >= 1, k >= 0");
  require(m >= k + 1 && (m - k) % 2 == 1, ErrorKind::Domain,
          "spectrum_closed_form: m must satisfy m >= k + 1 with m - k odd");
  const double log_abs = log_sphere_area(d - 1) + std::lgamma(k + 1.0) + std::lgamma(0.5 * d) -
                         log_sphere_area(d) + std::lgamma(double(m - k)) - m * std::log(2.0) -
                         std::lgamma(0.5 * (m - k + 1)) - std::lgamma(0.5 * (m + d + k + 1));
  const double sign = ((m - k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * std::exp(log_abs);
}

double spectrum_by_quadrature(int d, int k, int m) {
  require(d >= 1 && k >= 0 && m >= 0, ErrorKind::Domain, "spectrum_by_quadrature: bad arguments");
  const int n_half = 2 * m + k + 16;
  const auto rule = split_sphere_weight_rule<long double>(d, n_half);
  std::vector<long double> p;
  long double inner = 0.0L;
  long double norm2 = 0.0L;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const long double t = rule.nodes[i];
    zonal_all(d, m, t, p);
    const long double s = t > 0 ? std::pow(t, static_cast<long double>(k)) : 0.0L;
    inner += rule.weights[i] * p[m] * s;
    norm2 += rule.weights[i] * p[m] * p[m];
  }
  return static_cast<double>(inner / norm2);
}

ActivationSpectrum::ActivationSpectrum(int d, int k, int m_max)
    : d_(d), k_(k), m_max_(m_max), c_(m_max + 1, 0.0) {
  require(d >= 1, ErrorKind::Domain, "spectrum: d must be >= 1");
  require(k >= 0, ErrorKind::Domain, "spectrum: k must be >= 0");
  require(m_max >= k + 1, ErrorKind::Contract, "spectrum: m_max must be >= k + 1");
  for (int m = 0; m <= m_max; ++m) {
    if (m <= k) {
      c_[m] = spectrum_by_quadrature(d, k, m);
    } else if (in_support(m)) {
      c_[m] = spectrum_closed_form(d, k, m);
    }
  }
}

double ActivationSpectrum::coefficient(int m) const {
  require(m >= 0 && m <= m_max_, ErrorKind::Range,
          "spectrum coefficient: degree " + std::to_string(m) + " exceeds m_max");
  return c_[m];
}

double ActivationSpectrum::tail_estimate() const {
  // c(m)^2 N(m) ~ m^{-(2k+2)} on every other integer.
  int last = m_max_;
  while (last > k_ && !in_support(last)) --last;
  const double term = c_[last] * c_[last] * static_cast<double>(harmonic_dim(d_, last));
  return term * last / (2.0 * (2 * k_ + 1));
}

void ActivationSpectrum::write_csv(std::ostream& os) const {
  const auto old = os.precision(17);
  os << "m,in_E,sigma_hat\n";
  for (int m = 0; m <= m_max_; ++m) os << m << ',' << (in_support(m) ? 1 : 0) << ',' << c_[m] << '\n';
  os.precision(old);
}

double xi(int d, int k, double r, double t) {
  require(r <= 0.5 * (d + 2 * k + 1), ErrorKind::Domain, "xi: r must be <= (d + 2k + 1) / 2");
  require(t >= k + 1, ErrorKind::Domain, "xi: t must be >= k + 1");
  const double log_c = log_sphere_area(d - 1) + std::lgamma(k + 1.0) + std::lgamma(0.5 * d) -
                       log_sphere_area(d) - (k + 1) * std::log(2.0) -
                       0.5 * std::log(std::numbers::pi);
  const double log_ratio = std::lgamma(0.5 * (t - k)) - std::lgamma(0.5 * (t + d + k + 1));
  return std::exp(2.0 * log_c + 2.0 * r * std::log(t) + 2.0 * log_ratio);
}

double xi_forward_difference(int d, int k, double r, int m, int beta) {
  require(beta >= 0, ErrorKind::Domain, "xi_forward_difference: beta must be >= 0");
  double out = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= beta; ++j) {
    const double sign = (beta - j) % 2 == 0 ? 1.0 : -1.0;
    out += binom * sign * xi(d, k, r, double(m + j));
    binom = binom * (beta - j) / (j + 1);
  }
  return out;
}

double relu_kernel(const ActivationSpectrum& spec, std::span<const double> x,
                   std::span<const double> y, double tol) {
  const int d = spec.dim();
  require(x.size() == static_cast<std::size_t>(d) && y.size() == static_cast<std::size_t>(d),
          ErrorKind::Contract, "relu_kernel: points must lie in R^d");
  const double tail = spec.tail_estimate();
  require(tail <= tol, ErrorKind::Precision,
          "relu_kernel: series tail estimate " + std::to_string(tail) + " exceeds tolerance at m_max " +
              std::to_string(spec.max_degree()));
  double nx = 1.0;
  double ny = 1.0;
  double dot = 1.0;
  for (int i = 0; i < d; ++i) {
    nx += x[i] * x[i];
    ny += y[i] * y[i];
    dot += x[i] * y[i];
  }
  nx = std::sqrt(nx);
  ny = std::sqrt(ny);
  const LegendreBasis basis(d, spec.max_degree());
  std::vector<double> p(spec.max_degree() + 1);
  basis.eval_all(dot / (nx * ny), p);
  double series = 0.0;
  const auto& c = spec.coefficients();
  for (int m = spec.max_degree(); m >= 0; --m) series += c[m] * c[m] * p[m];
  const int k = spec.power();
  return sphere_area(d) * std::pow(nx * ny, k) * series;
}

double expansion_residual(int d, const std::function<double(double)>& f,
                          std::span<const double> coefficients) {
  require(!coefficients.empty(), ErrorKind::Contract, "expansion_residual: no coefficients");
  const int m_max = static_cast<int>(coefficients.size()) - 1;
  const auto rule = split_sphere_weight_rule<double>(d, m_max + 32);
  const LegendreBasis basis(d, m_max);
  std::vector<double> p(m_max + 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    basis.eval_all(rule.nodes[i], p);
    double s = 0.0;
    for (int m = m_max; m >= 0; --m) s += coefficients[m] * p[m];
    const double e = f(rule.nodes[i]) - s;
    acc += rule.weights[i] * e * e;
  }
  return std::sqrt(std::max(0.0, acc));
}

double expansion_residual(const ActivationSpectrum& spec) {
  const int k = spec.power();
  return expansion_residual(spec.dim(), [k](double t) { return sigma_k(k, t); }, spec.coefficients());
}

}  // namespace linrelu
