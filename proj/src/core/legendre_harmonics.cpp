// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/legendre_harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/gauss_jacobi.hpp"

namespace linrelu {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

std::uint64_t binomial(int n, int r) {
  if (n < 0 || r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * static_cast<std::uint64_t>(n - r + i) / i;
  return out;
}

void require_low_dim(int d) {
  if (d != 1 && d != 2) {
    fail(ErrorKind::Unsupported, "harmonic bases are implemented for d in {1, 2}, got d = " +
                                     std::to_string(d));
  }
}

}  // namespace

double sphere_area(int d) {
  require(d >= 0, ErrorKind::Domain, "sphere_area: d must be >= 0");
  const double h = 0.5 * (d + 1);
  return 2.0 * std::exp(h * std::log(kPi) - std::lgamma(h));
}

std::uint64_t harmonic_dim(int d, int m) {
  require(d >= 1 && m >= 0, ErrorKind::Domain, "harmonic_dim: need d >= 1, m >= 0");
  if (m == 0) return 1;
  return binomial(m + d, d) - binomial(m + d - 2, d);
}

LegendreBasis::LegendreBasis(int d, int m_max)
    : d_(d), m_max_(m_max), lambda_(0.5 * (d - 1)), n_(m_max + 1) {
  require(d >= 1, ErrorKind::Domain, "LegendreBasis: d must be >= 1");
  require(m_max >= 0, ErrorKind::Domain, "LegendreBasis: m_max must be >= 0");
  for (int m = 0; m <= m_max; ++m) n_[m] = static_cast<double>(harmonic_dim(d, m));
}

void LegendreBasis::eval_all(double t, std::span<double> out) const {
  require(out.size() >= static_cast<std::size_t>(m_max_ + 1), ErrorKind::Contract,
          "LegendreBasis::eval_all: output too small");
  t = std::clamp(t, -1.0, 1.0);
  // Gegenbauer polynomials divided by their value at 1:
  //   R_{m+1} = ((2m + 2 lambda) t R_m - m R_{m-1}) / (m + 2 lambda).
  double r_prev = 1.0;
  double r = t;
  out[0] = 1.0;
  if (m_max_ >= 1) out[1] = n_[1] * t;
  for (int m = 1; m < m_max_; ++m) {
    const double next = ((2 * m + 2 * lambda_) * t * r - m * r_prev) / (m + 2 * lambda_);
    r_prev = r;
    r = next;
    out[m + 1] = n_[m + 1] * r;
  }
}

double LegendreBasis::eval(int m, double t) const {
  require(m >= 0 && m <= m_max_, ErrorKind::Range,
          "LegendreBasis::eval: degree " + std::to_string(m) + " exceeds m_max " +
              std::to_string(m_max_));
  t = std::clamp(t, -1.0, 1.0);
  if (m == 0) return 1.0;
  double r_prev = 1.0;
  double r = t;
  for (int j = 1; j < m; ++j) {
    const double next = ((2 * j + 2 * lambda_) * t * r - j * r_prev) / (j + 2 * lambda_);
    r_prev = r;
    r = next;
  }
  return n_[m] * r;
}

Eigen::Index harmonic_count_upto(int d, int degree) {
  require_low_dim(d);
  if (degree < 0) return 0;
  return d == 1 ? 2 * Eigen::Index(degree) + 1 : Eigen::Index(degree + 1) * (degree + 1);
}

Eigen::Index harmonic_index(int d, int m, int l) {
  require_low_dim(d);
  require(m >= 0 && l >= 1 && static_cast<std::uint64_t>(l) <= harmonic_dim(d, m), ErrorKind::Range,
          "harmonic index (m, l) out of range");
  if (d == 1) return m == 0 ? 0 : 2 * Eigen::Index(m) - 2 + l;
  return Eigen::Index(m) * m + l - 1;
}

void harmonics_upto(int d, int degree, std::span<const double> eta, std::span<double> out) {
  require_low_dim(d);
  require(eta.size() == static_cast<std::size_t>(d + 1), ErrorKind::Contract,
          "harmonics_upto: point has wrong dimension");
  require(degree >= 0, ErrorKind::Range, "harmonics_upto: degree must be >= 0");
  require(out.size() >= static_cast<std::size_t>(harmonic_count_upto(d, degree)), ErrorKind::Contract,
          "harmonics_upto: output too small");
  const double phi = std::atan2(eta[1], eta[0]);
  out[0] = 1.0;
  if (d == 1) {
    for (int m = 1; m <= degree; ++m) {
      out[2 * m - 1] = kSqrt2 * std::cos(m * phi);
      out[2 * m] = kSqrt2 * std::sin(m * phi);
    }
    return;
  }
  const double z = std::clamp(eta[2], -1.0, 1.0);
  const double s = std::hypot(eta[0], eta[1]);
  // Associated Legendre functions with (1/2) int_{-1}^{1} P^2 dz = 1.
  double p_diag = 1.0;
  for (int mu = 0; mu <= degree; ++mu) {
    if (mu > 0) p_diag *= std::sqrt((2.0 * mu + 1.0) / (2.0 * mu)) * s;
    const double c = mu == 0 ? 1.0 : kSqrt2 * std::cos(mu * phi);
    const double sn = kSqrt2 * std::sin(mu * phi);
    auto store = [&](int l, double p) {
      const Eigen::Index base = Eigen::Index(l) * l + l;
      out[base + mu] = p * c;
      if (mu > 0) out[base - mu] = p * sn;
    };
    store(mu, p_diag);
    if (mu == degree) break;
    double p_lm2 = p_diag;
    double p_lm1 = std::sqrt(2.0 * mu + 3.0) * z * p_diag;
    store(mu + 1, p_lm1);
    for (int l = mu + 2; l <= degree; ++l) {
      const double lm = l - mu;
      const double lp = l + mu;
      const double a = std::sqrt((2.0 * l - 1.0) * (2.0 * l + 1.0) / (lm * lp));
      const double b = std::sqrt((2.0 * l + 1.0) * (lp - 1.0) * (lm - 1.0) / (lm * lp * (2.0 * l - 3.0)));
      const double p = a * z * p_lm1 - b * p_lm2;
      p_lm2 = p_lm1;
      p_lm1 = p;
      store(l, p);
    }
  }
}

double harmonic_eval(int d, int m, int l, std::span<const double> eta) {
  const Eigen::Index idx = harmonic_index(d, m, l);
  std::vector<double> all(static_cast<std::size_t>(harmonic_count_upto(d, m)));
  harmonics_upto(d, m, eta, all);
  return all[static_cast<std::size_t>(idx)];
}

ReferenceGrid reference_grid(int d, int exact_degree) {
  require_low_dim(d);
  require(exact_degree >= 0, ErrorKind::Contract, "reference_grid: degree must be >= 0");
  ReferenceGrid grid;
  grid.d = d;
  grid.exact_degree = exact_degree;
  const int n_phi = exact_degree + 1;
  if (d == 1) {
    grid.nodes.resize(n_phi, 2);
    grid.weights = Eigen::VectorXd::Constant(n_phi, 1.0 / n_phi);
    for (int j = 0; j < n_phi; ++j) {
      const double a = 2 * kPi * j / n_phi;
      grid.nodes(j, 0) = std::cos(a);
      grid.nodes(j, 1) = std::sin(a);
    }
    return grid;
  }
  const int n_z = exact_degree / 2 + 1;
  const auto gl = gauss_legendre<double>(n_z);
  grid.nodes.resize(Eigen::Index(n_z) * n_phi, 3);
  grid.weights.resize(Eigen::Index(n_z) * n_phi);
  Eigen::Index row = 0;
  for (int i = 0; i < n_z; ++i) {
    const double z = gl.nodes[i];
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < n_phi; ++j) {
      const double a = 2 * kPi * j / n_phi;
      grid.nodes(row, 0) = r * std::cos(a);
      grid.nodes(row, 1) = r * std::sin(a);
      grid.nodes(row, 2) = z;
      grid.weights[row] = 0.5 * gl.weights[i] / n_phi;
      ++row;
    }
  }
  return grid;
}

double HarmonicProjection::eval(int m, std::span<const double> eta) const {
  require(m >= 0 && m <= m_max_, ErrorKind::Range, "HarmonicProjection::eval: degree out of range");
  std::vector<double> all(static_cast<std::size_t>(harmonic_count_upto(d_, m)));
  harmonics_upto(d_, m, eta, all);
  const Eigen::Index first = harmonic_count_upto(d_, m - 1);
  const auto& c = coefficients_[m];
  double out = 0.0;
  for (Eigen::Index l = 0; l < c.size(); ++l) out += c[l] * all[static_cast<std::size_t>(first + l)];
  return out;
}

HarmonicProjection project_all(const ReferenceGrid& grid, std::span<const double> samples,
                               int m_max) {
  require(samples.size() == static_cast<std::size_t>(grid.nodes.rows()), ErrorKind::Contract,
          "project_all: sample count does not match grid");
  require(m_max >= 0, ErrorKind::Range, "project_all: m_max must be >= 0");
  require(grid.exact_degree >= 2 * m_max, ErrorKind::Precision,
          "project_all: grid exact to degree " + std::to_string(grid.exact_degree) +
              " cannot resolve degree " + std::to_string(m_max));
  const Eigen::Index count = harmonic_count_upto(grid.d, m_max);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(count);
  std::vector<double> y(static_cast<std::size_t>(count));
  const auto dim = static_cast<std::size_t>(grid.d + 1);
  for (Eigen::Index i = 0; i < grid.nodes.rows(); ++i) {
    harmonics_upto(grid.d, m_max, {grid.nodes.data() + i * grid.nodes.cols(), dim}, y);
    const double w = grid.weights[i] * samples[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < count; ++j) acc[j] += w * y[static_cast<std::size_t>(j)];
  }
  std::vector<Eigen::VectorXd> coefficients;
  for (int m = 0; m <= m_max; ++m) {
    const Eigen::Index first = harmonic_count_upto(grid.d, m - 1);
    coefficients.emplace_back(acc.segment(first, harmonic_count_upto(grid.d, m) - first));
  }
  return HarmonicProjection(grid.d, m_max, std::move(coefficients));
}

}  // namespace linrelu
