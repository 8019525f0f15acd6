// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/sphere.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace linrelu {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitTol = 1e-12;

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * static_cast<std::uint64_t>(n - r + i) / i;
  return out;
}

// Geodesic (frequency F) subdivision of the icosahedron. Vertices on shared
// edges are duplicated; harmless for max-min searches.
struct CoveringGrid {
  PointMatrix vertices;
  double covering_radius = 0.0;
};

std::array<Eigen::Vector3d, 12> icosahedron_vertices() {
  const double phi = std::numbers::phi;
  std::array<Eigen::Vector3d, 12> v = {
      Eigen::Vector3d(-1, phi, 0), Eigen::Vector3d(1, phi, 0),   Eigen::Vector3d(-1, -phi, 0),
      Eigen::Vector3d(1, -phi, 0), Eigen::Vector3d(0, -1, phi),  Eigen::Vector3d(0, 1, phi),
      Eigen::Vector3d(0, -1, -phi), Eigen::Vector3d(0, 1, -phi), Eigen::Vector3d(phi, 0, -1),
      Eigen::Vector3d(phi, 0, 1),  Eigen::Vector3d(-phi, 0, -1), Eigen::Vector3d(-phi, 0, 1)};
  for (auto& p : v) p.normalize();
  return v;
}

constexpr std::array<std::array<int, 3>, 20> kIcosaFaces = {{
    {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
    {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
    {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1},
}};

double spherical_circumradius(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                              const Eigen::Vector3d& c) {
  Eigen::Vector3d n = (b - a).cross(c - a);
  n.normalize();
  if (n.dot(a) < 0) n = -n;
  return std::acos(std::clamp(n.dot(a), -1.0, 1.0));
}

CoveringGrid build_icosahedral_grid(int freq) {
  const auto ico = icosahedron_vertices();
  CoveringGrid grid;
  const int per_face = (freq + 1) * (freq + 2) / 2;
  grid.vertices.resize(20 * per_face, 3);
  Eigen::Index row = 0;
  std::vector<Eigen::Vector3d> local(per_face);
  auto index = [freq](int i, int j) { return i * (freq + 1) - i * (i - 1) / 2 + j; };
  for (const auto& face : kIcosaFaces) {
    const Eigen::Vector3d& a = ico[face[0]];
    const Eigen::Vector3d& b = ico[face[1]];
    const Eigen::Vector3d& c = ico[face[2]];
    for (int i = 0; i <= freq; ++i) {
      for (int j = 0; i + j <= freq; ++j) {
        Eigen::Vector3d p = a + (b - a) * (double(i) / freq) + (c - a) * (double(j) / freq);
        p.normalize();
        local[index(i, j)] = p;
        grid.vertices.row(row++) = p.transpose();
      }
    }
    for (int i = 0; i < freq; ++i) {
      for (int j = 0; i + j < freq; ++j) {
        grid.covering_radius = std::max(
            grid.covering_radius,
            spherical_circumradius(local[index(i, j)], local[index(i + 1, j)], local[index(i, j + 1)]));
        if (i + j + 1 < freq) {
          grid.covering_radius = std::max(
              grid.covering_radius, spherical_circumradius(local[index(i + 1, j)],
                                                           local[index(i + 1, j + 1)],
                                                           local[index(i, j + 1)]));
        }
      }
    }
  }
  return grid;
}

std::shared_ptr<const CoveringGrid> icosahedral_grid_for(double resolution) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CoveringGrid>> cache;
  // Icosahedron edge angle is about 1.1071; near-equilateral cells have
  // circumradius close to edge / sqrt(3).
  int freq = std::max(1, static_cast<int>(std::ceil(1.1071 / (std::sqrt(3.0) * resolution))));
  std::lock_guard lock(mutex);
  for (;;) {
    auto it = cache.find(freq);
    if (it == cache.end()) {
      it = cache.emplace(freq, std::make_shared<const CoveringGrid>(build_icosahedral_grid(freq)))
               .first;
    }
    if (it->second->covering_radius <= resolution) return it->second;
    freq = static_cast<int>(std::ceil(freq * it->second->covering_radius / resolution)) + 1;
  }
}

// Largest over probes of the distance to the nearest point.
double max_min_distance(const PointMatrix& probes, const PointMatrix& points) {
  const Eigen::Index dim = points.cols();
  const Eigen::Index n = points.rows();
  const double* pts = points.data();
  double worst_dot = 1.0;
  for (Eigen::Index g = 0; g < probes.rows(); ++g) {
    const double* q = probes.data() + g * dim;
    double best = -2.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double* p = pts + j * dim;
      double dot = 0.0;
      for (Eigen::Index c = 0; c < dim; ++c) dot += q[c] * p[c];
      best = std::max(best, dot);
    }
    worst_dot = std::min(worst_dot, best);
  }
  return std::acos(std::clamp(worst_dot, -1.0, 1.0));
}

double circle_angle(std::span<const double> p) {
  double a = std::atan2(p[1], p[0]);
  return a < 0 ? a + 2 * kPi : a;
}

PointMatrix equispaced_circle(Eigen::Index n) {
  PointMatrix pts(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = 2 * kPi * double(i) / double(n);
    pts(i, 0) = std::cos(a);
    pts(i, 1) = std::sin(a);
  }
  return pts;
}

// Spiral points with heights evenly spread over [z_lo, z_hi].
PointMatrix fibonacci_band(Eigen::Index n, double z_lo, double z_hi) {
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  PointMatrix pts(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = z_hi - (z_hi - z_lo) * (double(i) + 0.5) / double(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * double(i);
    pts(i, 0) = r * std::cos(phi);
    pts(i, 1) = r * std::sin(phi);
    pts(i, 2) = z;
  }
  return pts;
}

PointMatrix uniform_random(int d, Eigen::Index n, std::uint64_t seed) {
  CounterRng rng(seed, /*stream=*/0x5048);
  PointMatrix pts(n, d + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (int c = 0; c <= d; ++c) {
        pts(i, c) = rng.normal();
        norm2 += pts(i, c) * pts(i, c);
      }
    } while (norm2 < 1e-20);
    pts.row(i) /= std::sqrt(norm2);
  }
  return pts;
}

// Tensor product of sphere directions w in S^{d-1} and bias levels b in
// [-1, 1], mapped to S^d by (w, b) / sqrt(1 + b^2).
PointMatrix petrushev_tensor(int d, Eigen::Index n, const PointParams& params) {
  require(d == 1 || d == 2, ErrorKind::Unsupported, "petrushev_tensor supports d in {1, 2}");
  int n1 = params.n1;
  int n2 = params.n2;
  if (d == 1) {
    if (n1 == 0) n1 = 2;
    require(n1 == 2, ErrorKind::Config, "petrushev_tensor on S^1 uses the two directions of S^0");
    if (n2 == 0) n2 = static_cast<int>((n + 1) / 2);
  } else {
    if (n2 == 0) n2 = std::max(1, static_cast<int>(std::lround(std::sqrt(double(n)))));
    if (n1 == 0) n1 = std::max(3, static_cast<int>(std::lround(double(n) / n2)));
  }
  require(n1 >= 1 && n2 >= 1, ErrorKind::Config, "petrushev_tensor needs n1, n2 >= 1");
  PointMatrix pts(Eigen::Index(n1) * n2, d + 1);
  Eigen::Index row = 0;
  for (int i = 0; i < n2; ++i) {
    const double b = -1.0 + (2.0 * i + 1.0) / n2;
    const double scale = 1.0 / std::sqrt(1.0 + b * b);
    for (int j = 0; j < n1; ++j) {
      if (d == 1) {
        pts(row, 0) = (j == 0 ? 1.0 : -1.0) * scale;
      } else {
        const double a = 2 * kPi * double(j) / n1;
        pts(row, 0) = std::cos(a) * scale;
        pts(row, 1) = std::sin(a) * scale;
      }
      pts(row, d) = b * scale;
      ++row;
    }
  }
  return pts;
}

// Smallest singular value of the column-normalized sample matrix of
// (theta_j . x~)^k over points x in the ball of radius lambda.
double poly_completion_sigma_min(const PointMatrix& cap, int d, int k, double lambda) {
  const int samples = std::max<int>(64, 8 * static_cast<int>(cap.rows()));
  CounterRng rng(0x636170, 0);
  Eigen::MatrixXd features(samples, cap.rows());
  Eigen::VectorXd xt(d + 1);
  for (int s = 0; s < samples; ++s) {
    double r2;
    do {
      r2 = 0.0;
      for (int c = 0; c < d; ++c) {
        xt[c] = rng.uniform(-lambda, lambda);
        r2 += xt[c] * xt[c];
      }
    } while (r2 > lambda * lambda);
    xt[d] = 1.0;
    for (Eigen::Index j = 0; j < cap.rows(); ++j) {
      features(s, j) = std::pow(cap.row(j).dot(xt.transpose()), k);
    }
  }
  for (Eigen::Index j = 0; j < features.cols(); ++j) features.col(j).normalize();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(features);
  return svd.singularValues().minCoeff();
}

// C(k+d, d) directions in the cap {theta_{d+1} >= c} whose k-th powers span
// the polynomials of degree k on the domain, plus well-distributed points in
// the band |theta_{d+1}| <= c, c = lambda / sqrt(1 + lambda^2).
PointMatrix band_with_poly_completion(int d, Eigen::Index n, const PointParams& params) {
  require(d == 1 || d == 2, ErrorKind::Unsupported,
          "band_with_poly_completion supports d in {1, 2}");
  require(params.k >= 0, ErrorKind::Config, "band_with_poly_completion needs k >= 0");
  require(params.lambda > 0, ErrorKind::Config, "band_with_poly_completion needs lambda > 0");
  const auto n_cap = static_cast<Eigen::Index>(binomial(params.k + d, d));
  require(n >= n_cap, ErrorKind::Config,
          "band_with_poly_completion needs n >= C(k+d, d) = " + std::to_string(n_cap));
  const double c = params.lambda / std::sqrt(1.0 + params.lambda * params.lambda);
  const Eigen::Index n_band = n - n_cap;

  PointMatrix cap(n_cap, d + 1);
  if (d == 1) {
    // Angles from the pole, spread over 80% of the cap half-width.
    const double half_width = 0.8 * std::acos(c);
    for (Eigen::Index j = 0; j < n_cap; ++j) {
      const double a =
          n_cap == 1 ? 0.0 : -half_width + 2.0 * half_width * double(j) / double(n_cap - 1);
      cap(j, 0) = std::sin(a);
      cap(j, 1) = std::cos(a);
    }
  } else {
    cap = fibonacci_band(n_cap, c + 0.2 * (1.0 - c), 1.0);
  }
  const double sigma_min = poly_completion_sigma_min(cap, d, params.k, params.lambda);
  require(sigma_min > 1e-8, ErrorKind::Numerical,
          "cap directions do not span the degree-k polynomials");

  PointMatrix band(n_band, d + 1);
  if (n_band > 0) {
    if (d == 1) {
      // Two arcs |sin(phi)| <= c around phi = 0 and phi = pi.
      const double half = std::asin(c);
      for (Eigen::Index j = 0; j < n_band; ++j) {
        const double u = (double(j) + 0.5) / double(n_band);  // position along both arcs
        const double t = 2.0 * u;
        const double a = t < 1.0 ? -half + 2.0 * half * t : kPi - half + 2.0 * half * (t - 1.0);
        band(j, 0) = std::cos(a);
        band(j, 1) = std::sin(a);
      }
    } else {
      band = fibonacci_band(n_band, -c, c);
    }
  }
  PointMatrix pts(n, d + 1);
  pts.topRows(n_cap) = cap;
  pts.bottomRows(n_band) = band;
  return pts;
}

}  // namespace

Direction::Direction(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  require(coords_.size() >= 1, ErrorKind::Contract, "direction needs at least one coordinate");
  require(std::abs(coords_.norm() - 1.0) <= kUnitTol, ErrorKind::Contract,
          "direction is not a unit vector");
}

Direction Direction::normalized(Eigen::VectorXd v) {
  const double n = v.norm();
  require(n > 0 && std::isfinite(n), ErrorKind::Domain, "cannot normalize a zero vector");
  return Direction(v / n);
}

double geodesic_distance(std::span<const double> u, std::span<const double> v) {
  require(u.size() == v.size(), ErrorKind::Contract, "geodesic_distance: dimension mismatch");
  double chord2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) chord2 += (u[i] - v[i]) * (u[i] - v[i]);
  return 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(chord2)));
}

double geodesic_distance(const Direction& u, const Direction& v) {
  return geodesic_distance(u.span(), v.span());
}

std::string_view strategy_name(PointStrategy s) {
  switch (s) {
    case PointStrategy::EquispacedCircle: return "equispaced_circle";
    case PointStrategy::FibonacciS2: return "fibonacci_s2";
    case PointStrategy::UniformRandom: return "uniform_random";
    case PointStrategy::PetrushevTensor: return "petrushev_tensor";
    case PointStrategy::BandWithPolyCompletion: return "band_with_poly_completion";
  }
  return "unknown";
}

PointStrategy parse_point_strategy(std::string_view name) {
  for (auto s : {PointStrategy::EquispacedCircle, PointStrategy::FibonacciS2,
                 PointStrategy::UniformRandom, PointStrategy::PetrushevTensor,
                 PointStrategy::BandWithPolyCompletion}) {
    if (strategy_name(s) == name) return s;
  }
  fail(ErrorKind::Config, "unknown point strategy '" + std::string(name) + "'");
}

MeshNormEstimate mesh_norm(const PointMatrix& points, int d, double resolution) {
  require(resolution > 0, ErrorKind::Contract, "mesh_norm: resolution must be positive");
  require(points.rows() >= 1 && points.cols() == d + 1, ErrorKind::Contract,
          "mesh_norm: point matrix does not match dimension");
  if (d == 1) {
    std::vector<double> angles(points.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      angles[i] = circle_angle({points.data() + 2 * i, 2});
    }
    std::sort(angles.begin(), angles.end());
    double gap = angles.front() + 2 * kPi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
    return {0.5 * gap, 0.0};
  }
  if (d == 2) {
    const auto grid = icosahedral_grid_for(resolution);
    const double h = max_min_distance(grid->vertices, points) + grid->covering_radius;
    return {std::min(h, kPi), grid->covering_radius};
  }
  // No covering grid in higher dimensions: a fixed random probe cloud.
  const PointMatrix probes = uniform_random(d, 200000, 0x70726f6265);
  return {max_min_distance(probes, points), -1.0};
}

double min_separation(const PointMatrix& points) {
  if (points.rows() < 2) return kPi;
  double best = kPi;
  const auto dim = static_cast<std::size_t>(points.cols());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < points.rows(); ++j) {
      best = std::min(best, geodesic_distance({points.data() + i * dim, dim},
                                              {points.data() + j * dim, dim}));
    }
  }
  return best;
}

PointSet::PointSet(int d, PointMatrix points, double resolution, std::string strategy,
                   std::uint64_t seed)
    : d_(d), points_(std::move(points)), strategy_(std::move(strategy)), seed_(seed) {
  validate();
  const auto est = linrelu::mesh_norm(points_, d_, resolution);
  h_ = est.h;
  h_resolution_ = est.resolution;
  h_sep_ = min_separation(points_);
}

PointSet::PointSet(int d, PointMatrix points, std::string strategy, std::uint64_t seed, double h,
                   double h_sep, double h_resolution)
    : d_(d),
      points_(std::move(points)),
      strategy_(std::move(strategy)),
      seed_(seed),
      h_(h),
      h_sep_(h_sep),
      h_resolution_(h_resolution) {
  validate();
}

void PointSet::validate() const {
  require(d_ >= 1, ErrorKind::Contract, "point set dimension must be >= 1");
  require(points_.rows() >= 1, ErrorKind::Contract, "point set must be nonempty");
  require(points_.cols() == d_ + 1, ErrorKind::Contract,
          "points on S^d need d + 1 coordinates");
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    require(std::abs(points_.row(i).norm() - 1.0) <= kUnitTol, ErrorKind::Contract,
            "point " + std::to_string(i) + " is not a unit vector");
  }
  // Exact duplicates only; antipodal and near-duplicate pairs are legal.
  std::vector<Eigen::Index> order(points_.rows());
  for (Eigen::Index i = 0; i < points_.rows(); ++i) order[i] = i;
  auto row_less = [this](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index c = 0; c < points_.cols(); ++c) {
      if (points_(a, c) != points_(b, c)) return points_(a, c) < points_(b, c);
    }
    return false;
  };
  std::sort(order.begin(), order.end(), row_less);
  for (std::size_t i = 1; i < order.size(); ++i) {
    require(row_less(order[i - 1], order[i]), ErrorKind::Contract,
            "point set contains duplicate points");
  }
}

PointSet generate_points(int d, Eigen::Index n, PointStrategy strategy, std::uint64_t seed,
                         const PointParams& params) {
  require(n >= 1, ErrorKind::Config, "generate_points: n must be >= 1");
  require(d >= 1, ErrorKind::Config, "generate_points: d must be >= 1");
  PointMatrix pts;
  switch (strategy) {
    case PointStrategy::EquispacedCircle:
      require(d == 1, ErrorKind::Config, "equispaced_circle requires d = 1");
      pts = equispaced_circle(n);
      break;
    case PointStrategy::FibonacciS2:
      require(d == 2, ErrorKind::Config, "fibonacci_s2 requires d = 2");
      pts = fibonacci_band(n, -1.0, 1.0);
      break;
    case PointStrategy::UniformRandom:
      pts = uniform_random(d, n, seed);
      break;
    case PointStrategy::PetrushevTensor:
      if (d != 1 && d != 2) fail(ErrorKind::Config, "petrushev_tensor requires d in {1, 2}");
      pts = petrushev_tensor(d, n, params);
      break;
    case PointStrategy::BandWithPolyCompletion:
      if (d != 1 && d != 2) fail(ErrorKind::Config, "band_with_poly_completion requires d in {1, 2}");
      pts = band_with_poly_completion(d, n, params);
      break;
  }
  return PointSet(d, std::move(pts), params.resolution, std::string(strategy_name(strategy)), seed);
}

PointSet thin_to_quasi_uniform(const PointSet& ps, double target_ratio) {
  require(target_ratio >= 1.0, ErrorKind::Contract, "thin_to_quasi_uniform: target_ratio >= 1");
  const double threshold = ps.mesh_norm() / target_ratio;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < ps.size(); ++i) {
    bool keep = true;
    for (auto j : kept) {
      if (geodesic_distance(ps.row(i), ps.row(j)) <= threshold) {
        keep = false;
        break;
      }
    }
    if (keep) kept.push_back(i);
  }
  PointMatrix out(static_cast<Eigen::Index>(kept.size()), ps.points().cols());
  for (std::size_t r = 0; r < kept.size(); ++r) out.row(r) = ps.points().row(kept[r]);
  const double resolution = ps.resolution() > 0 ? ps.resolution() : 0.01;
  return PointSet(ps.dim(), std::move(out), resolution, ps.strategy() + "+thinned", ps.seed());
}

}  // namespace linrelu
