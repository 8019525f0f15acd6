// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace linrelu {

// One point per row; directions on S^d have d + 1 columns.
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// A unit vector in R^{d+1}.
class Direction {
 public:
  // Throws ErrorKind::Contract unless | |coords| - 1 | <= 1e-12.
  explicit Direction(Eigen::VectorXd coords);
  static Direction normalized(Eigen::VectorXd v);

  int sphere_dim() const { return static_cast<int>(coords_.size()) - 1; }
  const Eigen::VectorXd& coords() const { return coords_; }
  double operator[](Eigen::Index i) const { return coords_[i]; }
  std::span<const double> span() const { return {coords_.data(), static_cast<std::size_t>(coords_.size())}; }

 private:
  Eigen::VectorXd coords_;
};

// Angle in [0, pi] between two unit vectors. Computed from the chord length,
// which equals arccos of the clamped dot product but keeps full relative
// accuracy for nearly coincident points.
double geodesic_distance(std::span<const double> u, std::span<const double> v);
double geodesic_distance(const Direction& u, const Direction& v);

enum class PointStrategy {
  EquispacedCircle,
  FibonacciS2,
  UniformRandom,
  PetrushevTensor,
  BandWithPolyCompletion,
};

std::string_view strategy_name(PointStrategy s);
PointStrategy parse_point_strategy(std::string_view name);

struct PointParams {
  // band_with_poly_completion: activation power and domain radius.
  int k = 1;
  double lambda = 1.0;
  // petrushev_tensor: sphere directions and bias levels (0 = derive from n).
  int n1 = 0;
  int n2 = 0;
  // Target covering-grid resolution for the mesh-norm estimate, radians.
  double resolution = 0.01;
};

struct MeshNormEstimate {
  double h;
  // Grid covering radius; h overestimates the true mesh norm by at most this.
  // Zero when exact (d = 1). Negative when the estimate is probe-based and
  // carries no certificate (d >= 3).
  double resolution;
};

// Max over a covering grid of the distance to the nearest point, plus the
// grid covering radius. d = 1 is closed form.
MeshNormEstimate mesh_norm(const PointMatrix& points, int d, double resolution);

// Minimal pairwise geodesic distance; pi for a single point.
double min_separation(const PointMatrix& points);

class PointSet {
 public:
  // Validates unit norms and distinctness, then computes h and h_sep.
  PointSet(int d, PointMatrix points, double resolution, std::string strategy = "custom",
           std::uint64_t seed = 0);
  // Restores a set with known diagnostics (deserialization); still validates points.
  PointSet(int d, PointMatrix points, std::string strategy, std::uint64_t seed, double h,
           double h_sep, double h_resolution);

  int dim() const { return d_; }
  Eigen::Index size() const { return points_.rows(); }
  const PointMatrix& points() const { return points_; }
  std::span<const double> row(Eigen::Index i) const {
    return {points_.data() + i * points_.cols(), static_cast<std::size_t>(points_.cols())};
  }
  Direction point(Eigen::Index i) const { return Direction(points_.row(i).transpose()); }

  double mesh_norm() const { return h_; }
  double separation() const { return h_sep_; }
  double resolution() const { return h_resolution_; }
  const std::string& strategy() const { return strategy_; }
  std::uint64_t seed() const { return seed_; }

 private:
  void validate() const;

  int d_;
  PointMatrix points_;
  std::string strategy_;
  std::uint64_t seed_;
  double h_ = 0.0;
  double h_sep_ = 0.0;
  double h_resolution_ = 0.0;
};

// Deterministic in (d, n, strategy, seed, params). See PointStrategy docs in
// README for the supported (d, strategy) pairs.
PointSet generate_points(int d, Eigen::Index n, PointStrategy strategy, std::uint64_t seed,
                         const PointParams& params = {});

// Greedy separation thinning at threshold h / target_ratio.
PointSet thin_to_quasi_uniform(const PointSet& ps, double target_ratio);

}  // namespace linrelu
