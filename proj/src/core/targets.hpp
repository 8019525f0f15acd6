// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace linrelu {

enum class Domain { Ball, Sphere };

// A scalar function on the ball B^d (x has d coordinates) or on S^d
// (eta has d + 1 coordinates).
struct TargetFunction {
  using Value = std::function<double(std::span<const double>)>;
  using Gradient = std::function<void(std::span<const double>, std::span<double>)>;

  std::string name;
  int d = 0;
  Domain domain = Domain::Ball;
  Value value;
  Gradient gradient;  // empty when unavailable
  double regularity = 0.0;
  // Sphere targets: g(-eta) = parity * g(eta); 0 for the zero function.
  std::optional<int> parity;

  double operator()(std::span<const double> x) const { return value(x); }
  bool has_gradient() const { return static_cast<bool>(gradient); }
};

// Catalog:
//   ball:   gaussian_bump  exp(-2 |x - c|^2), c = (0.2, -0.1, 0.05, ...)
//           cos_pi         cos(pi x_1) (d = 1)
//           zero
//   sphere: smooth_even    exp(eta . v) + exp(-eta . v)
//           smooth_odd     exp(eta . v) - exp(-eta . v)
//           abs_ridge      |theta0 . eta|
//           zero
// ErrorKind::Config for unknown names or unsupported d.
TargetFunction make_target(const std::string& name, int d, Domain domain);
std::vector<std::string> target_names(Domain domain);

}  // namespace linrelu
