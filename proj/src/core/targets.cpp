// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/targets.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "core/error.hpp"

namespace linrelu {

namespace {

std::vector<double> bump_center(int d) {
  static constexpr double kCenter[] = {0.2, -0.1, 0.05, -0.025};
  std::vector<double> c(d, 0.0);
  for (int i = 0; i < d && i < 4; ++i) c[i] = kCenter[i];
  return c;
}

std::vector<double> sphere_axis(int d) {
  static constexpr double kAxis[] = {0.6, 0.3, -0.2, 0.1};
  std::vector<double> v(d + 1, 0.0);
  for (int i = 0; i <= d && i < 4; ++i) v[i] = kAxis[i];
  return v;
}

double dot(std::span<const double> a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<std::string> target_names(Domain domain) {
  if (domain == Domain::Ball) return {"gaussian_bump", "cos_pi", "zero"};
  return {"smooth_even", "smooth_odd", "abs_ridge", "zero"};
}

TargetFunction make_target(const std::string& name, int d, Domain domain) {
  require(d >= 1, ErrorKind::Config, "target dimension must be >= 1");
  TargetFunction f;
  f.name = name;
  f.d = d;
  f.domain = domain;
  constexpr double kSmooth = std::numeric_limits<double>::infinity();

  if (name == "zero") {
    f.value = [](std::span<const double>) { return 0.0; };
    f.gradient = [](std::span<const double>, std::span<double> g) {
      for (auto& v : g) v = 0.0;
    };
    f.regularity = kSmooth;
    if (domain == Domain::Sphere) f.parity = 0;
    return f;
  }
  if (domain == Domain::Ball) {
    if (name == "gaussian_bump") {
      const auto c = bump_center(d);
      f.value = [c](std::span<const double> x) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) r2 += (x[i] - c[i]) * (x[i] - c[i]);
        return std::exp(-2.0 * r2);
      };
      f.gradient = [c](std::span<const double> x, std::span<double> g) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) r2 += (x[i] - c[i]) * (x[i] - c[i]);
        const double e = std::exp(-2.0 * r2);
        for (std::size_t i = 0; i < c.size(); ++i) g[i] = -4.0 * (x[i] - c[i]) * e;
      };
      f.regularity = kSmooth;
      return f;
    }
    if (name == "cos_pi") {
      require(d == 1, ErrorKind::Config, "cos_pi is a d = 1 target");
      f.value = [](std::span<const double> x) { return std::cos(std::numbers::pi * x[0]); };
      f.gradient = [](std::span<const double> x, std::span<double> g) {
        g[0] = -std::numbers::pi * std::sin(std::numbers::pi * x[0]);
      };
      f.regularity = kSmooth;
      return f;
    }
  } else {
    const auto v = sphere_axis(d);
    if (name == "smooth_even" || name == "smooth_odd") {
      const double s = name == "smooth_even" ? 1.0 : -1.0;
      f.value = [v, s](std::span<const double> eta) {
        const double t = dot(eta, v);
        return std::exp(t) + s * std::exp(-t);
      };
      f.regularity = kSmooth;
      f.parity = name == "smooth_even" ? 1 : -1;
      return f;
    }
    if (name == "abs_ridge") {
      std::vector<double> theta(d + 1, 0.0);
      theta[0] = 0.6;
      theta[d] = 0.8;
      f.value = [theta](std::span<const double> eta) { return std::abs(dot(eta, theta)); };
      // In H^r(S^d) for r < 3/2.
      f.regularity = 1.5;
      f.parity = 1;
      return f;
    }
  }
  fail(ErrorKind::Config, "unknown target '" + name + "' for this domain");
}

}  // namespace linrelu
