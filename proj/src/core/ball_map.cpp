// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/ball_map.hpp"

#include <cmath>
#include <vector>

#include "core/error.hpp"

namespace linrelu {

namespace {

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

CapFunction::CapFunction(int d, int k, PointFunction formula) : d_(d), k_(k), formula_(std::move(formula)) {
  require(d >= 1 && k >= 0, ErrorKind::Contract, "CapFunction: need d >= 1, k >= 0");
  require(static_cast<bool>(formula_), ErrorKind::Contract, "CapFunction: empty formula");
}

double CapFunction::operator()(std::span<const double> eta) const {
  require(eta.size() == static_cast<std::size_t>(d_ + 1), ErrorKind::Contract,
          "CapFunction: point has wrong dimension");
  require(eta[d_] >= kCapHeight - 1e-12, ErrorKind::Domain, "CapFunction: point lies outside the cap");
  return formula_(eta);
}

PointFunction lift_s_k(const CapFunction& g) {
  return [g](std::span<const double> x) {
    const int d = g.dim();
    require(x.size() == static_cast<std::size_t>(d), ErrorKind::Contract, "S_k: point has wrong dimension");
    std::vector<double> u(d + 1);
    double norm2 = 1.0;
    for (int i = 0; i < d; ++i) norm2 += x[i] * x[i];
    const double norm = std::sqrt(norm2);
    for (int i = 0; i < d; ++i) u[i] = x[i] / norm;
    u[d] = 1.0 / norm;
    return ipow(norm, g.power()) * g(u);
  };
}

CapFunction restrict_t_k(int d, int k, PointFunction f) {
  return CapFunction(d, k, [d, k, f = std::move(f)](std::span<const double> eta) {
    require(eta[d] > 0.0, ErrorKind::Domain, "T_k: needs eta_{d+1} > 0");
    std::vector<double> x(d);
    for (int i = 0; i < d; ++i) x[i] = eta[i] / eta[d];
    return ipow(eta[d], k) * f(x);
  });
}

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

PointFunction parity_extend(const CapFunction& g, double blend_width) {
  require(blend_width > 0.0 && blend_width <= std::numbers::pi / 4, ErrorKind::Config,
          "parity_extend: blend width must lie in (0, pi/4]");
  const double low = std::cos(std::numbers::pi / 4 + blend_width);
  const double s = g.power() % 2 == 1 ? 1.0 : -1.0;
  auto chi = [low](double t) { return smooth_step((t - low) / (kCapHeight - low)); };
  return [g, s, chi](std::span<const double> eta) {
    const int d = g.dim();
    require(eta.size() == static_cast<std::size_t>(d + 1), ErrorKind::Contract,
            "parity_extend: point has wrong dimension");
    const double t = eta[d];
    double upper = 0.0;
    double lower = 0.0;
    const double cu = chi(t);
    const double cl = chi(-t);
    if (cu > 0.0) upper = cu * g.extended(eta);
    if (cl > 0.0) {
      std::vector<double> neg(eta.begin(), eta.end());
      for (auto& v : neg) v = -v;
      lower = s * (cl * g.extended(neg));
    }
    return upper + lower;
  };
}

TargetFunction sphere_target_from_ball(const TargetFunction& f, int k, double blend_width) {
  require(f.domain == Domain::Ball, ErrorKind::Contract, "sphere_target_from_ball: needs a ball target");
  const CapFunction cap = restrict_t_k(f.d, k, f.value);
  TargetFunction out;
  out.name = f.name + "_sphere";
  out.d = f.d;
  out.domain = Domain::Sphere;
  out.value = parity_extend(cap, blend_width);
  out.regularity = f.regularity;
  out.parity = k % 2 == 1 ? 1 : -1;
  return out;
}

}  // namespace linrelu
