// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <numbers>
#include <span>

#include "core/targets.hpp"

namespace linrelu {

using PointFunction = std::function<double(std::span<const double>)>;

// Lower boundary of the cap G = {eta in S^d : eta_{d+1} >= 1/sqrt(2)}.
inline constexpr double kCapHeight = 0.70710678118654752440;

// A function on G given by a formula that may extend below the cap.
class CapFunction {
 public:
  CapFunction(int d, int k, PointFunction formula);

  int dim() const { return d_; }
  int power() const { return k_; }
  // ErrorKind::Domain when eta is outside G.
  double operator()(std::span<const double> eta) const;
  // The formula itself, without the cap check.
  double extended(std::span<const double> eta) const { return formula_(eta); }

 private:
  int d_;
  int k_;
  PointFunction formula_;
};

// (S_k g)(x) = |x~|^k g(x~ / |x~|), x~ = (x, 1), for x in the unit ball.
PointFunction lift_s_k(const CapFunction& g);

// (T_k f)(eta) = eta_{d+1}^k f(eta_bar / eta_{d+1}).
CapFunction restrict_t_k(int d, int k, PointFunction f);

// C-infinity step: 0 for u <= 0, 1 for u >= 1.
double smooth_step(double u);

// G(eta) = chi(eta_{d+1}) g(eta) + s chi(-eta_{d+1}) g(-eta), s = (-1)^{k+1},
// with chi = 1 on the cap and 0 below colatitude pi/4 + blend_width.
// G(-eta) = s G(eta) holds exactly. ErrorKind::Config unless
// 0 < blend_width <= pi/4.
PointFunction parity_extend(const CapFunction& g, double blend_width = std::numbers::pi / 16);

// Sphere target T_k f extended with the parity of k, from a ball target
// whose formula is smooth on a neighbourhood of the unit ball.
TargetFunction sphere_target_from_ball(const TargetFunction& f, int k,
                                       double blend_width = std::numbers::pi / 16);

}  // namespace linrelu
