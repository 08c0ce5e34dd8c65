// Input operator B and its adjoint, reduced to per-mode gains:
// zone actuator  B u = indicator([a1,a2]) u  ->  b_i = int_{a1}^{a2} xi_i dx,
// pointwise      B u = u delta(x - b)        ->  b_i = xi_i(b)  (truncated sense).
#pragma once

#include <Eigen/Dense>

#include "fracctrl/spectral.hpp"

namespace fracctrl {

struct ActuatorSpec {
  enum class Kind { Zone, Pointwise };

  Kind kind = Kind::Zone;
  double a1 = 0.0, a2 = 1.0;  // zone endpoints
  double b = 0.5;             // pointwise location

  static ActuatorSpec zone(double a1, double a2);
  static ActuatorSpec pointwise(double b);
};

struct ModeGains {
  Eigen::VectorXd b;  // gain of mode i under B*, 1-based mode i at index i-1

  int size() const { return static_cast<int>(b.size()); }
};

ModeGains mode_gains(const ActuatorSpec& actuator, const EigenBasis& basis);

/// Adjoint action on a coefficient vector: sum_i b_i c_i.
double apply_B_star(const ModeGains& gains, const SpectralField& field);

}  // namespace fracctrl
