// Regional approximate controllability test at truncation N: a mode is dead
// when its actuator gain vanishes; the kernel of H* restricted to omega is
// nontrivial exactly when a dead mode is visible on omega.
#pragma once

#include <vector>

#include "fracctrl/actuators.hpp"
#include "fracctrl/spectral.hpp"

namespace fracctrl {

struct ControllabilityReport {
  std::vector<int> dead_modes;  // 1-based indices with |b_i| < gain_tol
  std::vector<int> live_modes;  // complement
  bool controllable = false;    // at this truncation: no dead modes
  double gain_tol = 1e-10;
  int truncation = 0;
  // true when some dead eigenfunction has nonzero mass on omega, i.e. the
  // obstruction is actually visible in L2(omega)
  bool obstruction_visible_on_region = false;
};

ControllabilityReport analyze(const ActuatorSpec& actuator, const Region& region,
                              const EigenBasis& basis, double gain_tol = 1e-10);

struct TargetSplit {
  SpectralField reachable;   // live-mode components of the target
  SpectralField obstructed;  // dead-mode components
};

/// Splits a target along the live/dead mode sets; reachable + obstructed
/// reproduces the target exactly.
TargetSplit reachable_component(const SpectralField& z_T, const ControllabilityReport& report);

}  // namespace fracctrl
