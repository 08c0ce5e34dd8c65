#include "fracctrl/controllability.hpp"

#include <cmath>

namespace fracctrl {

ControllabilityReport analyze(const ActuatorSpec& actuator, const Region& region,
                              const EigenBasis& basis, double gain_tol) {
  if (!(gain_tol > 0.0)) throw std::domain_error("analyze: gain_tol must be > 0");

  const int n = basis.n_modes();
  const ModeGains gains = mode_gains(actuator, basis);
  const RegionMass mass(region, basis);

  ControllabilityReport rep;
  rep.gain_tol = gain_tol;
  rep.truncation = n;
  for (int i = 1; i <= n; ++i) {
    if (std::abs(gains.b(i - 1)) < gain_tol) {
      rep.dead_modes.push_back(i);
      if (restrict_norm(SpectralField::unit(n, i), mass) > gain_tol)
        rep.obstruction_visible_on_region = true;
    } else {
      rep.live_modes.push_back(i);
    }
  }
  rep.controllable = rep.dead_modes.empty();
  return rep;
}

TargetSplit reachable_component(const SpectralField& z_T, const ControllabilityReport& report) {
  if (z_T.size() != report.truncation)
    throw std::invalid_argument("reachable_component: target/report dimension mismatch");
  TargetSplit split;
  split.reachable = SpectralField::zero(z_T.size());
  split.obstructed = SpectralField::zero(z_T.size());
  for (int i : report.live_modes) split.reachable.coeffs(i - 1) = z_T.coeffs(i - 1);
  for (int i : report.dead_modes) split.obstructed.coeffs(i - 1) = z_T.coeffs(i - 1);
  return split;
}

}  // namespace fracctrl
