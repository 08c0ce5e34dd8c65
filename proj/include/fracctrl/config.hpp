// Experiment configuration: plain key=value text, '#' comments.
//
// Keys (defaults in parentheses):
//   alpha=0.7            fractional order, in (0,1]
//   T=1.0                time horizon, > 0
//   n_modes=32           truncation N >= 1
//   actuator=zone:a1,a2 | point:b
//   region=s1,s2         target subregion omega
//   z0=zero | mode:i | bump:center,width | coeffs:c1,c2,...   (zero)
//   z_T=...              same vocabulary (zero)
//   epsilon=1e-8         Tikhonov parameter, >= 0
//   gain_tol=1e-10       dead-mode threshold, > 0
//   quad_panels=32  quad_nodes_per_panel=8
//   seed=0               echoed into reports; feeds randomized audits
//   out_dir=.            output directory
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracctrl/actuators.hpp"
#include "fracctrl/dynamics.hpp"

namespace fracctrl {

struct ProfileSpec {
  enum class Kind { Zero, Mode, Bump, Coeffs };
  Kind kind = Kind::Zero;
  int mode = 1;                 // Kind::Mode
  double center = 0.5, width = 0.1;  // Kind::Bump
  std::vector<double> coeffs;   // Kind::Coeffs

  SpectralField realize(const EigenBasis& basis) const;
  std::string describe() const;
};

struct ProblemConfig {
  double alpha = 0.7;
  double T = 1.0;
  int n_modes = 32;
  std::optional<ActuatorSpec> actuator;
  std::optional<Region> region;
  ProfileSpec z0;
  ProfileSpec z_T;
  double epsilon = 1e-8;
  double gain_tol = 1e-10;
  QuadratureConfig quad;
  unsigned seed = 0;
  std::string out_dir = ".";
  MLFConfig mlf;
  int signal_samples = 512;

  void validate(bool hum_requested) const;  // throws ConfigError
};

/// Parses key=value text. Unknown keys, bad values and violated invariants
/// raise ConfigError naming the key and the line.
ProblemConfig parse_config(const std::string& text);

ProblemConfig preset_example41();
ProblemConfig preset_example42();

}  // namespace fracctrl
