// Mild-solution dynamics in spectral coordinates:
//   z_i(t) = E_{alpha,1}(lambda_i t^alpha) z0_i
//            + b_i int_0^t (t-s)^{alpha-1} E_{alpha,alpha}(lambda_i (t-s)^alpha) u(s) ds.
// The substitution tau = (t-s)^alpha absorbs the kernel singularity exactly;
// controls carrying the HUM closed form (T-t)^{alpha-1} * smooth get the
// merged substitution sigma = (T-s)^{2 alpha - 1} at t = T.
#pragma once

#include <optional>
#include <vector>

#include "fracctrl/actuators.hpp"
#include "fracctrl/mlf.hpp"
#include "fracctrl/spectral.hpp"

namespace fracctrl {

struct QuadratureConfig {
  int panels = 32;
  int nodes_per_panel = 8;

  void validate() const;
};

/// Closed form of the HUM control:
///   u(t) = (T-t)^{alpha-1} * sum_i w_i E_{alpha,alpha}(lambda_i (T-t)^alpha).
struct HumProfile {
  double alpha = 0.7;
  double horizon = 1.0;  // T
  Eigen::VectorXd weights;
  Eigen::VectorXd lambdas;
  MLFConfig mlf;

  double smooth_factor(double t) const;  // the sum, bounded on [0,T]
  double value(double t) const;          // full profile, unbounded at t = T
};

/// Scalar control on a strictly increasing grid over [0,T], piecewise-linear
/// between samples, optionally tagged with its HUM closed form (then values
/// are evaluated from the closed form and the grid excludes t = T).
class ControlSignal {
 public:
  ControlSignal() = default;  // empty; fill via a factory before use

  static ControlSignal zero(double T, int samples = 9);
  static ControlSignal constant(double value, double T, int samples = 9);
  static ControlSignal sampled(std::vector<double> times, std::vector<double> values);
  static ControlSignal hum_profile(HumProfile profile, int samples = 512);

  double value(double t) const;
  double duration() const { return duration_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& grid_values() const { return values_; }
  const std::optional<HumProfile>& profile() const { return profile_; }

 private:
  void check_grid() const;

  std::vector<double> times_;
  std::vector<double> values_;
  std::optional<HumProfile> profile_;
  double duration_ = 0.0;
};

/// c_i(t) = E_{alpha,1}(lambda_i t^alpha) z0_i.
SpectralField free_evolution(const SpectralField& z0, double alpha, double t,
                             const EigenBasis& basis, const MLFConfig& mlf = {});

/// E_{alpha,alpha}(lambda tau^alpha), tau > 0.
double kernel_coeff(double alpha, double lambda, double tau, const MLFConfig& mlf = {});

struct QuadValue {
  double value = 0.0;
  double error = 0.0;  // change under one panel doubling
};

/// int_0^t (t-s)^{alpha-1} E_{alpha,alpha}(lambda (t-s)^alpha) u(s) ds.
/// The value comes from the doubled rule; error is the doubling change.
QuadValue duhamel_integral(double alpha, double lambda, const ControlSignal& u, double t,
                           const QuadratureConfig& quad, const MLFConfig& mlf = {});

/// Full mild solution at time t.
SpectralField mild_solution(const SpectralField& z0, const ActuatorSpec& actuator,
                            const ControlSignal& u, double alpha, double t,
                            const EigenBasis& basis, const QuadratureConfig& quad,
                            const MLFConfig& mlf = {});

namespace detail {

/// Quadrature rule duhamel_integral applies to a sampled (non-profile)
/// signal: nodes in tau = (t-s)^alpha with panels aligned to the signal's
/// grid knots, weights carrying the 1/alpha substitution factor. `refine`
/// multiplies the per-panel subdivision (refine = 2 is the fine pass whose
/// value duhamel_integral returns).
struct DuhamelRule {
  std::vector<double> tau;
  std::vector<double> weight;
};
DuhamelRule duhamel_rule(double alpha, const ControlSignal& u, double t,
                         const QuadratureConfig& quad, int refine);

}  // namespace detail

}  // namespace fracctrl
