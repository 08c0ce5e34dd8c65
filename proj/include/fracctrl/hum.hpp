// Hilbert Uniqueness Method at truncation N: assemble the time Gramian
//   G_ij = int_0^T (T-s)^{2(alpha-1)} E_aa(lambda_i (T-s)^alpha)
//                                     E_aa(lambda_j (T-s)^alpha) ds,
// realize Lambda on the Galerkin space span{p_omega xi_i} as
//   A = M D_b G D_b M (+ eps M),
// solve A f = M (z_T - p_omega phi0(T)) on the live modes, synthesize
//   u*(t) = (T-t)^{alpha-1} sum_i E_aa(lambda_i (T-t)^alpha) b_i (M f)_i,
// then audit steering, energy and minimality by forward simulation.
#pragma once

#include <vector>

#include "fracctrl/controllability.hpp"
#include "fracctrl/dynamics.hpp"

namespace fracctrl {

struct TimeGramian {
  Eigen::MatrixXd matrix;   // G, symmetric positive semidefinite
  Eigen::VectorXd lambdas;  // eigenvalues the entries were built from
  double alpha = 0.7;
  double horizon = 1.0;  // T
};

/// Assembles G to ~1e-8 relative entrywise accuracy (panel doubling) under
/// the substitution sigma = (T-s)^{2 alpha - 1}. alpha in (1/2, 1]; values
/// below 1/2 make the integrand non-integrable and raise std::domain_error.
TimeGramian assemble_gramian(double alpha, double T, const EigenBasis& basis,
                             const QuadratureConfig& quad, const MLFConfig& mlf = {});

/// Same assembly for an arbitrary eigenvalue vector (synthetic spectra).
TimeGramian assemble_gramian(double alpha, double T, const Eigen::VectorXd& lambdas,
                             const QuadratureConfig& quad, const MLFConfig& mlf = {});

struct LambdaOperator {
  Eigen::MatrixXd lambda_mat;  // D_b G D_b M: coefficients of Lambda f
  Eigen::MatrixXd system_mat;  // M D_b G D_b M: Galerkin form, without eps
  Eigen::MatrixXd mass;        // M^omega
  Eigen::VectorXd gains;
  Eigen::VectorXd lambdas;
  double epsilon = 0.0;
  double alpha = 0.7;
  double horizon = 1.0;

  Eigen::VectorXd apply(const Eigen::VectorXd& f_coeffs) const { return lambda_mat * f_coeffs; }
};

LambdaOperator assemble_lambda(const TimeGramian& gramian, const ModeGains& gains,
                               const RegionMass& mass, double epsilon);

enum class SteeringStatus { Steered, ObstructedTarget };

struct HUMSolution {
  Eigen::VectorXd f_coeffs;  // coefficients of p_omega* f (zero on dead modes)
  ControlSignal u_star;
  double energy = 0.0;             // J(u*)
  double residual = 0.0;           // ||p_omega z(T,u*) - z_T||_{L2(omega)}
  double relative_residual = 0.0;  // residual / ||p_omega z_T||
  double zstar_norm = 0.0;         // ||f||_{Z*}
  SteeringStatus status = SteeringStatus::Steered;
  SpectralField achieved;          // z(T, u*)
  SpectralField reachable_target;  // live-mode part of z_T
  SpectralField obstructed_target; // dead-mode part of z_T
  double obstructed_norm = 0.0;    // omega-norm of the obstructed part
};

/// Throws UnreachableTargetError when the actuator has no live modes.
HUMSolution solve_hum(const LambdaOperator& lambda_op, const SpectralField& z_T,
                      const SpectralField& z0, double alpha, double T,
                      const EigenBasis& basis, const ActuatorSpec& actuator,
                      const ControllabilityReport& report, const QuadratureConfig& quad,
                      const MLFConfig& mlf = {}, int signal_samples = 512);

/// J(u) = int_0^T u(t)^2 dt. Exact on piecewise-linear signals; profile-tagged
/// signals integrate the closed form (alpha > 1/2 required, else the profile
/// has infinite energy and EvaluationError is raised).
double control_energy(const ControlSignal& u, const QuadratureConfig& quad = {});

/// sqrt(f^T M D_b G D_b M f); raises EvaluationError when the quadratic form
/// is below -1e-10 (assembly inconsistency).
double zstar_norm(const Eigen::VectorXd& f_coeffs, const TimeGramian& gramian,
                  const ModeGains& gains, const RegionMass& mass);

struct MinimalityTrial {
  double steering_change = 0.0;  // omega-norm of the state driven by v alone
  double energy_excess = 0.0;    // J(u*+v) - J(u*)
  double orthogonality = 0.0;    // int u* v dt
  double v_norm = 0.0;           // ||v||_{L2(0,T)}
  bool pass = false;
};

struct MinimalityReport {
  int kernel_dim = 0;
  std::vector<MinimalityTrial> trials;
  bool all_passed = false;
  double steering_tol = 0.0;
  double energy_slack = 1e-8;
  double ortho_tol = 1e-6;  // relative to ||u*|| ||v||
};

/// Draws `trials` random controls from the numerical kernel of the live-mode
/// input map (so they do not move the state at T), then checks steering
/// invariance, energy dominance J(u*+v) >= J(u*) - 1e-8 and orthogonality
/// of u* to each perturbation. A trivial kernel is reported, not an error.
MinimalityReport verify_minimality(const HUMSolution& solution, const LambdaOperator& lambda_op,
                                   const ModeGains& gains, const RegionMass& mass,
                                   const EigenBasis& basis, const ControllabilityReport& report,
                                   const QuadratureConfig& quad, int trials, unsigned seed,
                                   const MLFConfig& mlf = {});

}  // namespace fracctrl
