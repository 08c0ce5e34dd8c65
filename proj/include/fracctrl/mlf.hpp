// Generalized Mittag-Leffler function E_{alpha,beta}(z) on the closed
// negative real axis, and the Wright-type density psi_alpha used by the
// moment diagnostics.
//
// Evaluation strategy for z <= 0, alpha in (0,1], beta > 0:
//   * z = 0                 -> 1/Gamma(beta)
//   * alpha = beta = 1      -> exp(z)
//   * power series          -> accepted only while the tracked cancellation
//                              bound stays below series_tol
//   * algebraic asymptotics -> -sum_k z^{-k}/Gamma(beta-alpha*k), accepted
//                              only when the truncation estimate meets
//                              series_tol
//   * spectral integral     -> int_0^inf K_{alpha,beta}(r,z) dr, the standard
//                              representation on the cut; covers the middle
//                              range where neither expansion reaches the
//                              requested accuracy in double precision
#pragma once

#include "fracctrl/errors.hpp"

namespace fracctrl {

struct MLFConfig {
  double series_tol = 1e-12;        // relative accuracy target
  int series_max_terms = 400;       // power-series term budget
  double asymptotic_crossover = 10.0;  // |z| above which asymptotics are tried first
  int asymptotic_terms = 8;         // asymptotic term budget

  void validate() const;  // throws std::domain_error
};

/// E_{alpha,beta}(z) for alpha in (0,1], beta > 0, z <= 0.
/// Throws std::domain_error on invalid parameters and EvaluationError when
/// no branch reaches the configured accuracy.
double mittag_leffler(double alpha, double beta, double z, const MLFConfig& cfg = {});

/// 1/Gamma(x) for any real x; exact zero at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x);

/// sin(pi*x) with argument reduction; exact zero at integer x.
double sin_pi(double x);

struct WrightResult {
  double value = 0.0;       // partial sum of the series for psi_alpha(theta)
  double tail_bound = 0.0;  // bound on the omitted tail (first omitted term
                            // once the terms alternate and decrease)
};

/// Wright-type density psi_alpha(theta) = (1/pi) sum_{n>=1} (-1)^{n-1}
/// theta^{-alpha*n-1} Gamma(n*alpha+1)/n! sin(n*pi*alpha), theta > 0.
/// Throws EvaluationError when theta is too small for the alternating series
/// to stay within representable range.
WrightResult wright_density(double alpha, double theta, int terms);

struct MomentCheck {
  double numeric_moment = 0.0;   // quadrature of int theta^nu phi_alpha(theta) dtheta
  double analytic_moment = 0.0;  // Gamma(1+nu)/Gamma(1+alpha*nu)
};

/// Self-test of the moment identity of phi_alpha(theta) =
/// (1/alpha) theta^{-1-1/alpha} psi_alpha(theta^{-1/alpha}).
/// nu in [0,2], quad_nodes >= 64.
MomentCheck phi_moment_check(double alpha, double nu, int quad_nodes);

namespace detail {

struct BranchResult {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
  bool accepted = false;
};

// Individual branch evaluators, exposed for the crossover-consistency tests.
BranchResult ml_series(double alpha, double beta, double z, const MLFConfig& cfg);
BranchResult ml_asymptotic(double alpha, double beta, double z, const MLFConfig& cfg);
BranchResult ml_integral(double alpha, double beta, double z, const MLFConfig& cfg);

}  // namespace detail

}  // namespace fracctrl
