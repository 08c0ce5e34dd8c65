#include "fracctrl/mlf.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracctrl/quadrature.hpp"

namespace fracctrl {

void MLFConfig::validate() const {
  if (!(series_tol > 0.0)) throw std::domain_error("MLFConfig: series_tol must be > 0");
  if (series_max_terms < 50)
    throw std::domain_error("MLFConfig: series_max_terms must be >= 50");
  if (!(asymptotic_crossover > 0.0))
    throw std::domain_error("MLFConfig: asymptotic_crossover must be > 0");
  if (asymptotic_terms < 1)
    throw std::domain_error("MLFConfig: asymptotic_terms must be >= 1");
}

double sin_pi(double x) {
  // Reduce to |r| <= 1/2 so large arguments keep full precision.
  double r = std::remainder(x, 2.0);  // r in [-1,1]
  if (r == std::floor(r)) return 0.0;
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(M_PI * r);
}

double reciprocal_gamma(double x) {
  if (x > 0.5) {
    // Gamma(x) > 0 here; exp(-lgamma) underflows gracefully for huge x.
    return std::exp(-std::lgamma(x));
  }
  // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi.
  const double s = sin_pi(x);
  if (s == 0.0) return 0.0;  // poles of Gamma
  const double lg = std::lgamma(1.0 - x);
  // log-space guard against overflow of Gamma(1-x) for very negative x
  const double mag = lg + std::log(std::abs(s)) - std::log(M_PI);
  if (mag > 700.0)
    return (s > 0.0) ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
  return std::copysign(std::exp(mag), s);
}

namespace detail {

// Power series sum_k z^k / Gamma(alpha k + beta) in 80-bit long double with
// compensated summation and a running cancellation bound (terms are formed
// in log space, so the bound carries the exp/lgamma noise, which grows with
// the exponent). The extra mantissa pushes the usable range to moderately
// large |z| before the alternating cancellation eats the tolerance.
BranchResult ml_series(double alpha, double beta, double z, const MLFConfig& cfg) {
  BranchResult res;
  if (z == 0.0) {
    res.value = reciprocal_gamma(beta);
    res.error = std::abs(res.value) * DBL_EPSILON;
    res.accepted = true;
    return res;
  }
  const long double logaz = std::log(std::abs((long double)z));
  long double sum = 0.0L, comp = 0.0L;  // Kahan
  long double err_acc = 0.0L;
  int small_streak = 0;
  bool converged = false;
  for (int k = 0; k < cfg.series_max_terms; ++k) {
    const long double expo = k * logaz - lgammal(alpha * (long double)k + beta);
    if (expo > 11300.0L) break;  // terms beyond long-double range
    long double term = expl(expo);
    if ((k & 1) && z < 0.0) term = -term;
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    err_acc += fabsl(term) * (2.0L + fabsl(expo)) * LDBL_EPSILON;
    if (fabsl(term) <= 0.25L * cfg.series_tol * fabsl(sum) + LDBL_MIN) {
      if (++small_streak >= 2) {
        converged = true;
        break;
      }
    } else {
      small_streak = 0;
    }
  }
  res.value = static_cast<double>(sum);
  res.error = static_cast<double>(err_acc) + std::abs(res.value) * DBL_EPSILON;
  res.accepted = converged && res.error <= cfg.series_tol * std::abs(res.value);
  return res;
}

// Algebraic expansion for z -> -inf:
//   E_{alpha,beta}(z) ~ -sum_{k=1..K} z^{-k} / Gamma(beta - alpha k).
// beta - alpha k landing on a Gamma pole kills the term; floating rounding
// would instead leave ~1e-20 noise there, so near-pole arguments snap to an
// exact zero (and never enter the magnitude bookkeeping). Truncation error
// is the first omitted nonzero term; the sum stops early at the onset of
// divergence.
BranchResult ml_asymptotic(double alpha, double beta, double z, const MLFConfig& cfg) {
  BranchResult res;
  if (z >= 0.0) return res;

  auto coeff = [&](int k) {  // 1/Gamma(beta - alpha k) with pole snapping
    const double x = beta - alpha * k;
    const double xr = std::round(x);
    if (xr <= 0.0 && std::abs(x - xr) < 1e-9) return 0.0;
    return reciprocal_gamma(x);
  };

  const double zinv = 1.0 / z;
  double sum = 0.0;
  double zpow = 1.0;
  double last_nonzero = std::numeric_limits<double>::infinity();
  double tail = std::numeric_limits<double>::infinity();
  int k = 1;
  for (; k <= cfg.asymptotic_terms; ++k) {
    zpow *= zinv;
    const double term = -zpow * coeff(k);
    const double mag = std::abs(term);
    if (mag > 0.0 && mag > last_nonzero) {
      tail = mag;  // divergence onset; this term is the first omitted
      break;
    }
    sum += term;
    if (mag > 0.0) last_nonzero = mag;
  }
  if (k > cfg.asymptotic_terms) {
    // budget exhausted: scan ahead for the first omitted nonzero magnitude
    tail = 0.0;
    for (int j = k; j < k + 8; ++j) {
      const double mag = std::abs(std::pow(std::abs(z), double(-j)) * coeff(j));
      if (mag > 0.0) {
        tail = mag;
        break;
      }
    }
  }
  // alpha = 1 carries an exponential term the algebraic expansion misses
  if (alpha == 1.0) tail += std::exp(z) * std::max(1.0, std::pow(std::abs(z), 1.0 - beta));

  res.value = sum;
  res.error = tail;
  res.accepted = std::isfinite(sum) && tail <= cfg.series_tol * std::abs(sum);
  return res;
}

// Spectral representation on the cut (0 < alpha < 1, beta <= 1 + alpha,
// z < 0):
//   E_{alpha,beta}(z) = int_0^inf K(r) dr,
//   K(r) = (1/(pi alpha)) r^{(1-beta)/alpha} exp(-r^{1/alpha})
//          * [ r sin(pi(1-beta)) - z sin(pi(1-beta+alpha)) ]
//          / ( r^2 - 2 r z cos(pi alpha) + z^2 ).
// The integrand is bounded at r = 0 for beta <= 1 and decays like
// exp(-r^{1/alpha}). Graded panels + doubling give the requested accuracy.
BranchResult ml_integral(double alpha, double beta, double z, const MLFConfig& cfg) {
  BranchResult res;
  if (!(alpha > 0.0 && alpha < 1.0) || z >= 0.0 || beta > 1.0 + alpha) return res;
  const double s1 = sin_pi(1.0 - beta);
  const double s2 = sin_pi(1.0 - beta + alpha);
  const double c = std::cos(M_PI * alpha);
  const double pref = 1.0 / (M_PI * alpha);
  const double pw = (1.0 - beta) / alpha;
  auto kernel = [&](double r) {
    const double num = r * s1 - z * s2;
    const double den = (r - z * c) * (r - z * c) + z * z * (1.0 - c * c);
    const double damp = std::exp(-std::pow(r, 1.0 / alpha));
    const double head = (pw == 0.0) ? 1.0 : std::pow(r, pw);
    return pref * head * damp * num / den;
  };
  const double cutoff = std::max({std::pow(45.0, alpha), 2.0 * std::abs(z), 2.0});
  AdaptiveResult ar = integrate_adaptive(kernel, 0.0, cutoff, 0.5 * cfg.series_tol,
                                         DBL_MIN, 12, 16, 1 << 14, 3.0);
  res.value = ar.value;
  res.error = ar.error;
  res.accepted = ar.converged || ar.error <= cfg.series_tol * std::abs(ar.value);
  return res;
}

}  // namespace detail

double mittag_leffler(double alpha, double beta, double z, const MLFConfig& cfg) {
  cfg.validate();
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("mittag_leffler: alpha must be in (0,1]");
  if (!(beta > 0.0)) throw std::domain_error("mittag_leffler: beta must be > 0");
  if (!(z <= 0.0)) throw std::domain_error("mittag_leffler: z must be <= 0");

  if (z == 0.0) return reciprocal_gamma(beta);
  if (alpha == 1.0 && beta == 1.0) return std::exp(z);  // E_{1,1} = exp

  const bool small = std::abs(z) <= cfg.asymptotic_crossover;
  detail::BranchResult first =
      small ? detail::ml_series(alpha, beta, z, cfg) : detail::ml_asymptotic(alpha, beta, z, cfg);
  if (first.accepted) return first.value;

  detail::BranchResult mid = detail::ml_integral(alpha, beta, z, cfg);
  if (mid.accepted) return mid.value;

  std::ostringstream os;
  os << "mittag_leffler: no branch converged for alpha=" << alpha << " beta=" << beta
     << " z=" << z << " (series err=" << first.error << ", integral err=" << mid.error
     << ")";
  throw EvaluationError(os.str());
}

WrightResult wright_density(double alpha, double theta, int terms) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("wright_density: alpha must be in (0,1)");
  if (!(theta > 0.0)) throw std::domain_error("wright_density: theta must be > 0");
  if (terms < 1) throw std::domain_error("wright_density: terms must be >= 1");

  const double logth = std::log(theta);
  double sum = 0.0, comp = 0.0;
  double prev_mag = std::numeric_limits<double>::infinity();
  bool decreasing = false;
  double next_mag = 0.0;
  for (int n = 1; n <= terms + 1; ++n) {
    const double expo =
        (-alpha * n - 1.0) * logth + std::lgamma(n * alpha + 1.0) - std::lgamma(n + 1.0);
    if (expo > 700.0) {
      std::ostringstream os;
      os << "wright_density: series unstable for alpha=" << alpha << " theta=" << theta
         << " (terms grow beyond representable range)";
      throw EvaluationError(os.str());
    }
    const double mag = std::exp(expo) * std::abs(sin_pi(n * alpha)) / M_PI;
    if (n > terms) {
      next_mag = mag;
      break;
    }
    double term = std::exp(expo) * sin_pi(n * alpha) / M_PI;
    if (n % 2 == 0) term = -term;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    decreasing = mag <= prev_mag;
    if (mag > 0.0) prev_mag = mag;
  }
  WrightResult res;
  res.value = sum;
  // Alternating once the magnitudes decrease: the first omitted term bounds
  // the tail. Before that regime the bound is not valid; report it large.
  res.tail_bound = decreasing ? next_mag : std::numeric_limits<double>::infinity();
  return res;
}

namespace {

// phi_alpha(theta) through the Wright series; series noise is capped by an
// absolute floor so the far tail (where the alternating series degrades)
// cannot pollute the moment at the diagnostic tolerance.
double phi_density(double alpha, double theta, int terms) {
  const double x = std::pow(theta, -1.0 / alpha);
  const WrightResult w = wright_density(alpha, x, terms);
  return std::pow(theta, -1.0 - 1.0 / alpha) * w.value / alpha;
}

// Stability probe: largest |term| of the psi series at argument x.
double wright_peak_term(double alpha, double x) {
  const double logx = std::log(x);
  double peak = 0.0;
  for (int n = 1; n <= 400; ++n) {
    const double expo =
        (-alpha * n - 1.0) * logx + std::lgamma(n * alpha + 1.0) - std::lgamma(n + 1.0);
    if (expo > 700.0) return std::numeric_limits<double>::infinity();
    peak = std::max(peak, std::exp(expo) / M_PI);
  }
  return peak;
}

}  // namespace

MomentCheck phi_moment_check(double alpha, double nu, int quad_nodes) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("phi_moment_check: alpha must be in (0,1)");
  if (!(nu >= 0.0 && nu <= 2.0)) throw std::domain_error("phi_moment_check: nu must be in [0,2]");
  if (quad_nodes < 64) throw std::domain_error("phi_moment_check: quad_nodes must be >= 64");

  MomentCheck out;
  out.analytic_moment = std::exp(std::lgamma(1.0 + nu) - std::lgamma(1.0 + alpha * nu));

  // Upper cutoff: grow Theta until the analytic tail bound of the integrand
  // drops below 1e-7, stopping early if the Wright series destabilizes
  // (peak-term noise above ~2e-9 absolute).  phi decays like
  // exp(-c theta^{1/(1-alpha)}) with c = (1-alpha) alpha^{alpha/(1-alpha)}.
  const double p = 1.0 / (1.0 - alpha);
  const double c = (1.0 - alpha) * std::pow(alpha, alpha / (1.0 - alpha));
  const int terms = 300;
  double cutoff = 2.0;
  for (;;) {
    const double x = std::pow(cutoff, -1.0 / alpha);
    if (wright_peak_term(alpha, x) * DBL_EPSILON > 2e-9) break;
    const double tail =
        phi_density(alpha, cutoff, terms) * std::pow(cutoff, nu) / (c * p * std::pow(cutoff, p - 1.0));
    if (tail < 1e-7) break;
    cutoff *= 1.25;
    if (cutoff > 64.0) break;
  }

  const int nodes_per_panel = 8;
  const int panels = std::max(8, quad_nodes / nodes_per_panel);
  out.numeric_moment = integrate_panels(
      [&](double theta) { return std::pow(theta, nu) * phi_density(alpha, theta, terms); },
      1e-12, cutoff, panels, nodes_per_panel);

  if (!std::isfinite(out.numeric_moment)) {
    std::ostringstream os;
    os << "phi_moment_check: quadrature failed for alpha=" << alpha << " nu=" << nu
       << " (partial sum " << out.numeric_moment << ")";
    throw EvaluationError(os.str());
  }
  return out;
}

}  // namespace fracctrl
