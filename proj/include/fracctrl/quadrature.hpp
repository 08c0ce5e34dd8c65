// Gauss-Legendre quadrature: reference rules on [-1,1] plus composite
// (optionally graded) panel integration with doubling-based error control.
#pragma once

#include <cmath>
#include <vector>

#include "fracctrl/errors.hpp"

namespace fracctrl {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Returns the cached n-point rule. Thread safe. n >= 1.
const GaussRule& gauss_legendre(int n);

/// Composite Gauss-Legendre over [a,b] with `panels` equal panels.
template <typename F>
double integrate_panels(F&& f, double a, double b, int panels, int nodes_per_panel) {
  const GaussRule& rule = gauss_legendre(nodes_per_panel);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
      acc += rule.weights[q] * f(mid + 0.5 * h * rule.nodes[q]);
    total += 0.5 * h * acc;
  }
  return total;
}

/// Composite Gauss-Legendre over [a,b] with panel boundaries graded toward
/// `a` as a + (b-a)*(j/panels)^grading. grading = 1 gives equal panels.
template <typename F>
double integrate_graded(F&& f, double a, double b, int panels, int nodes_per_panel,
                        double grading) {
  const GaussRule& rule = gauss_legendre(nodes_per_panel);
  double total = 0.0;
  double lo = a;
  for (int p = 1; p <= panels; ++p) {
    const double hi = a + (b - a) * std::pow(double(p) / panels, grading);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
      acc += rule.weights[q] * f(mid + half * rule.nodes[q]);
    total += half * acc;
    lo = hi;
  }
  return total;
}

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;  // change under the last panel doubling
  int panels = 0;
  bool converged = false;
};

/// Doubles the panel count until the value moves by no more than
/// max(rtol*|value|, atol). Starts from `panels0` panels.
template <typename F>
AdaptiveResult integrate_adaptive(F&& f, double a, double b, double rtol, double atol,
                                  int panels0, int nodes_per_panel, int max_panels,
                                  double grading = 1.0) {
  AdaptiveResult res;
  int panels = panels0;
  double prev = integrate_graded(f, a, b, panels, nodes_per_panel, grading);
  while (panels < max_panels) {
    panels *= 2;
    const double cur = integrate_graded(f, a, b, panels, nodes_per_panel, grading);
    res.value = cur;
    res.error = std::abs(cur - prev);
    res.panels = panels;
    if (res.error <= std::max(rtol * std::abs(cur), atol)) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  res.converged = false;
  return res;
}

}  // namespace fracctrl
