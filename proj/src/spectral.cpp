#include "fracctrl/spectral.hpp"

#include <cmath>
#include <sstream>

#include "fracctrl/quadrature.hpp"

namespace fracctrl {

EigenBasis::EigenBasis(int n_modes) {
  if (n_modes < 1) throw std::domain_error("EigenBasis: n_modes must be >= 1");
  lambda_.resize(n_modes);
  for (int i = 1; i <= n_modes; ++i) lambda_(i - 1) = -double(i) * i * M_PI * M_PI;
}

double EigenBasis::eigenfunction(int mode, double x) {
  return std::sqrt(2.0) * std::sin(mode * M_PI * x);
}

EigenBasis build_basis(int n_modes) { return EigenBasis(n_modes); }

SpectralField SpectralField::unit(int n, int mode) {
  if (mode < 1 || mode > n) throw std::invalid_argument("SpectralField::unit: mode out of range");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  c(mode - 1) = 1.0;
  return SpectralField(std::move(c));
}

double evaluate_field(const SpectralField& field, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("evaluate_field: x must be in [0,1]");
  double v = 0.0;
  for (int i = 0; i < field.size(); ++i)
    v += field.coeffs(i) * EigenBasis::eigenfunction(i + 1, x);
  return v;
}

ExpansionResult expand_function(const std::function<double(double)>& f,
                                const EigenBasis& basis, int quad_nodes) {
  const int n = basis.n_modes();
  if (quad_nodes < 4 * n)
    throw std::invalid_argument("expand_function: quad_nodes must be >= 4*n_modes");

  auto project = [&](int nodes) {
    const int npp = 8;
    const int panels = std::max(1, nodes / npp);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    const GaussRule& rule = gauss_legendre(npp);
    const double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = (p + 0.5) * h;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double x = mid + 0.5 * h * rule.nodes[q];
        const double fx = f(x);
        if (!std::isfinite(fx)) {
          std::ostringstream os;
          os << "expand_function: non-finite sample f(" << x << ")";
          throw std::invalid_argument(os.str());
        }
        const double w = 0.5 * h * rule.weights[q];
        for (int i = 0; i < n; ++i)
          c(i) += w * fx * EigenBasis::eigenfunction(i + 1, x);
      }
    }
    return c;
  };

  const Eigen::VectorXd coarse = project(quad_nodes);
  const Eigen::VectorXd fine = project(2 * quad_nodes);
  ExpansionResult out;
  out.field = SpectralField(fine);
  out.quad_error = (fine - coarse).cwiseAbs().maxCoeff();
  return out;
}

Region::Region(double s1, double s2) : sigma1(s1), sigma2(s2) {
  if (!(0.0 <= s1 && s1 < s2 && s2 <= 1.0))
    throw std::domain_error("Region: need 0 <= sigma1 < sigma2 <= 1");
}

namespace {

// int_a^b 2 sin(i pi x) sin(j pi x) dx by the angle-difference antiderivative.
double overlap(int i, int j, double a, double b) {
  if (i == j) {
    const double w = 2.0 * i * M_PI;
    return (b - a) - (std::sin(w * b) - std::sin(w * a)) / w;
  }
  const double d = (i - j) * M_PI;
  const double s = (i + j) * M_PI;
  return (std::sin(d * b) - std::sin(d * a)) / d - (std::sin(s * b) - std::sin(s * a)) / s;
}

}  // namespace

RegionMass::RegionMass(const Region& region, const EigenBasis& basis) : region_(region) {
  const int n = basis.n_modes();
  mass_.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = overlap(i + 1, j + 1, region.sigma1, region.sigma2);
      mass_(i, j) = v;
      mass_(j, i) = v;
    }
}

RegionMass region_mass(const Region& region, const EigenBasis& basis) {
  return RegionMass(region, basis);
}

double restrict_norm(const SpectralField& field, const RegionMass& mass) {
  if (field.size() != mass.size())
    throw std::invalid_argument("restrict_norm: field/mass dimension mismatch");
  const double q = field.coeffs.dot(mass.matrix() * field.coeffs);
  return std::sqrt(std::max(0.0, q));
}

}  // namespace fracctrl
