// States as truncated Dirichlet-Laplacian eigenfunction expansions on [0,1],
// subregions omega = [sigma1,sigma2] and their mass matrices.
//
// Eigenpairs: lambda_i = -i^2 pi^2, xi_i(x) = sqrt(2) sin(i pi x), i = 1..N.
// A field is its coefficient vector c_i = (z, xi_i)_{L2(0,1)}; restriction to
// omega is implicit, inner products on omega go through the mass matrix
// M_ij = int_omega xi_i xi_j dx.
#pragma once

#include <Eigen/Dense>
#include <functional>

#include "fracctrl/errors.hpp"

namespace fracctrl {

class EigenBasis {
 public:
  explicit EigenBasis(int n_modes);

  int n_modes() const { return static_cast<int>(lambda_.size()); }
  const Eigen::VectorXd& eigenvalues() const { return lambda_; }
  double eigenvalue(int mode) const { return lambda_(mode - 1); }  // 1-based
  static double eigenfunction(int mode, double x);                 // xi_i(x)

 private:
  Eigen::VectorXd lambda_;
};

EigenBasis build_basis(int n_modes);

struct SpectralField {
  Eigen::VectorXd coeffs;

  SpectralField() = default;
  explicit SpectralField(Eigen::VectorXd c) : coeffs(std::move(c)) {}
  static SpectralField zero(int n) { return SpectralField(Eigen::VectorXd::Zero(n)); }
  static SpectralField unit(int n, int mode);  // e_mode, 1-based

  int size() const { return static_cast<int>(coeffs.size()); }
  double norm() const { return coeffs.norm(); }  // L2(0,1) norm by Parseval
};

/// Pointwise value sum_i c_i sqrt(2) sin(i pi x); x must lie in [0,1].
double evaluate_field(const SpectralField& field, double x);

struct ExpansionResult {
  SpectralField field;
  double quad_error = 0.0;  // max coefficient change under node doubling
};

/// L2 projection of f onto the basis by composite Gauss-Legendre quadrature
/// with `quad_nodes` nodes (>= 4N); the returned coefficients come from the
/// doubled rule, the error is the change the doubling produced.
ExpansionResult expand_function(const std::function<double(double)>& f,
                                const EigenBasis& basis, int quad_nodes);

struct Region {
  double sigma1;
  double sigma2;
  Region(double s1, double s2);

  double measure() const { return sigma2 - sigma1; }
};

class RegionMass {
 public:
  RegionMass(const Region& region, const EigenBasis& basis);

  const Eigen::MatrixXd& matrix() const { return mass_; }
  int size() const { return static_cast<int>(mass_.rows()); }
  const Region& region() const { return region_; }

 private:
  Region region_;
  Eigen::MatrixXd mass_;
};

RegionMass region_mass(const Region& region, const EigenBasis& basis);

/// ||p_omega z||_{L2(omega)} = sqrt(c^T M c).
double restrict_norm(const SpectralField& field, const RegionMass& mass);

}  // namespace fracctrl
