#include "fracctrl/actuators.hpp"

#include <cmath>

namespace fracctrl {

ActuatorSpec ActuatorSpec::zone(double a1, double a2) {
  if (!(0.0 <= a1 && a1 <= a2 && a2 <= 1.0))
    throw std::domain_error("ActuatorSpec::zone: need 0 <= a1 <= a2 <= 1");
  ActuatorSpec s;
  s.kind = Kind::Zone;
  s.a1 = a1;
  s.a2 = a2;
  return s;
}

ActuatorSpec ActuatorSpec::pointwise(double b) {
  if (!(0.0 < b && b < 1.0))
    throw std::domain_error("ActuatorSpec::pointwise: need 0 < b < 1");
  ActuatorSpec s;
  s.kind = Kind::Pointwise;
  s.b = b;
  return s;
}

ModeGains mode_gains(const ActuatorSpec& actuator, const EigenBasis& basis) {
  const int n = basis.n_modes();
  ModeGains g;
  g.b.resize(n);
  for (int i = 1; i <= n; ++i) {
    if (actuator.kind == ActuatorSpec::Kind::Zone) {
      // int_{a1}^{a2} sqrt(2) sin(i pi x) dx via the cosine antiderivative
      g.b(i - 1) =
          std::sqrt(2.0) / (i * M_PI) * (std::cos(i * M_PI * actuator.a1) - std::cos(i * M_PI * actuator.a2));
    } else {
      g.b(i - 1) = EigenBasis::eigenfunction(i, actuator.b);
    }
  }
  return g;
}

double apply_B_star(const ModeGains& gains, const SpectralField& field) {
  if (gains.size() != field.size())
    throw std::invalid_argument("apply_B_star: gains/field dimension mismatch");
  return gains.b.dot(field.coeffs);
}

}  // namespace fracctrl
