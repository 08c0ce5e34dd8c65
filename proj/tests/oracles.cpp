#include "oracles.hpp"

#include <quadmath.h>

#include <cmath>
#include <stdexcept>

namespace oracles {

double mlf_series(double alpha, double beta, double z, int terms, double* noise_bound) {
  const __float128 a = alpha, b = beta, zq = z;
  __float128 sum = 0;
  __float128 zpow = 1;
  __float128 peak = 0;
  __float128 last = 0;
  for (int k = 0; k < terms; ++k) {
    const __float128 term = zpow / tgammaq(a * k + b);
    sum += term;
    peak = std::max<__float128>(peak, fabsq(term));
    last = fabsq(term);
    zpow *= zq;
  }
  if (noise_bound) {
    // cancellation noise plus the truncation remainder (huge if the series
    // was cut mid-hump)
    const __float128 eps128 = FLT128_EPSILON;
    *noise_bound = sum == 0 ? 1.0
                            : static_cast<double>((peak * eps128 + last) / fabsq(sum));
  }
  return static_cast<double>(sum);
}

double mlf_half_erfc(double z) {
  if (z > 0.0) throw std::invalid_argument("mlf_half_erfc: z must be <= 0");
  return std::exp(z * z) * std::erfc(-z);
}

double wright_half(double theta) {
  return std::pow(theta, -1.5) * std::exp(-1.0 / (4.0 * theta)) / (2.0 * std::sqrt(M_PI));
}

double simpson(const std::vector<double>& samples, double a, double b) {
  const std::size_t n = samples.size() - 1;
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("simpson: need an even interval count");
  const double h = (b - a) / n;
  double acc = samples.front() + samples.back();
  for (std::size_t i = 1; i < n; ++i) acc += samples[i] * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace oracles
