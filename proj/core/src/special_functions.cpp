#include "drheat/special_functions.hpp"

#include <cmath>

namespace drheat {

namespace {

// Lanczos coefficients, g = 7, n = 9 (Godfrey's set).
const double kLanczosG = 7.0;
const double kLanczos[9] = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

using cd = std::complex<double>;

// log(sin(pi z)) with overflow protection for large |Im z|.
cd log_sin_pi(cd z) {
  cd w = M_PI * z;
  double y = w.imag();
  if (y > 20.0) {
    // sin w ~ -exp(-iw)/(2i) = exp(-iw) * (i/2)
    return cd(0.0, -1.0) * w + cd(-std::log(2.0), M_PI_2);
  }
  if (y < -20.0) {
    return cd(0.0, 1.0) * w + cd(-std::log(2.0), -M_PI_2);
  }
  return std::log(std::sin(w));
}

}  // namespace

std::complex<double> lgamma_complex(std::complex<double> z) {
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::log(cd(M_PI, 0.0)) - log_sin_pi(z) - lgamma_complex(1.0 - z);
  }
  cd zm = z - 1.0;
  cd acc(kLanczos[0], 0.0);
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (zm + static_cast<double>(i));
  cd tmp = zm + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * M_PI) + (zm + 0.5) * std::log(tmp) - tmp + std::log(acc);
}

double sphere_area(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

}  // namespace drheat
