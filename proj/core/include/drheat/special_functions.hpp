#pragma once

#include <complex>

namespace drheat {

/// Principal-branch log Gamma for complex arguments (Lanczos approximation,
/// reflection formula for Re z < 1/2). Accurate to ~1e-13 relative.
std::complex<double> lgamma_complex(std::complex<double> z);

/// Surface area of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

}  // namespace drheat
