#include <cmath>
#include <complex>

#include "doctest.h"
#include "drheat/quadrature.hpp"
#include "drheat/special_functions.hpp"

using namespace drheat;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  for (int n : {4, 16, 24}) {
    // GL-n is exact up to degree 2n-1; the odd power integrates to zero.
    const int deg = 2 * n - 1;
    auto f = [deg](double x) { return std::pow(x, deg) + 3.0 * x * x; };
    CHECK(integrate_gl(f, -1.0, 1.0, n) == doctest::Approx(2.0).epsilon(1e-13));
  }
  CHECK(integrate_gl([](double x) { return std::exp(x); }, 0.0, 1.0, 24) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature hits known integrals") {
  auto r1 = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI);
  CHECK(r1.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r1.converged);

  // Oscillatory: int_0^10 cos(20 x) dx = sin(200)/20.
  auto r2 = integrate_adaptive([](double x) { return std::cos(20.0 * x); }, 0.0, 10.0);
  CHECK(r2.value == doctest::Approx(std::sin(200.0) / 20.0).epsilon(1e-9));

  // Gaussian: int_0^8 e^{-x^2} = sqrt(pi)/2 erf(8).
  auto r3 = integrate_adaptive([](double x) { return std::exp(-x * x); }, 0.0, 8.0);
  CHECK(r3.value == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("complex log gamma anchors") {
  using cd = std::complex<double>;
  CHECK(std::exp(lgamma_complex(cd(0.5, 0.0))).real() ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(std::exp(lgamma_complex(cd(5.0, 0.0))).real() ==
        doctest::Approx(24.0).epsilon(1e-12));

  // |Gamma(iy)|^2 = pi / (y sinh(pi y)).
  for (double y : {0.3, 1.0, 2.5}) {
    const double lg2 = 2.0 * lgamma_complex(cd(0.0, y)).real();
    CHECK(std::exp(lg2) ==
          doctest::Approx(M_PI / (y * std::sinh(M_PI * y))).epsilon(1e-11));
  }
  // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y).
  for (double y : {0.5, 3.0}) {
    const double lg2 = 2.0 * lgamma_complex(cd(0.5, y)).real();
    CHECK(std::exp(lg2) ==
          doctest::Approx(M_PI / std::cosh(M_PI * y)).epsilon(1e-11));
  }
  // Recurrence Gamma(z+1) = z Gamma(z) off the axes.
  const cd z(0.7, 1.3);
  const cd lhs = lgamma_complex(z + 1.0);
  const cd rhs = std::log(z) + lgamma_complex(z);
  CHECK(std::abs(std::exp(lhs) - std::exp(rhs)) < 1e-12 * std::abs(std::exp(lhs)));

  // Large imaginary part goes through the asymptotic log-sin branch.
  const cd big(0.0, 50.0);
  const double expect = M_PI / (50.0 * std::sinh(50.0 * M_PI));
  const double got = std::exp(2.0 * lgamma_complex(big).real());
  CHECK(got == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("sphere areas") {
  CHECK(sphere_area(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
}
