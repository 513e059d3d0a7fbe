#include <cmath>
#include <complex>

#include "doctest.h"
#include "drheat/spherical_analysis.hpp"

using namespace drheat;
using cd = std::complex<double>;

namespace {

// 6th-order central first-derivative stencil on step h.
double fd6_derivative(const std::vector<double>& v, size_t j, double h) {
  return (-v[j - 3] + 9.0 * v[j - 2] - 45.0 * v[j - 1] + 45.0 * v[j + 1] -
          9.0 * v[j + 2] + v[j + 3]) /
         (60.0 * h);
}

double log_derivative_A(const SpaceParams& p, double r) {
  const double x = 0.5 * r;
  return 0.5 * (p.m + p.k) / std::tanh(x) + 0.5 * p.k * std::tanh(x);
}

// Max eigen-equation residual of a solved phi line on a uniform grid,
// with phi'' estimated independently by finite differences of phi'.
double max_residual(const SpaceParams& p, cd lambda, double r_lo, double r_hi,
                    double h) {
  std::vector<double> grid;
  for (double r = r_lo; r <= r_hi + 1e-12; r += h) grid.push_back(r);
  SphericalEval ev = phi_lambda(p, lambda, grid);
  const double eig = (lambda * lambda).real() + 0.25 * p.Q() * p.Q();
  double worst = 0.0;
  for (size_t j = 3; j + 3 < grid.size(); ++j) {
    const double ddphi = fd6_derivative(ev.dphi, j, h);
    const double res =
        ddphi + log_derivative_A(p, grid[j]) * ev.dphi[j] + eig * ev.phi[j];
    worst = std::max(worst, std::abs(res));
    // cross-check phi' against differences of phi as well
    const double dphi_fd = fd6_derivative(ev.phi, j, h);
    worst = std::max(worst, std::abs(dphi_fd - ev.dphi[j]));
  }
  return worst;
}

}  // namespace

TEST_CASE("phi normalization and the constant eigenfunction") {
  for (auto [m, k] : {std::pair{2, 0}, {2, 1}, {8, 1}}) {
    SpaceParams p = SpaceParams::from_mk(m, k);
    SphericalEval at0 = phi_lambda(p, cd(1.3, 0.0), {0.0, 1e-5});
    CHECK(at0.phi[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(at0.dphi[0] == 0.0);

    // lambda = i Q/2 has eigenvalue 0, so phi is identically 1.
    SphericalEval flat = phi_lambda(p, cd(0.0, 0.5 * p.Q()), {0.5, 3.0, 10.0, 25.0});
    for (double v : flat.phi) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("phi closed form for (2,0): sin(lambda r)/(2 lambda sinh(r/2))") {
  SpaceParams p = SpaceParams::from_mk(2, 0);
  std::vector<double> grid;
  for (double r = 0.2; r <= 12.0; r += 0.2) grid.push_back(r);
  for (double lam : {0.5, 1.0, 2.0, 4.0}) {
    SphericalEval ev = phi_lambda(p, cd(lam, 0.0), grid);
    for (size_t j = 0; j < grid.size(); ++j) {
      const double r = grid[j];
      const double exact = std::sin(lam * r) / (2.0 * lam * std::sinh(0.5 * r));
      CHECK(ev.phi[j] == doctest::Approx(exact).epsilon(1e-8));
    }
  }
}

TEST_CASE("eigen-equation residual below 1e-8 for real and imaginary lambda") {
  for (auto [m, k] : {std::pair{2, 0}, {2, 1}}) {
    SpaceParams p = SpaceParams::from_mk(m, k);
    for (double lam : {0.5, 1.0, 2.0, 4.0}) {
      CHECK(max_residual(p, cd(lam, 0.0), 0.05, 30.0, 0.01) <= 1e-8);
    }
    CHECK(max_residual(p, cd(0.0, 0.3 * p.Q()), 0.05, 30.0, 0.01) <= 1e-8);
  }
}

TEST_CASE("series region: the expansion at 0 satisfies the equation") {
  SpaceParams p = SpaceParams::from_mk(2, 1);
  // Evaluate phi and phi' from the series start (r below the switch radius)
  // and check the second derivative from the ODE against finite differences.
  const double lam = 2.0;
  const double eig = lam * lam + 0.25 * p.Q() * p.Q();
  const double h = 1e-5;
  for (double r : {2e-4, 5e-4, 8e-4}) {
    SphericalEval ev = phi_lambda(p, cd(lam, 0.0),
                                  {r - 2 * h, r - h, r, r + h, r + 2 * h});
    const double ddphi =
        (-ev.phi[0] + 16 * ev.phi[1] - 30 * ev.phi[2] + 16 * ev.phi[3] - ev.phi[4]) /
        (12 * h * h);
    const double res = ddphi + log_derivative_A(p, r) * ev.dphi[2] + eig * ev.phi[2];
    CHECK(std::abs(res) <= 1e-6);
  }
}

TEST_CASE("phi symmetry in lambda") {
  SpaceParams p = SpaceParams::from_mk(2, 1);
  std::vector<double> grid{0.5, 2.0, 7.0};
  SphericalEval plus = phi_lambda(p, cd(1.7, 0.0), grid);
  SphericalEval minus = phi_lambda(p, cd(-1.7, 0.0), grid);
  for (size_t j = 0; j < grid.size(); ++j)
    CHECK(plus.phi[j] == doctest::Approx(minus.phi[j]).epsilon(1e-14));
}

TEST_CASE("plancherel density: Gamma formula vs asymptotic fit") {
  for (auto [m, k] : {std::pair{2, 0}, {2, 1}, {8, 1}}) {
    SpaceParams p = SpaceParams::from_mk(m, k);
    for (double lam : {0.5, 1.0, 2.0, 4.0}) {
      const double a = plancherel_density(p, lam);
      const double b = plancherel_density_fit(p, lam);
      CHECK(a == doctest::Approx(b).epsilon(1e-6));
    }
  }
}

TEST_CASE("plancherel density for (2,0) is 4 lambda^2") {
  SpaceParams p = SpaceParams::from_mk(2, 0);
  for (double lam : {0.5, 1.0, 2.0, 5.0}) {
    CHECK(plancherel_density(p, lam) ==
          doctest::Approx(4.0 * lam * lam).epsilon(1e-10));
    CHECK(plancherel_density_fit(p, lam) ==
          doctest::Approx(4.0 * lam * lam).epsilon(1e-6));
  }
}

TEST_CASE("plancherel density vanishes like lambda^2 at 0") {
  for (auto [m, k] : {std::pair{2, 0}, {2, 1}}) {
    SpaceParams p = SpaceParams::from_mk(m, k);
    const double ratio = plancherel_density(p, 1e-3) / plancherel_density(p, 2e-3);
    CHECK(ratio == doctest::Approx(0.25).epsilon(0.05));
  }
}

TEST_CASE("exact h3 closed form self-certification") {
  // Small-r limit.
  for (double t : {0.3, 1.0, 4.0}) {
    CHECK(exact_h3(t, 1e-10) ==
          doctest::Approx(std::pow(4.0 * M_PI * t, -1.5) * std::exp(-0.25 * t))
              .epsilon(1e-12));
  }
  // Heat-equation residual on the certification grid.
  for (double t : {0.5, 1.0, 2.0})
    for (double r : {0.5, 1.0, 2.0, 4.0})
      CHECK(std::abs(exact_h3_heat_residual(t, r)) <= 1e-6);
}

TEST_CASE("phi asymptotics along the p-line stay in a narrow band") {
  // phi_{i(1/p - 1/2)Q} compared with e^{-Qr/p'} (p < 2) or (1+r) e^{-Qr/2}
  // (p = 2); the band ratio over r in [1, 30] must stay below 20.
  for (auto [m, k] : {std::pair{2, 0}, {2, 1}}) {
    SpaceParams p = SpaceParams::from_mk(m, k);
    const double Q = p.Q();
    std::vector<double> grid;
    for (double r = 1.0; r <= 30.0 + 1e-9; r += 0.25) grid.push_back(r);
    for (double pe : {1.2, 1.5, 2.0}) {
      const double s = (1.0 / pe - 0.5) * Q;
      SphericalEval ev = phi_lambda(p, cd(0.0, s), grid);
      double lo = 1e300, hi = 0.0;
      for (size_t j = 0; j < grid.size(); ++j) {
        const double r = grid[j];
        const double shape = (pe >= 2.0) ? (1.0 + r) * std::exp(-0.5 * Q * r)
                                         : std::exp(-Q * (1.0 - 1.0 / pe) * r);
        const double ratio = ev.phi[j] / shape;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
      CHECK(lo > 0.0);
      CHECK(hi / lo <= 20.0);
    }
  }
}
