#include <cmath>
#include <random>

#include "doctest.h"
#include "drheat/lps_operators.hpp"

using namespace drheat;

TEST_CASE("sigma threshold arithmetic and duality") {
  CHECK(sigma_threshold(1.0, 2.0) == doctest::Approx(0.25));
  CHECK(sigma_threshold(2.0, 2.0) == doctest::Approx(1.0));
  CHECK(sigma_threshold(1.0, 4.0 / 3.0) == doctest::Approx(3.0 / 16.0));
  CHECK(sigma_threshold(1.0, 4.0) == doctest::Approx(3.0 / 16.0));
  // p <-> p' symmetry, maximum at p = 2
  for (double p : {1.1, 1.5, 1.9}) {
    const double pp = p / (p - 1.0);
    CHECK(sigma_threshold(3.0, p) == doctest::Approx(sigma_threshold(3.0, pp)));
    CHECK(sigma_threshold(3.0, p) < sigma_threshold(3.0, 2.0));
  }
  CHECK_THROWS_AS(sigma_threshold(1.0, 1.0), std::domain_error);
}

TEST_CASE("global kernel bound formulas") {
  SpaceParams p = SpaceParams::from_mk(2, 0);  // Q = 1
  // sigma = 0: e^{-(1-eps) Q r}
  for (double r : {0.5, 2.0, 7.0})
    CHECK(global_kernel_bound(p, r, 0.0, 0.25) ==
          doctest::Approx(std::exp(-0.75 * r)).epsilon(1e-13));
  // Q = 1, sigma = 3/16, eps = 1/4: inner root vanishes, bound = e^{-3r/8}.
  for (double r : {1.0, 4.0})
    CHECK(global_kernel_bound(p, r, 3.0 / 16.0, 0.25) ==
          doctest::Approx(std::exp(-3.0 * r / 8.0)).epsilon(1e-12));
  CHECK_THROWS_AS(global_kernel_bound(p, 1.0, 0.3, 0.25), std::domain_error);
}

TEST_CASE("spherical asymptote endpoints") {
  SpaceParams p = SpaceParams::from_mk(2, 1);
  CHECK(spherical_asymptote(p, 1.0, 5.0) == doctest::Approx(1.0));
  CHECK(spherical_asymptote(p, 2.0, 0.0) == doctest::Approx(1.0));
  CHECK(spherical_asymptote(p, 1.5, 3.0) ==
        doctest::Approx(std::exp(-2.0 * (1.0 - 1.0 / 1.5) * 3.0)).epsilon(1e-13));
  CHECK_THROWS_AS(spherical_asymptote(p, 2.5, 1.0), std::domain_error);
}

TEST_CASE("analytic integrability flag") {
  const double Q = 1.0;
  for (double p : {4.0 / 3.0, 2.0}) {
    const double thr = sigma_threshold(Q, p);
    CHECK(analytic_integrability_flag(Q, p, 0.8 * thr) ==
          IntegrabilityFlag::convergent);
    CHECK(analytic_integrability_flag(Q, p, 1.25 * thr) ==
          IntegrabilityFlag::divergent);
  }
}

TEST_CASE("maximal kernel: finite with recorded interior maximizer") {
  HeatKernelOracle oracle(SpaceParams::from_mk(2, 0));
  MaximalKernelEval kv = maximal_kernel(oracle, 2.0, 0.0, 1, KernelPiece::full);
  CHECK(!kv.divergent);
  CHECK(kv.value > 0.0);
  CHECK(kv.t_star > 1e-3);
  CHECK(kv.t_star < 50.0);

  // stability under a denser grid (1%)
  MaximalKernelOptions dense;
  dense.points_per_decade = 128;
  MaximalKernelEval kd = maximal_kernel(oracle, 2.0, 0.0, 1, KernelPiece::full, dense);
  CHECK(kd.value == doctest::Approx(kv.value).epsilon(0.01));
}

TEST_CASE("maximal kernel divergence flags") {
  HeatKernelOracle oracle(SpaceParams::from_mk(2, 0));
  // on-diagonal small-time blow-up at i = 0
  MaximalKernelEval kv = maximal_kernel(oracle, 0.0, 0.0, 0, KernelPiece::full);
  CHECK(kv.divergent);
  // sigma beyond Q^2/4: non-decaying global tail
  MaximalKernelEval kg = maximal_kernel(oracle, 2.0, 0.30, 0, KernelPiece::global);
  CHECK(kg.divergent);
}

TEST_CASE("piece consistency: full = max(local, global)") {
  HeatKernelOracle oracle(SpaceParams::from_mk(2, 1));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ur(1.0, 8.0), us(0.0, 0.5), ui(0.0, 1.0);
  const double Q = oracle.params().Q();
  for (int it = 0; it < 20; ++it) {
    const double r = ur(rng);
    const double sigma = us(rng) * 0.8 * 0.25 * Q * Q;
    const int i = ui(rng) < 0.5 ? 1 : 2;
    MaximalKernelEval full = maximal_kernel(oracle, r, sigma, i, KernelPiece::full);
    MaximalKernelEval loc = maximal_kernel(oracle, r, sigma, i, KernelPiece::local);
    MaximalKernelEval glob = maximal_kernel(oracle, r, sigma, i, KernelPiece::global);
    CHECK(full.value ==
          doctest::Approx(std::max(loc.value, glob.value)).epsilon(1e-6));
  }
}

TEST_CASE("global kernel profile: non-increasing in r and dominated by the bound") {
  SpaceParams p = SpaceParams::from_mk(2, 0);
  HeatKernelOracle oracle(p);
  const double sigma = 0.125 * p.Q() * p.Q();  // Q^2/8
  std::vector<double> radii;
  for (double r = 1.0; r <= 20.0; r += 1.0) radii.push_back(r);
  auto prof = global_kernel_profile(oracle, radii, sigma, 0);

  double cmax = 0.0, cmax_course = 0.0;
  for (size_t j = 0; j < prof.size(); ++j) {
    CHECK(!prof[j].divergent);
    if (j > 0) CHECK(prof[j].value <= prof[j - 1].value * (1.0 + 1e-9));
    CHECK(prof[j].t_star < 50.0 * (1.0 - 1e-9) + 1e3);  // interior (T_max grows with r)
    const double b = global_kernel_bound(p, prof[j].r, sigma, 0.1);
    cmax = std::max(cmax, prof[j].value / b);
    if (j % 2 == 0) cmax_course = std::max(cmax_course, prof[j].value / b);
  }
  CHECK(std::isfinite(cmax));
  CHECK(cmax > 0.0);
  // grid-stability: halving the sample set keeps the constant
  CHECK(cmax_course == doctest::Approx(cmax).epsilon(0.35));
}

TEST_CASE("lp integrability probe brackets the threshold") {
  HeatKernelOracle oracle(SpaceParams::from_mk(2, 0));
  const double Q = 1.0;
  for (double p : {4.0 / 3.0, 2.0}) {
    const double thr = sigma_threshold(Q, p);
    for (ProbeIntegrand which : {ProbeIntegrand::oracle, ProbeIntegrand::bound}) {
      auto low = lp_integrability_probe(oracle, p, 0.8 * thr, 0, which);
      CHECK(low.flag == IntegrabilityFlag::convergent);
      CHECK(low.flag == analytic_integrability_flag(Q, p, 0.8 * thr));

      auto high = lp_integrability_probe(oracle, p, 1.25 * thr, 0, which);
      CHECK(high.flag == IntegrabilityFlag::divergent);
      CHECK(high.flag == analytic_integrability_flag(Q, p, 1.25 * thr));
    }
  }
}

TEST_CASE("lp probe: the r < 1 piece is finite on its own") {
  HeatKernelOracle oracle(SpaceParams::from_mk(2, 0));
  auto rep = lp_integrability_probe(oracle, 2.0, 0.1, 0, ProbeIntegrand::oracle,
                                    0.05, {1.0, 2.0, 4.0});
  CHECK(std::isfinite(rep.partial_values.front()));
  CHECK(rep.partial_values.front() > 0.0);
}
