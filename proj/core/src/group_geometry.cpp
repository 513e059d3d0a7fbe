#include "drheat/group_geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace drheat {

using Eigen::VectorXd;

SpaceParams SpaceParams::from_mk(int m, int k) {
  // Feasibility is the same constraint as for the algebra itself.
  if (k < 0 || m <= 0 || m % min_clifford_dim(k) != 0)
    throw std::invalid_argument("SpaceParams: infeasible (m, k) pair");
  return SpaceParams{m, k};
}

double BallPoint::norm() const { return std::sqrt(norm_sq()); }

GroupElement identity_element(const HTypeAlgebra& alg) {
  return GroupElement{VectorXd::Zero(alg.m), VectorXd::Zero(alg.k), 1.0};
}

GroupElement multiply(const HTypeAlgebra& alg, const GroupElement& g,
                      const GroupElement& h) {
  if (g.X.size() != alg.m || h.X.size() != alg.m || g.Z.size() != alg.k ||
      h.Z.size() != alg.k)
    throw std::invalid_argument("multiply: dimension mismatch");
  const double sa = std::sqrt(g.a);
  GroupElement out;
  out.X = g.X + sa * h.X;
  out.Z = g.Z + g.a * h.Z + 0.5 * sa * bracket(alg, g.X, h.X);
  out.a = g.a * h.a;
  return out;
}

GroupElement inverse(const HTypeAlgebra& alg, const GroupElement& g) {
  if (g.X.size() != alg.m || g.Z.size() != alg.k)
    throw std::invalid_argument("inverse: dimension mismatch");
  const double inv_a = 1.0 / g.a;
  return GroupElement{-std::sqrt(inv_a) * g.X, -inv_a * g.Z, inv_a};
}

BallPoint cayley(const HTypeAlgebra& alg, const GroupElement& g) {
  // With s = 1 + a + |X|^2/4 and D = s^2 + |Z|^2:
  //   X' = (s X - J_Z X) / D,  Z' = 2 Z / D,
  //   l' = (-1 + (a + |X|^2/4)^2 + |Z|^2) / D,
  // which satisfies 1 - |x'|^2 = 4a / D.
  const double u = g.a + 0.25 * g.X.squaredNorm();
  const double s = 1.0 + u;
  const double D = s * s + g.Z.squaredNorm();
  BallPoint out;
  out.Xp = (s * g.X - j_map(alg, g.Z, g.X)) / D;
  out.Zp = (2.0 / D) * g.Z;
  out.lp = (u * u - 1.0 + g.Z.squaredNorm()) / D;
  return out;
}

double distance_to_origin(const BallPoint& p) {
  const double rho = p.norm();
  if (rho >= 1.0) throw std::domain_error("distance_to_origin: point not in the ball");
  return std::log1p(2.0 * rho / (1.0 - rho));
}

double distance_to_identity(const HTypeAlgebra& alg, const GroupElement& g) {
  // r = 2 log(1 + rho) - log(1 - rho^2) with 1 - rho^2 = 4a/D computed exactly.
  const double u = g.a + 0.25 * g.X.squaredNorm();
  const double s = 1.0 + u;
  const double D = s * s + g.Z.squaredNorm();
  const double one_minus_rho_sq = 4.0 * g.a / D;
  const double rho = std::sqrt(std::max(0.0, 1.0 - one_minus_rho_sq));
  (void)alg;
  return 2.0 * std::log1p(rho) - std::log(one_minus_rho_sq);
}

double distance(const HTypeAlgebra& alg, const GroupElement& g,
                const GroupElement& h) {
  return distance_to_identity(alg, multiply(alg, inverse(alg, g), h));
}

double volume_density(const SpaceParams& p, double r) {
  if (r < 0.0) throw std::domain_error("volume_density: r must be >= 0");
  return std::pow(2.0 * std::sinh(0.5 * r), p.m + p.k) *
         std::pow(std::cosh(0.5 * r), p.k);
}

double log_volume_density(const SpaceParams& p, double r) {
  if (r <= 0.0) throw std::domain_error("log_volume_density: r must be > 0");
  // log(2 sinh x) = x + log1p(-e^{-2x}), log(cosh x) = x + log1p(e^{-2x}) - log 2.
  const double x = 0.5 * r;
  const double l2sh = x + std::log1p(-std::exp(-2.0 * x));
  const double lch = x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
  return (p.m + p.k) * l2sh + p.k * lch;
}

double haar_density(const SpaceParams& p, double a) {
  if (a <= 0.0) throw std::domain_error("haar_density: a must be > 0");
  return std::pow(a, -p.Q() - 1.0);
}

QuadResult radial_integral(const SpaceParams& p, const std::function<double(double)>& f,
                           double r_max, double rel_tol) {
  return integrate_adaptive([&](double r) { return f(r) * volume_density(p, r); }, 0.0,
                            r_max, rel_tol);
}

HaarSampler::HaarSampler(const HTypeAlgebra& alg, double sigma_x, double sigma_z,
                         double log_a_halfwidth, unsigned long seed)
    : alg_(&alg),
      sx_(sigma_x),
      sz_(sigma_z),
      la_(log_a_halfwidth),
      rng_(seed),
      gauss_(0.0, 1.0),
      unif_(-1.0, 1.0) {}

HaarSampler::Sample HaarSampler::draw() {
  const int m = alg_->m, k = alg_->k;
  GroupElement g;
  g.X.resize(m);
  g.Z.resize(k);
  double log_q = 0.0;  // log of the sampling density against dX dZ da
  for (int i = 0; i < m; ++i) {
    double x = gauss_(rng_) * sx_;
    g.X(i) = x;
    log_q += -0.5 * x * x / (sx_ * sx_) - std::log(sx_ * std::sqrt(2.0 * M_PI));
  }
  for (int i = 0; i < k; ++i) {
    double z = gauss_(rng_) * sz_;
    g.Z(i) = z;
    log_q += -0.5 * z * z / (sz_ * sz_) - std::log(sz_ * std::sqrt(2.0 * M_PI));
  }
  const double loga = unif_(rng_) * la_;
  g.a = std::exp(loga);
  log_q += -std::log(2.0 * la_) - loga;  // log a uniform => density 1/(2 la a) in da

  // Haar density against dX dZ da is a^{-Q-1}.
  const double log_density = -((0.5 * alg_->m + alg_->k) + 1.0) * loga;
  return Sample{g, std::exp(log_density - log_q)};
}

HaarSampler::Estimate HaarSampler::integrate(
    const std::function<double(const GroupElement&)>& f, long n) {
  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < n; ++i) {
    Sample s = draw();
    const double v = f(s.g) * s.weight;
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  return Estimate{mean, std::sqrt(var / n), n};
}

}  // namespace drheat
