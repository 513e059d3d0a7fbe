#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>

#include "drheat/htype_algebra.hpp"
#include "drheat/quadrature.hpp"

namespace drheat {

/// Derived constants of the solvable group S = N x R_+ built on an
/// (m, k) H-type algebra. Single source of truth for every formula:
///   n = m + k + 1 (manifold dimension),
///   Q = m/2 + k (homogeneous dimension),
///   Jacobi parameters alpha = (m+k-1)/2, beta = (k-1)/2.
struct SpaceParams {
  int m = 2;
  int k = 0;

  int n() const { return m + k + 1; }
  double Q() const { return 0.5 * m + k; }
  double jacobi_alpha() const { return 0.5 * (m + k - 1); }
  double jacobi_beta() const { return 0.5 * (k - 1); }

  static SpaceParams from_mk(int m, int k);
};

/// A point of S in solvable coordinates (X, Z, a), a > 0.
struct GroupElement {
  Eigen::VectorXd X;
  Eigen::VectorXd Z;
  double a = 1.0;
};

/// A point of the unit-ball model, |Xp|^2 + |Zp|^2 + lp^2 < 1.
struct BallPoint {
  Eigen::VectorXd Xp;
  Eigen::VectorXd Zp;
  double lp = 0.0;

  double norm_sq() const { return Xp.squaredNorm() + Zp.squaredNorm() + lp * lp; }
  double norm() const;
};

GroupElement identity_element(const HTypeAlgebra& alg);

/// Group law (X,Z,a)(X',Z',a') = (X + a^{1/2} X', Z + a Z' + (1/2) a^{1/2} [X,X'], a a').
GroupElement multiply(const HTypeAlgebra& alg, const GroupElement& g,
                      const GroupElement& h);

/// (-a^{-1/2} X, -a^{-1} Z, a^{-1}).
GroupElement inverse(const HTypeAlgebra& alg, const GroupElement& g);

/// Cayley transform onto the unit ball in the Lie algebra.
BallPoint cayley(const HTypeAlgebra& alg, const GroupElement& g);

/// Geodesic distance of a ball point to the origin: log((1+rho)/(1-rho)).
double distance_to_origin(const BallPoint& p);

/// Distance to the identity, computed stably from solvable coordinates.
double distance_to_identity(const HTypeAlgebra& alg, const GroupElement& g);

/// Left-invariant distance: d(g, h) = d(e, g^{-1} h).
double distance(const HTypeAlgebra& alg, const GroupElement& g,
                const GroupElement& h);

/// Polar volume density A(r) = 2^{m+k} sinh^{m+k}(r/2) cosh^k(r/2).
double volume_density(const SpaceParams& p, double r);
double log_volume_density(const SpaceParams& p, double r);

/// Haar density against dX dZ da: a^{-Q-1}.
double haar_density(const SpaceParams& p, double a);

/// Adaptive quadrature of int_0^{r_max} f(r) A(r) dr.
QuadResult radial_integral(const SpaceParams& p, const std::function<double(double)>& f,
                           double r_max, double rel_tol = 1e-9);

/// Importance sampler for the Haar measure: X, Z Gaussian, log a uniform,
/// weights dlambda/q. Used by the Monte Carlo consistency checks.
class HaarSampler {
 public:
  HaarSampler(const HTypeAlgebra& alg, double sigma_x, double sigma_z,
              double log_a_halfwidth, unsigned long seed);

  struct Sample {
    GroupElement g;
    double weight;
  };
  Sample draw();

  /// Monte Carlo estimate of int_S f dlambda with a standard-error estimate.
  struct Estimate {
    double value;
    double std_error;
    long samples;
  };
  Estimate integrate(const std::function<double(const GroupElement&)>& f, long n);

 private:
  const HTypeAlgebra* alg_;
  double sx_, sz_, la_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_;
  std::uniform_real_distribution<double> unif_;
};

}  // namespace drheat
