#pragma once

#include <vector>

#include "drheat/spherical_analysis.hpp"

namespace drheat {

enum class KernelPiece { full, local, global };  // t in (0,inf), (0,1), [1,inf)

/// k_sigma(r) = sup over the piece's t-range of e^{sigma t} t^i |d_t^i h_t(r)|.
struct MaximalKernelEval {
  double r = 0.0;
  double sigma = 0.0;
  int order = 0;
  KernelPiece piece = KernelPiece::full;
  double value = 0.0;
  double t_star = 0.0;
  bool divergent = false;  // sup unbounded (t -> 0 blow-up or sigma too large)
  bool boundary_max = false;  // sup attained at the scan boundary
};

struct MaximalKernelOptions {
  double t_floor = 1e-3;
  double t_cap = 0.0;          // 0: use max(50, 10 r)
  int points_per_decade = 64;
  double r_cutoff = 0.05;      // below this, i = 0 local sup diverges
};

MaximalKernelEval maximal_kernel(const HeatKernelOracle& oracle, double r,
                                 double sigma, int order, KernelPiece piece,
                                 const MaximalKernelOptions& opts = {});

/// Bound of the global pieces: e^{-(1-eps) Q r/2} e^{-(1-eps) r sqrt(Q^2/4 - sigma/(1-eps))}.
/// Requires sigma < (1-eps) Q^2/4.
double global_kernel_bound(const SpaceParams& p, double r, double sigma, double eps);

/// Large-r shape of phi_{i(1/p-1/2)Q}: e^{-Qr/p'} for 1 <= p < 2,
/// (1+r) e^{-Qr/2} for p = 2.
double spherical_asymptote(const SpaceParams& p, double lp_exponent, double r);

/// Boundedness threshold sigma < Q^2 / (p p').
double sigma_threshold(double Q, double p);

enum class IntegrabilityFlag { convergent, divergent, indeterminate };

const char* to_string(IntegrabilityFlag f);

/// Sign of the large-r exponent Q/p - Q/2 - sqrt(Q^2/4 - sigma) (eps -> 0):
/// negative means the global integral converges.
IntegrabilityFlag analytic_integrability_flag(double Q, double p, double sigma);

/// Which integrand feeds the integrability probe: the measured global
/// maximal kernel, or its analytic bound (eps fixed inside the report).
enum class ProbeIntegrand { oracle, bound };

/// Probe of int_0^1 r^{n-1} k_sigma^inf dr + int_1^{rmax} e^{Qr/p} k_sigma^inf dr
/// (extra (1+r) factor at p = 2), with partial values at increasing rmax and
/// a geometric-increment convergence flag.
struct LpProbeReport {
  double p = 0.0;
  double sigma = 0.0;
  double threshold = 0.0;
  IntegrabilityFlag flag = IntegrabilityFlag::indeterminate;
  std::vector<double> r_max_values;
  std::vector<double> partial_values;
  std::vector<std::pair<double, double>> t_star_profile;  // (r, t_star)
  bool kernel_divergent = false;
  int order = 0;
  ProbeIntegrand integrand = ProbeIntegrand::oracle;
  double eps = 0.0;
};

LpProbeReport lp_integrability_probe(const HeatKernelOracle& oracle, double p,
                                     double sigma, int order,
                                     ProbeIntegrand integrand = ProbeIntegrand::oracle,
                                     double eps = 0.05,
                                     const std::vector<double>& r_max_values = {10.0,
                                                                                20.0,
                                                                                40.0});

/// Profile of k_sigma^inf on given radii (for CSV export).
std::vector<MaximalKernelEval> global_kernel_profile(const HeatKernelOracle& oracle,
                                                     const std::vector<double>& radii,
                                                     double sigma, int order);

}  // namespace drheat
