#pragma once

#include <memory>
#include <vector>

#include "drheat/spherical_analysis.hpp"

namespace drheat {

/// Parameter six-tuple of a two-sided decay estimate
///   |f_r(t)| <= c t^{-alpha} (1+t)^{beta} (1+r)^{gamma} e^{-D t - B r - C r^2/(4t)}.
struct BoundParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double D = 0.0;
  double B = 0.0;
  double C = 0.0;
};

/// Mean-value-theorem propagation: from bounds of the above shape on f
/// (params p) and on f'' (params p_star, with alpha+2 implied), a bound of
/// the same shape follows for f', with
///   alpha+1, beta, gamma unchanged, and exponents
///   ((D+D*)/2, (B+B*)/2, (C* + C lambda_eps)/2),  lambda_eps = (1-eps)/(1+eps).
/// Requires alpha > beta >= 0, D >= D*, B >= B*, C >= C* >= 0.
BoundParams propagate_derivative_bound(const BoundParams& p,
                                       const BoundParams& p_star, double eps);

/// Evaluate the bound shape at (t, r).
double bound_shape(const BoundParams& p, double t, double r);

/// The coupled linear recurrences
///   beta_l^i  = (beta_{l-1}^{i-1} + beta_{l-1}^{i+1}) / 2,
///   gamma_l^i = (lambda_eps gamma_{l-1}^{i-1} + gamma_{l-1}^{i+1}) / 2,
/// with beta_0^i = gamma_0^i = 0 for i >= 1 and beta_l^0 = gamma_l^0 = 1.
/// Row l needs row l-1 up to column i+1, so the fill works on an internal
/// trapezoid of width I + L.
struct RecurrenceTable {
  double epsilon = 0.0;
  double lambda_eps = 0.0;
  int L = 0;
  int I = 0;
  std::vector<double> beta_data;   // (L+1) x (I+1), row-major
  std::vector<double> gamma_data;

  double beta(int l, int i) const { return beta_data[l * (I + 1) + i]; }
  double gamma(int l, int i) const { return gamma_data[l * (I + 1) + i]; }
};

RecurrenceTable recurrence_table(double eps, int L, int I);

/// Closed-form limits as l -> infinity: gamma -> (1 - sqrt(1 - lambda_eps))^i,
/// beta -> 1.
double recurrence_limit_gamma(double eps, int i);
double recurrence_limit_beta(double eps, int i);

/// Iterated integrals f_0 = t^{n/2} (1+t)^{-m_e}, f_i(t) = int_0^t f_{i-1},
/// with m_e = (n-3)/2, represented exactly enough for 1e-8 relative error:
/// a power series around 0 and piecewise-Chebyshev antiderivatives beyond.
class GrigoryanSequence {
 public:
  GrigoryanSequence(const SpaceParams& p, int i_max, double t_max = 120.0);
  ~GrigoryanSequence();
  GrigoryanSequence(GrigoryanSequence&&) noexcept;

  int i_max() const;
  double decay_exponent() const;  // m_e = (n-3)/2

  double f(int i, double t) const;

  /// 1 / sqrt(f_0(t) f_{2i}(t)): the Gaussian-derivative upper bound shape.
  double bound(int i, double t) const;

  /// Provable constant in f_i >= c_i t^{n/2+i} (1+t)^{-m_e}:
  /// c_i = prod_{j=1..i} 1/(n/2 + j).
  double dominance_constant(int i) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Empirical-constant scan for the Gaussian bound on d_t^i h_t:
/// c_min = max over the grid of |d_t^i h_t(r)| /
///         [t^{-n/2-i} e^{-(1-eps)(Q^2 t/4 + Q r/2 + r^2/(4t))}].
struct ScanGrid {
  double t_min = 0.1;
  double t_max = 10.0;
  double r_max = 12.0;
  int t_points = 25;
  int r_points = 25;
};

struct BoundScanReport {
  double epsilon = 0.0;
  int order = 0;
  double c_min = 0.0;
  double argmax_t = 0.0;
  double argmax_r = 0.0;
  ScanGrid grid;
};

/// One oracle pass over the grid serves every epsilon in eps_list.
std::vector<BoundScanReport> gaussian_bound_scan(const HeatKernelOracle& oracle,
                                                 const std::vector<double>& eps_list,
                                                 int order, const ScanGrid& grid);

}  // namespace drheat
