#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace drheat {

/// Result of an adaptive quadrature, with an a-posteriori error estimate.
struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;   // estimated absolute error
  int evaluations = 0;      // number of integrand evaluations
  bool converged = true;
};

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence and cached per order.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int n);

/// Fixed Gauss-Legendre integration of f over [a, b].
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
/// Subdivides until the local error estimates satisfy
///   sum(err) <= max(abs_tol, rel_tol * |integral|).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol = 1e-9, double abs_tol = 0.0,
                              int max_intervals = 4000);

}  // namespace drheat
