#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "drheat/group_geometry.hpp"

namespace drheat {

/// Radial eigenfunction phi_lambda of the Laplace-Beltrami operator,
///   phi'' + (A'/A) phi' + (lambda^2 + Q^2/4) phi = 0,
/// normalized by phi(0) = 1, phi'(0) = 0, evaluated on a grid.
/// lambda is real or purely imaginary.
struct SphericalEval {
  std::complex<double> lambda;
  std::vector<double> r_grid;
  std::vector<double> phi;
  std::vector<double> dphi;
};

SphericalEval phi_lambda(const SpaceParams& p, std::complex<double> lambda,
                         std::vector<double> r_grid);

/// Plancherel density |c(lambda)|^{-2} from the Gamma-function formula for
/// the Jacobi c-function with parameters (alpha, beta) and the r -> r/2
/// rescaling. Defined up to the overall spectral normalization, which the
/// heat-kernel oracle calibrates away.
double plancherel_density(const SpaceParams& p, double lambda);

/// Independent route: least-squares fit of the large-r asymptotics
/// phi_lambda(r) ~ 2 Re(c e^{(i lambda - Q/2) r}) of the ODE solution.
/// Agreement with plancherel_density certifies the Gamma formula.
double plancherel_density_fit(const SpaceParams& p, double lambda);

/// Closed-form heat kernel of the degenerate case (m, k) = (2, 0):
///   (4 pi t)^{-3/2} ((r/2)/sinh(r/2)) e^{-t/4 - r^2/(4t)}.
double exact_h3(double t, double r);

/// Residual of exact_h3 in the radial heat equation
/// d_t u = d_r^2 u + (A'/A) d_r u, A = 4 sinh^2(r/2), by central finite
/// differences. Used to certify the closed form before it serves as oracle.
double exact_h3_heat_residual(double t, double r);

struct QuadMeta {
  double lambda_max = 0.0;
  int nodes = 0;
  double est_error = 0.0;
};

struct KernelEval {
  double t = 0.0;
  double r = 0.0;
  int order = 0;            // time-derivative order i
  double value = 0.0;
  const char* oracle = "inversion";
  QuadMeta quad;
};

/// Heat kernel h_t(r) of S and its time derivatives, evaluated through the
/// inverse spherical transform
///   d_t^i h_t(r) = C int_0^inf (-(l^2+Q^2/4))^i e^{-(l^2+Q^2/4) t}
///                  phi_l(r) |c(l)|^{-2} dl.
/// Three internal evaluation paths share the same formula: phi from the ODE
/// for small r, phi from the Harish-Chandra series for large r, and a
/// saddle-adapted complex contour when r^2/(4t) is large (the Gaussian
/// factor is then extracted analytically, so the result keeps full relative
/// accuracy). The constant C is calibrated once by unit mass at t = 1.
class HeatKernelOracle {
 public:
  explicit HeatKernelOracle(SpaceParams p);
  ~HeatKernelOracle();
  HeatKernelOracle(HeatKernelOracle&&) noexcept;
  HeatKernelOracle& operator=(HeatKernelOracle&&) noexcept;

  const SpaceParams& params() const;

  /// d_t^order h_t(r). Not thread-safe; use one oracle per thread.
  KernelEval evaluate(double t, double r, int order = 0) const;

  /// Radial derivative d_r h_t(r).
  double gradient(double t, double r) const;

  /// omega_{n-1} int_0^R h_t(r) A(r) dr with R covering the Gaussian bulk.
  double mass(double t) const;

  /// omega_{n-1} int_0^R h_t(r)^2 A(r) dr (= h_{2t}(0) by the semigroup law).
  double self_convolution_at_origin(double t) const;

  /// Calibration constant C (computed lazily on first use).
  double calibration() const;

  /// Pre-solve the phi lines at every quadrature node needed for times
  /// down to t_min and derivative orders up to max_order, at the given
  /// radii. Batching radii here avoids re-solving ODE lines point by point.
  void prepare_radii(const std::vector<double>& radii, double t_min,
                     int max_order = 0) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace drheat
