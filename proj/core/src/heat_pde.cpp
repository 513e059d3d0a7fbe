#include "drheat/heat_pde.hpp"

#include <cmath>
#include <stdexcept>

#include "drheat/quadrature.hpp"

namespace drheat {

namespace {

// Finite-volume operator for u_t = (1/A) d_r (A u_r) on [0, r_max]:
// cell j owns [r_j - h/2, r_j + h/2] (half cell at j = 0), face fluxes
// A(face) (u_{j+1} - u_j)/h, Dirichlet u = 0 beyond the last cell.
struct RadialDiffusion {
  std::vector<double> face_area;  // A at faces r = (j + 1/2) h
  std::vector<double> cell_mass;  // integral of A over the cell
  double h;
  int N;

  RadialDiffusion(const SpaceParams& p, double dr, double r_max) : h(dr) {
    N = static_cast<int>(std::round(r_max / dr));
    face_area.resize(N);
    cell_mass.resize(N);
    for (int j = 0; j < N; ++j)
      face_area[j] = volume_density(p, (j + 0.5) * h);
    for (int j = 0; j < N; ++j) {
      const double a = std::max(0.0, (j - 0.5) * h), b = (j + 0.5) * h;
      cell_mass[j] = integrate_gl([&](double r) { return volume_density(p, r); },
                                  a, b, 6);
    }
  }

  void apply(const std::vector<double>& u, std::vector<double>* du) const {
    for (int j = 0; j < N; ++j) {
      const double flux_out =
          face_area[j] * ((j + 1 < N ? u[j + 1] : 0.0) - u[j]) / h;
      const double flux_in =
          (j == 0) ? 0.0 : face_area[j - 1] * (u[j] - u[j - 1]) / h;
      (*du)[j] = (flux_out - flux_in) / cell_mass[j];
    }
  }

  double mass(const std::vector<double>& u) const {
    double s = 0.0;
    for (int j = 0; j < N; ++j) s += cell_mass[j] * u[j];
    return s;
  }
};

}  // namespace

std::vector<double> heat_pde_crosscheck(const HeatKernelOracle& oracle,
                                        double t_final,
                                        const std::vector<double>& r_grid,
                                        double t0, double dr, double r_max,
                                        PdeReport* report) {
  if (t_final < t0) throw std::invalid_argument("heat_pde_crosscheck: t_final < t0");
  const SpaceParams& p = oracle.params();
  RadialDiffusion op(p, dr, r_max);

  std::vector<double> nodes(op.N);
  for (int j = 0; j < op.N; ++j) nodes[j] = j * dr;
  oracle.prepare_radii(nodes, t0, 0);
  std::vector<double> u(op.N);
  for (int j = 0; j < op.N; ++j) u[j] = oracle.evaluate(t0, nodes[j]).value;
  const double mass0 = op.mass(u);

  long steps = 0;
  double dt = 0.0;
  if (t_final > t0) {
    // Diffusive stability plus the advective limit from A'/A ~ (n-1)/r near 0.
    dt = dr * dr / (2.0 * p.n());
    steps = static_cast<long>(std::ceil((t_final - t0) / dt));
    dt = (t_final - t0) / steps;

    std::vector<double> k1(op.N), k2(op.N), k3(op.N), k4(op.N), tmp(op.N);
    for (long s = 0; s < steps; ++s) {
      op.apply(u, &k1);
      for (int j = 0; j < op.N; ++j) tmp[j] = u[j] + 0.5 * dt * k1[j];
      op.apply(tmp, &k2);
      for (int j = 0; j < op.N; ++j) tmp[j] = u[j] + 0.5 * dt * k2[j];
      op.apply(tmp, &k3);
      for (int j = 0; j < op.N; ++j) tmp[j] = u[j] + dt * k3[j];
      op.apply(tmp, &k4);
      for (int j = 0; j < op.N; ++j)
        u[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
  }

  if (report) {
    report->t0 = t0;
    report->t_final = t_final;
    report->dr = dr;
    report->dt = dt;
    report->steps = steps;
    report->r_max = r_max;
    report->mass_drift = std::abs(op.mass(u) - mass0) / mass0;
  }

  std::vector<double> out(r_grid.size());
  for (size_t i = 0; i < r_grid.size(); ++i) {
    const double x = r_grid[i] / dr;
    const int j = std::min(op.N - 2, std::max(0, static_cast<int>(x)));
    const double w = x - j;
    out[i] = (1.0 - w) * u[j] + w * u[j + 1];
  }
  return out;
}

}  // namespace drheat
