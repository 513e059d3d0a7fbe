#pragma once

#include <vector>

#include "drheat/spherical_analysis.hpp"

namespace drheat {

struct PdeReport {
  double t0 = 0.0;
  double t_final = 0.0;
  double dr = 0.0;
  double dt = 0.0;
  long steps = 0;
  double r_max = 0.0;
  double mass_drift = 0.0;  // relative change of the discrete mass
};

/// Method-of-lines cross-check of the inversion oracle: evolve
/// d_t u = d_r^2 u + (A'/A) d_r u from the oracle profile at t0 and return
/// the solution at t_final on r_grid. Finite-volume flux discretization
/// (conserves the discrete mass up to the boundary), fixed-step RK4 within
/// the diffusive stability limit.
std::vector<double> heat_pde_crosscheck(const HeatKernelOracle& oracle,
                                        double t_final,
                                        const std::vector<double>& r_grid,
                                        double t0 = 0.05, double dr = 0.01,
                                        double r_max = 16.0,
                                        PdeReport* report = nullptr);

}  // namespace drheat
