#include "drheat/lps_operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "drheat/quadrature.hpp"
#include "drheat/special_functions.hpp"

namespace drheat {

namespace {

double weighted_value(const HeatKernelOracle& oracle, double t, double r,
                      double sigma, int order) {
  const double v = std::abs(oracle.evaluate(t, r, order).value);
  if (v == 0.0) return 0.0;
  return std::exp(sigma * t + order * std::log(t) + std::log(v));
}

}  // namespace

MaximalKernelEval maximal_kernel(const HeatKernelOracle& oracle, double r,
                                 double sigma, int order, KernelPiece piece,
                                 const MaximalKernelOptions& opts) {
  MaximalKernelEval out;
  out.r = r;
  out.sigma = sigma;
  out.order = order;
  out.piece = piece;

  // On-diagonal blow-up: for i = 0 the sup over t -> 0 is infinite at r ~ 0.
  if (order == 0 && r < opts.r_cutoff && piece != KernelPiece::global) {
    out.divergent = true;
    return out;
  }

  double t_lo = opts.t_floor, t_hi = opts.t_cap > 0.0 ? opts.t_cap
                                                      : std::max(50.0, 10.0 * r);
  if (piece == KernelPiece::local) t_hi = 1.0;
  if (piece == KernelPiece::global) t_lo = 1.0;
  if (t_hi <= t_lo) throw std::invalid_argument("maximal_kernel: empty t-range");

  const int n_pts = std::max(
      8, static_cast<int>(std::ceil(opts.points_per_decade *
                                    std::log10(t_hi / t_lo))));
  std::vector<double> ts(n_pts), vals(n_pts);
  for (int j = 0; j < n_pts; ++j) {
    ts[j] = t_lo * std::pow(t_hi / t_lo, double(j) / (n_pts - 1));
    vals[j] = weighted_value(oracle, ts[j], r, sigma, order);
  }
  const int best =
      static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());

  if (best == n_pts - 1 && vals[n_pts - 1] > vals[n_pts - 2]) {
    // Non-decaying tail in t: sigma too large for a finite global sup.
    out.divergent = true;
    out.boundary_max = true;
    out.value = vals[best];
    out.t_star = ts[best];
    return out;
  }
  if (best == 0 && order == 0 && piece != KernelPiece::global &&
      vals[0] > vals[1]) {
    // Still growing toward the t-floor: small-time blow-up.
    out.divergent = true;
    out.boundary_max = true;
    out.value = vals[0];
    out.t_star = ts[0];
    return out;
  }

  // Golden-section refinement in log t around the best grid point.
  double a = std::log(ts[std::max(0, best - 1)]);
  double b = std::log(ts[std::min(n_pts - 1, best + 1)]);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = weighted_value(oracle, std::exp(x1), r, sigma, order);
  double f2 = weighted_value(oracle, std::exp(x2), r, sigma, order);
  for (int it = 0; it < 40 && (b - a) > 1e-10; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = weighted_value(oracle, std::exp(x2), r, sigma, order);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = weighted_value(oracle, std::exp(x1), r, sigma, order);
    }
  }
  const double tm = std::exp(0.5 * (a + b));
  const double fm = weighted_value(oracle, tm, r, sigma, order);
  if (fm >= vals[best]) {
    out.value = fm;
    out.t_star = tm;
  } else {
    out.value = vals[best];
    out.t_star = ts[best];
  }
  out.boundary_max = (best == 0 || best == n_pts - 1);
  return out;
}

double global_kernel_bound(const SpaceParams& p, double r, double sigma,
                           double eps) {
  const double Q = p.Q();
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("global_kernel_bound: eps must be in (0,1)");
  const double inner = 0.25 * Q * Q - sigma / (1.0 - eps);
  if (inner < 0.0)
    throw std::domain_error("global_kernel_bound: sigma out of range");
  return std::exp(-(1.0 - eps) * (0.5 * Q * r + r * std::sqrt(inner)));
}

double spherical_asymptote(const SpaceParams& p, double lp_exponent, double r) {
  const double Q = p.Q();
  if (lp_exponent < 1.0 || lp_exponent > 2.0)
    throw std::domain_error("spherical_asymptote: p must be in [1,2]");
  if (lp_exponent >= 2.0 - 1e-12) return (1.0 + r) * std::exp(-0.5 * Q * r);
  const double inv_pprime = 1.0 - 1.0 / lp_exponent;
  return std::exp(-Q * inv_pprime * r);
}

double sigma_threshold(double Q, double p) {
  if (!(p > 1.0))
    throw std::domain_error("sigma_threshold: p must be in (1, infinity)");
  return Q * Q * (p - 1.0) / (p * p);
}

const char* to_string(IntegrabilityFlag f) {
  switch (f) {
    case IntegrabilityFlag::convergent: return "CONVERGENT";
    case IntegrabilityFlag::divergent: return "DIVERGENT";
    default: return "INDETERMINATE";
  }
}

IntegrabilityFlag analytic_integrability_flag(double Q, double p, double sigma) {
  if (sigma >= 0.25 * Q * Q) return IntegrabilityFlag::divergent;
  const double expo = Q / p - 0.5 * Q - std::sqrt(0.25 * Q * Q - sigma);
  if (std::abs(expo) < 1e-12 * Q) return IntegrabilityFlag::indeterminate;
  return expo < 0.0 ? IntegrabilityFlag::convergent : IntegrabilityFlag::divergent;
}

LpProbeReport lp_integrability_probe(const HeatKernelOracle& oracle, double p,
                                     double sigma, int order,
                                     ProbeIntegrand integrand, double eps,
                                     const std::vector<double>& r_max_values) {
  const SpaceParams& P = oracle.params();
  const double Q = P.Q();
  LpProbeReport rep;
  rep.p = p;
  rep.sigma = sigma;
  rep.order = order;
  rep.integrand = integrand;
  rep.eps = eps;
  rep.threshold = sigma_threshold(Q, p);
  rep.r_max_values = r_max_values;
  if (!(p > 1.0 && p <= 2.0))
    throw std::invalid_argument("lp_integrability_probe: need 1 < p <= 2");

  const double R = r_max_values.back();

  auto kernel_at = [&](double r) -> double {
    if (integrand == ProbeIntegrand::bound)
      return global_kernel_bound(P, r, sigma, eps);
    MaximalKernelEval kv =
        maximal_kernel(oracle, r, sigma, order, KernelPiece::global);
    if (kv.divergent) {
      rep.kernel_divergent = true;
      return 0.0;
    }
    rep.t_star_profile.emplace_back(r, kv.t_star);
    return kv.value;
  };

  if (integrand == ProbeIntegrand::bound &&
      sigma >= (1.0 - eps) * 0.25 * Q * Q) {
    // The bound itself requires sigma < (1-eps) Q^2/4; beyond it the kernel
    // sup has a non-decaying tail.
    rep.kernel_divergent = true;
    rep.flag = IntegrabilityFlag::divergent;
    return rep;
  }

  const bool p_is_two = p >= 2.0 - 1e-12;
  auto weight = [&](double r) {
    const double w = std::exp(Q * r / p);
    return p_is_two ? (1.0 + r) * w : w;
  };

  // Fixed composite panels: width 1/2 on [0,1], width 1 on [1, R]; the
  // requested r_max values must land on panel boundaries.
  const GaussLegendreRule& rule = gauss_legendre(8);
  struct Panel {
    double a, b, value;
  };
  std::vector<Panel> panels;
  panels.push_back({0.0, 0.5, 0.0});
  panels.push_back({0.5, 1.0, 0.0});
  for (double a = 1.0; a < R - 1e-9; a += 1.0) panels.push_back({a, a + 1.0, 0.0});

  for (Panel& pan : panels) {
    double s = 0.0;
    for (int q = 0; q < 8; ++q) {
      const double r = 0.5 * (pan.a + pan.b) + 0.5 * (pan.b - pan.a) * rule.nodes[q];
      const double k = kernel_at(r);
      if (rep.kernel_divergent) break;
      const double w = (pan.b <= 1.0 + 1e-9) ? std::pow(r, P.n() - 1) : weight(r);
      s += rule.weights[q] * w * k;
    }
    if (rep.kernel_divergent) {
      rep.flag = IntegrabilityFlag::divergent;
      return rep;
    }
    pan.value = 0.5 * (pan.b - pan.a) * s;
  }

  for (double rmax : r_max_values) {
    double acc = 0.0;
    for (const Panel& pan : panels)
      if (pan.b <= rmax + 1e-9) acc += pan.value;
    rep.partial_values.push_back(acc);
  }

  if (rep.partial_values.size() >= 3) {
    const size_t n = rep.partial_values.size();
    const double d1 = rep.partial_values[n - 2] - rep.partial_values[n - 3];
    const double d2 = rep.partial_values[n - 1] - rep.partial_values[n - 2];
    const double ratio = d2 / d1;
    if (ratio < 0.9)
      rep.flag = IntegrabilityFlag::convergent;
    else if (ratio > 1.1)
      rep.flag = IntegrabilityFlag::divergent;
    else
      rep.flag = IntegrabilityFlag::indeterminate;
  }
  return rep;
}

std::vector<MaximalKernelEval> global_kernel_profile(const HeatKernelOracle& oracle,
                                                     const std::vector<double>& radii,
                                                     double sigma, int order) {
  std::vector<MaximalKernelEval> out;
  out.reserve(radii.size());
  for (double r : radii)
    out.push_back(maximal_kernel(oracle, r, sigma, order, KernelPiece::global));
  return out;
}

}  // namespace drheat
