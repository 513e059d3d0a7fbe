#include "drheat/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace drheat {

BoundParams propagate_derivative_bound(const BoundParams& p,
                                       const BoundParams& p_star, double eps) {
  if (!(p.alpha > p.beta && p.beta >= 0.0))
    throw std::invalid_argument("propagate_derivative_bound: need alpha > beta >= 0");
  if (!(p.D >= p_star.D && p.B >= p_star.B && p.C >= p_star.C))
    throw std::invalid_argument(
        "propagate_derivative_bound: need D >= D*, B >= B*, C >= C*");
  if (!(p_star.D >= 0.0 && p_star.B >= 0.0 && p_star.C >= 0.0))
    throw std::invalid_argument("propagate_derivative_bound: exponents must be >= 0");
  if (!(eps > 0.0))
    throw std::invalid_argument("propagate_derivative_bound: eps must be > 0");
  const double lambda_eps = (1.0 - eps) / (1.0 + eps);
  return BoundParams{p.alpha + 1.0,
                     p.beta,
                     p.gamma,
                     0.5 * (p.D + p_star.D),
                     0.5 * (p.B + p_star.B),
                     0.5 * (p_star.C + p.C * lambda_eps)};
}

double bound_shape(const BoundParams& p, double t, double r) {
  return std::pow(t, -p.alpha) * std::pow(1.0 + t, p.beta) *
         std::pow(1.0 + r, p.gamma) *
         std::exp(-p.D * t - p.B * r - p.C * r * r / (4.0 * t));
}

RecurrenceTable recurrence_table(double eps, int L, int I) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("recurrence_table: eps must be in (0,1)");
  if (L < 1 || I < 1)
    throw std::invalid_argument("recurrence_table: L, I must be >= 1");

  RecurrenceTable tab;
  tab.epsilon = eps;
  tab.lambda_eps = (1.0 - eps) / (1.0 + eps);
  tab.L = L;
  tab.I = I;
  tab.beta_data.assign((L + 1) * (I + 1), 0.0);
  tab.gamma_data.assign((L + 1) * (I + 1), 0.0);

  const int width = I + L + 1;  // columns needed at row 0
  std::vector<double> bprev(width + 1, 0.0), gprev(width + 1, 0.0);
  std::vector<double> bcur(width + 1, 0.0), gcur(width + 1, 0.0);
  bprev[0] = gprev[0] = 1.0;

  auto store = [&](int l, const std::vector<double>& b, const std::vector<double>& g) {
    for (int i = 0; i <= I; ++i) {
      tab.beta_data[l * (I + 1) + i] = b[i];
      tab.gamma_data[l * (I + 1) + i] = g[i];
    }
  };
  store(0, bprev, gprev);

  for (int l = 1; l <= L; ++l) {
    bcur[0] = gcur[0] = 1.0;
    const int cols = I + (L - l);  // valid columns at this row
    for (int i = 1; i <= cols; ++i) {
      bcur[i] = 0.5 * (bprev[i - 1] + bprev[i + 1]);
      gcur[i] = 0.5 * (tab.lambda_eps * gprev[i - 1] + gprev[i + 1]);
    }
    for (int i = cols + 1; i <= width; ++i) bcur[i] = gcur[i] = 0.0;
    store(l, bcur, gcur);
    std::swap(bprev, bcur);
    std::swap(gprev, gcur);
  }
  return tab;
}

double recurrence_limit_gamma(double eps, int i) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("recurrence_limit_gamma: eps must be in (0,1)");
  const double lambda_eps = (1.0 - eps) / (1.0 + eps);
  return std::pow(1.0 - std::sqrt(1.0 - lambda_eps), i);
}

double recurrence_limit_beta(double eps, int i) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("recurrence_limit_beta: eps must be in (0,1)");
  (void)i;
  return 1.0;
}

// ---------------------------------------------------------------------------
// GrigoryanSequence
// ---------------------------------------------------------------------------

namespace {

// Chebyshev panel: coefficients of sum c_k T_k on [a, b].
struct ChebPanel {
  double a = 0.0, b = 0.0;
  std::vector<double> c;

  double eval(double t) const {
    const double x = (2.0 * t - a - b) / (b - a);
    double b1 = 0.0, b2 = 0.0;
    for (size_t k = c.size(); k-- > 1;) {
      const double tmp = 2.0 * x * b1 - b2 + c[k];
      b2 = b1;
      b1 = tmp;
    }
    return x * b1 - b2 + c[0];
  }

  // Antiderivative panel with value 0 at a.
  ChebPanel antiderivative() const {
    ChebPanel out;
    out.a = a;
    out.b = b;
    const double h = 0.5 * (b - a);
    const size_t d = c.size();
    out.c.assign(d + 1, 0.0);
    auto coef = [&](size_t k) { return k < d ? c[k] : 0.0; };
    for (size_t k = 1; k <= d; ++k)
      out.c[k] = h * ((k == 1 ? 2.0 * coef(0) : coef(k - 1)) - coef(k + 1)) / (2.0 * k);
    double at_a = 0.0;
    for (size_t k = 1; k <= d; ++k) at_a += (k % 2 ? -out.c[k] : out.c[k]);
    out.c[0] = -at_a;
    return out;
  }
};

ChebPanel fit_panel(const std::function<double(double)>& f, double a, double b,
                    int degree) {
  ChebPanel p;
  p.a = a;
  p.b = b;
  const int n = degree;
  std::vector<double> vals(n + 1);
  for (int q = 0; q <= n; ++q) {
    const double x = std::cos(M_PI * q / n);
    vals[q] = f(0.5 * (a + b) + 0.5 * (b - a) * x);
  }
  p.c.assign(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = 0.5 * (vals[0] + (k % 2 ? -1.0 : 1.0) * vals[n]);
    for (int q = 1; q < n; ++q) s += vals[q] * std::cos(M_PI * k * q / n);
    p.c[k] = 2.0 * s / n;
  }
  p.c[0] *= 0.5;
  return p;
}

}  // namespace

struct GrigoryanSequence::Impl {
  SpaceParams P;
  int imax;
  double me;       // (n-3)/2
  double t_head;   // series region boundary
  double t_max;
  // series coefficients: f_i(t) = t^{n/2+i} sum_j head[i][j] t^j for t <= t_head
  std::vector<std::vector<double>> head;
  // piecewise-Chebyshev representation on [t_head, t_max] per level
  std::vector<std::vector<ChebPanel>> levels;

  Impl(const SpaceParams& p, int i_max, double tmax)
      : P(p), imax(i_max), me(0.5 * (p.n() - 3)), t_head(0.5), t_max(tmax) {
    const double half_n = 0.5 * P.n();

    // Series head: binomial series of (1+t)^{-me}, integrated termwise.
    const int jmax = 80;
    head.assign(imax + 1, std::vector<double>(jmax + 1, 0.0));
    head[0][0] = 1.0;
    for (int j = 1; j <= jmax; ++j)
      head[0][j] = head[0][j - 1] * (-me - (j - 1)) / j;
    for (int i = 1; i <= imax; ++i)
      for (int j = 0; j <= jmax; ++j)
        head[i][j] = head[i - 1][j] / (half_n + i + j);

    // Geometric panels; degree 24 resolves f_0 to machine accuracy.
    const int n_panels = 64;
    std::vector<double> bounds(n_panels + 1);
    for (int q = 0; q <= n_panels; ++q)
      bounds[q] = t_head * std::pow(t_max / t_head, double(q) / n_panels);

    levels.resize(imax + 1);
    auto f0 = [&](double t) { return std::pow(t, half_n) * std::pow(1.0 + t, -me); };
    for (int q = 0; q < n_panels; ++q)
      levels[0].push_back(fit_panel(f0, bounds[q], bounds[q + 1], 24));

    for (int i = 1; i <= imax; ++i) {
      double carry = eval_head(i, t_head);
      for (int q = 0; q < n_panels; ++q) {
        ChebPanel ap = levels[i - 1][q].antiderivative();
        ap.c[0] += carry;
        carry = ap.eval(ap.b);
        levels[i].push_back(std::move(ap));
      }
    }
  }

  double eval_head(int i, double t) const {
    double s = 0.0, pw = 1.0;
    for (size_t j = 0; j < head[i].size(); ++j) {
      s += head[i][j] * pw;
      pw *= t;
    }
    return s * std::pow(t, 0.5 * P.n() + i);
  }

  double eval(int i, double t) const {
    if (i < 0 || i > imax) throw std::out_of_range("GrigoryanSequence: order");
    if (t <= 0.0) throw std::domain_error("GrigoryanSequence: t must be > 0");
    if (t <= t_head) return eval_head(i, t);
    if (t > t_max) throw std::domain_error("GrigoryanSequence: t beyond t_max");
    const auto& lvl = levels[i];
    int lo = 0, hi = static_cast<int>(lvl.size()) - 1;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (t <= lvl[mid].b)
        hi = mid;
      else
        lo = mid + 1;
    }
    return lvl[lo].eval(t);
  }
};

GrigoryanSequence::GrigoryanSequence(const SpaceParams& p, int i_max, double t_max)
    : impl_(new Impl(p, i_max, t_max)) {}
GrigoryanSequence::~GrigoryanSequence() = default;
GrigoryanSequence::GrigoryanSequence(GrigoryanSequence&&) noexcept = default;

int GrigoryanSequence::i_max() const { return impl_->imax; }
double GrigoryanSequence::decay_exponent() const { return impl_->me; }
double GrigoryanSequence::f(int i, double t) const { return impl_->eval(i, t); }

double GrigoryanSequence::bound(int i, double t) const {
  if (2 * i > impl_->imax)
    throw std::out_of_range("GrigoryanSequence::bound: need i_max >= 2i");
  return 1.0 / std::sqrt(impl_->eval(0, t) * impl_->eval(2 * i, t));
}

double GrigoryanSequence::dominance_constant(int i) const {
  double c = 1.0;
  for (int j = 1; j <= i; ++j) c /= 0.5 * impl_->P.n() + j;
  return c;
}

// ---------------------------------------------------------------------------
// gaussian_bound_scan
// ---------------------------------------------------------------------------

std::vector<BoundScanReport> gaussian_bound_scan(const HeatKernelOracle& oracle,
                                                 const std::vector<double>& eps_list,
                                                 int order, const ScanGrid& grid) {
  const SpaceParams& P = oracle.params();
  const double Q = P.Q();
  const double npow = 0.5 * P.n() + order;

  std::vector<double> ts(grid.t_points), rs(grid.r_points);
  for (int i = 0; i < grid.t_points; ++i)
    ts[i] = grid.t_min * std::pow(grid.t_max / grid.t_min,
                                  double(i) / (grid.t_points - 1));
  for (int j = 0; j < grid.r_points; ++j)
    rs[j] = grid.r_max * double(j) / (grid.r_points - 1);
  oracle.prepare_radii(rs, grid.t_min, order);

  std::vector<BoundScanReport> out(eps_list.size());
  for (size_t e = 0; e < eps_list.size(); ++e) {
    out[e].epsilon = eps_list[e];
    out[e].order = order;
    out[e].grid = grid;
  }

  for (double t : ts) {
    for (double r : rs) {
      const double v = std::abs(oracle.evaluate(t, r, order).value);
      if (v == 0.0) continue;
      const double expo = 0.25 * Q * Q * t + 0.5 * Q * r + r * r / (4.0 * t);
      const double log_v = std::log(v);
      for (size_t e = 0; e < eps_list.size(); ++e) {
        const double log_ratio =
            log_v + npow * std::log(t) + (1.0 - eps_list[e]) * expo;
        if (out[e].c_min == 0.0 || log_ratio > std::log(out[e].c_min)) {
          out[e].c_min = std::exp(log_ratio);
          out[e].argmax_t = t;
          out[e].argmax_r = r;
        }
      }
    }
  }
  return out;
}

}  // namespace drheat
