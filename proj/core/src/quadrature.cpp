#include "drheat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace drheat {

namespace {

GaussLegendreRule compute_gl(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double eps = 1e-15;
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess for the i-th root of P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < eps) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Gauss-Kronrod 7-15 pair: Kronrod abscissae/weights and embedded Gauss-7 weights.
const double kGK15Nodes[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
const double kGK15WeightsK[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
// Gauss-7 weights aligned to nodes 0,2,4,6 of the Kronrod set.
const double kGK15WeightsG[4] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870};

struct Interval {
  double a, b, value, error;
};

void gk15(const std::function<double(double)>& f, double a, double b,
          double* value, double* error, int* evals) {
  const double mid = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  double fc = f(mid);
  double k15 = kGK15WeightsK[0] * fc;
  double g7 = kGK15WeightsG[0] * fc;
  for (int i = 1; i < 8; ++i) {
    double dx = hl * kGK15Nodes[i];
    double fsum = f(mid - dx) + f(mid + dx);
    k15 += kGK15WeightsK[i] * fsum;
    if (i % 2 == 0) g7 += kGK15WeightsG[i / 2] * fsum;
  }
  k15 *= hl;
  g7 *= hl;
  *value = k15;
  double diff = std::abs(k15 - g7);
  // QUADPACK-style sharpened estimate.
  *error = std::min(diff, std::pow(200.0 * diff, 1.5));
  *evals = *evals + 15;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::map<int, GaussLegendreRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussLegendreRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), hl = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + hl * rule.nodes[i]);
  return sum * hl;
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, int max_intervals) {
  QuadResult res;
  if (a == b) return res;

  std::vector<Interval> heap;
  Interval first{a, b, 0.0, 0.0};
  gk15(f, a, b, &first.value, &first.error, &res.evaluations);
  heap.push_back(first);

  auto cmp = [](const Interval& x, const Interval& y) { return x.error < y.error; };
  std::make_heap(heap.begin(), heap.end(), cmp);

  double total = first.value, total_err = first.error;
  while (static_cast<int>(heap.size()) < max_intervals) {
    double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (total_err <= tol) break;
    std::pop_heap(heap.begin(), heap.end(), cmp);
    Interval worst = heap.back();
    heap.pop_back();
    if (worst.b - worst.a < 1e-14 * (std::abs(worst.a) + 1.0)) {
      // Interval exhausted; keep its contribution and stop refining it.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), cmp);
      break;
    }
    double mid = 0.5 * (worst.a + worst.b);
    Interval left{worst.a, mid, 0.0, 0.0}, right{mid, worst.b, 0.0, 0.0};
    gk15(f, left.a, left.b, &left.value, &left.error, &res.evaluations);
    gk15(f, right.a, right.b, &right.value, &right.error, &res.evaluations);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), cmp);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), cmp);
  }

  // Recompute the totals by ordered summation for reproducibility.
  std::sort(heap.begin(), heap.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  total = 0.0;
  total_err = 0.0;
  for (const Interval& iv : heap) {
    total += iv.value;
    total_err += iv.error;
  }
  res.value = total;
  res.abs_error = total_err;
  res.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total)) * 1.001 + 1e-300;
  return res;
}

}  // namespace drheat
