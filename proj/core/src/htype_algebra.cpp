#include "drheat/htype_algebra.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace drheat {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Product in the Cayley-Dickson algebra of dimension 2^s (reals, complex,
// quaternions, octonions): (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).
VectorXd cd_conj(const VectorXd& x) {
  VectorXd y = -x;
  y(0) = x(0);
  return y;
}

VectorXd cd_mul(const VectorXd& x, const VectorXd& y) {
  const long n = x.size();
  if (n == 1) return x(0) * y;
  const long h = n / 2;
  VectorXd a = x.head(h), b = x.tail(h);
  VectorXd c = y.head(h), d = y.tail(h);
  VectorXd out(n);
  out.head(h) = cd_mul(a, c) - cd_mul(cd_conj(d), b);
  out.tail(h) = cd_mul(d, a) + cd_mul(b, cd_conj(c));
  return out;
}

MatrixXd left_mul_matrix(const VectorXd& u) {
  const long n = u.size();
  MatrixXd L(n, n);
  VectorXd e = VectorXd::Zero(n);
  for (long j = 0; j < n; ++j) {
    e(j) = 1.0;
    L.col(j) = cd_mul(u, e);
    e(j) = 0.0;
  }
  return L;
}

MatrixXd kron(const MatrixXd& A, const MatrixXd& B) {
  MatrixXd K(A.rows() * B.rows(), A.cols() * B.cols());
  for (long i = 0; i < A.rows(); ++i)
    for (long j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

// k anticommuting complex structures on R^{d(k)}.
//  - 1 <= k <= 7: left multiplication by the first k imaginary basis units
//    of the Cayley-Dickson algebra of dimension 2^ceil(log2(k+1)).
//  - k = 8: doubling of the k = 7 set: {A_i (x) diag(1,-1), I (x) rot90}.
//  - k >= 9: periodicity lift from k-8 via the k = 8 set G_1..G_8 and its
//    volume element w = G_1...G_8 (symmetric, w^2 = I, anticommutes with
//    each G_j): {A_i (x) w} + {I (x) G_j}.
std::vector<MatrixXd> generators(int k) {
  std::vector<MatrixXd> out;
  if (k == 0) return out;
  if (k <= 7) {
    long d = 1;
    while (d < k + 1) d *= 2;
    for (int i = 1; i <= k; ++i) {
      VectorXd u = VectorXd::Zero(d);
      u(i) = 1.0;
      out.push_back(left_mul_matrix(u));
    }
    return out;
  }
  if (k == 8) {
    std::vector<MatrixXd> base = generators(7);
    MatrixXd L(2, 2), R(2, 2), I2 = MatrixXd::Identity(2, 2);
    L << 1, 0, 0, -1;
    R << 0, -1, 1, 0;
    MatrixXd I8 = MatrixXd::Identity(8, 8);
    for (const MatrixXd& A : base) out.push_back(kron(A, L));
    out.push_back(kron(I8, R));
    return out;
  }
  std::vector<MatrixXd> eight = generators(8);
  MatrixXd w = MatrixXd::Identity(16, 16);
  for (const MatrixXd& G : eight) w = w * G;
  std::vector<MatrixXd> base = generators(k - 8);
  const long dsub = base.empty() ? min_clifford_dim(k - 8) : base.front().rows();
  MatrixXd Isub = MatrixXd::Identity(dsub, dsub);
  for (const MatrixXd& A : base) out.push_back(kron(A, w));
  for (const MatrixXd& G : eight) out.push_back(kron(Isub, G));
  return out;
}

}  // namespace

long min_clifford_dim(int k) {
  if (k < 0) throw std::invalid_argument("min_clifford_dim: k must be >= 0");
  static const long table[9] = {1, 2, 4, 4, 8, 8, 8, 8, 16};
  long scale = 1;
  while (k >= 9) {
    scale *= 16;
    k -= 8;
  }
  return scale * table[k];
}

HTypeAlgebra build_htype(int m, int k) {
  if (k < 0) throw std::invalid_argument("build_htype: k must be >= 0");
  if (m <= 0) throw std::invalid_argument("build_htype: m must be positive");
  const long d = min_clifford_dim(k);
  if (m % d != 0) {
    std::ostringstream msg;
    msg << "build_htype: (m=" << m << ", k=" << k << ") is infeasible: "
        << "m must be a positive multiple of " << d
        << " (smallest feasible m: " << d << ")";
    throw std::invalid_argument(msg.str());
  }

  HTypeAlgebra alg;
  alg.m = m;
  alg.k = k;
  const long copies = m / d;
  MatrixXd Ic = MatrixXd::Identity(copies, copies);
  for (const MatrixXd& G : generators(k))
    alg.J.push_back(copies == 1 ? G : kron(Ic, G));

  const double err = htype_invariant_error(alg);
  if (err > 1e-12)
    throw std::runtime_error("build_htype: construction failed certification");
  return alg;
}

double htype_invariant_error(const HTypeAlgebra& alg) {
  const MatrixXd I = MatrixXd::Identity(alg.m, alg.m);
  double err = 0.0;
  for (size_t i = 0; i < alg.J.size(); ++i) {
    err = std::max(err, (alg.J[i] + alg.J[i].transpose()).cwiseAbs().maxCoeff());
    err = std::max(err, (alg.J[i] * alg.J[i] + I).cwiseAbs().maxCoeff());
    for (size_t j = i + 1; j < alg.J.size(); ++j)
      err = std::max(err,
                     (alg.J[i] * alg.J[j] + alg.J[j] * alg.J[i]).cwiseAbs().maxCoeff());
  }
  return err;
}

Eigen::VectorXd j_map(const HTypeAlgebra& alg, const Eigen::VectorXd& Z,
                      const Eigen::VectorXd& X) {
  if (Z.size() != alg.k || X.size() != alg.m)
    throw std::invalid_argument("j_map: dimension mismatch");
  VectorXd out = VectorXd::Zero(alg.m);
  for (int i = 0; i < alg.k; ++i)
    if (Z(i) != 0.0) out += Z(i) * (alg.J[i] * X);
  return out;
}

Eigen::VectorXd bracket(const HTypeAlgebra& alg, const Eigen::VectorXd& X,
                        const Eigen::VectorXd& Y) {
  if (X.size() != alg.m || Y.size() != alg.m)
    throw std::invalid_argument("bracket: dimension mismatch");
  VectorXd out(alg.k);
  for (int i = 0; i < alg.k; ++i) out(i) = (alg.J[i] * X).dot(Y);
  return out;
}

}  // namespace drheat
