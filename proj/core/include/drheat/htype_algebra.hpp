#pragma once

#include <Eigen/Dense>
#include <vector>

namespace drheat {

/// A Heisenberg-type Lie algebra n = v + z, given by the dimensions
/// (m, k) = (dim v, dim z) and the skew maps J_1..J_k on v, where
/// J_i = J_{e_i} for the standard basis of z. The maps satisfy
///   J_i^2 = -I,   J_i J_j + J_j J_i = 0 (i != j),
/// so that J_Z^2 = -|Z|^2 I for every Z in z.
struct HTypeAlgebra {
  int m = 0;                      // dim v
  int k = 0;                      // dim z (k = 0: abelian n, no J maps)
  std::vector<Eigen::MatrixXd> J; // k dense m x m matrices
};

/// Minimal dimension of a real module carrying k anticommuting complex
/// structures: d(0)=1, d(1)=2, d(2)=d(3)=4, d(4..7)=8, d(8)=16,
/// d(k+8) = 16 d(k).
long min_clifford_dim(int k);

/// Build the algebra for the given dimensions. m must be a positive
/// multiple of min_clifford_dim(k); otherwise throws std::invalid_argument
/// naming the smallest feasible m. The construction is certified on exit:
/// all structural identities hold to 1e-12 (see htype_invariant_error).
HTypeAlgebra build_htype(int m, int k);

/// Largest deviation of the structural identities (skew-symmetry,
/// J_i^2 = -I, pairwise anticommutation), measured entrywise.
double htype_invariant_error(const HTypeAlgebra& alg);

/// J_Z X = sum_i Z_i J_i X.
Eigen::VectorXd j_map(const HTypeAlgebra& alg, const Eigen::VectorXd& Z,
                      const Eigen::VectorXd& X);

/// Lie bracket [X, Y] in z, recovered componentwise via
/// [X, Y]_i = <J_i X, Y>.
Eigen::VectorXd bracket(const HTypeAlgebra& alg, const Eigen::VectorXd& X,
                        const Eigen::VectorXd& Y);

}  // namespace drheat
