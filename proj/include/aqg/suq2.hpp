#pragma once

// Block engine for the discrete dual of SU_q(2): A = algebraic direct sum of M_{2l+1}(C).
// Spins are stored doubled (two_l = 2l) everywhere; block basis E_ik sits at i * d + k and the
// vector in block two_l is indexed by m = l - i.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "aqg/report.hpp"
#include "aqg/linalg.hpp"

namespace aqg {

// [x]_q = (q^x - q^-x) / (q - q^-1).
double q_number(double x, double q);
inline int block_dim(int two_l) { return two_l + 1; }
// Spins two_l of the irreducible summands of l1 (x) l2, ascending.
std::vector<int> fusion(int two_l1, int two_l2);

// Unitary V: H_l1 (x) H_l2 -> (+)_l H_l built from q-Clebsch-Gordan coefficients.
struct Intertwiner {
  int two_l1 = 0;
  int two_l2 = 0;
  Mat v;                     // rows grouped by summand, columns i1 * d2 + i2
  std::vector<int> spins;    // summands, ascending
  std::vector<int> offsets;  // first row of each summand
  double unitarity = 0.0;    // max |V V* - 1|

  // Rows of the summand two_l, or an empty matrix if it does not occur.
  Mat rows_of(int two_l) const;
};

// Generators on H_l: K|m> = q^m |m>, E|m> = sqrt([l-m][l+m+1]) |m+1>.
Mat q_raising(double q, int two_l);
Mat q_weight(double q, int two_l);
// Highest weight vectors from the kernel of Delta(E) = E (x) K + K^-1 (x) E, positive coefficient
// at m1 = l1, lowered by Delta(F). Throws CGGenerationFailure if V is not unitary within 1e-12.
Intertwiner q_clebsch_gordan(double q, int two_l1, int two_l2);

// Finitely supported element: two_l -> (2l+1) x (2l+1) block.
struct BlockElement {
  std::map<int, Mat> blocks;

  std::vector<int> support() const;
  const Mat* find(int two_l) const;
  static BlockElement basis(int two_l, int index);  // E_ik of block two_l, index = i * d + k
};

// Row-major vectorization of a block matrix.
Vec vec_rm(const Mat& a);
Mat unvec_rm(const Vec& v, int d);

struct BlockOptions {
  double tol = 1e-8;
  std::uint64_t seed = 42;
  int samples = 50;
  int max_two_l = 40;  // memory budget for block indices
};

// Structure maps and invariants, computed on demand block by block.
class BlockQuantumGroup {
 public:
  explicit BlockQuantumGroup(double q, int max_two_l = 40);

  double q() const { return q_; }
  int max_two_l() const { return max_two_l_; }

  const Intertwiner& intertwiner(int two_l1, int two_l2) const;
  // Replaces V_{l1 l2}(row, col) by V + amount; for negative controls.
  void corrupt_intertwiner(int two_l1, int two_l2, int row, int col, cplx amount);

  // Delta(a) restricted to H_l1 (x) H_l2, as an operator on C^{d1} (x) C^{d2}.
  Mat coproduct(const BlockElement& a, int two_l1, int two_l2) const;
  Mat coproduct_basis(int two_l, int index, int two_l1, int two_l2) const;
  cplx counit(const BlockElement& a) const;

  // Antipode on block l as a matrix on row-major vectorizations, from m(S (x) id)(Delta(a)(1 (x) b)) = eps(a) b.
  const Mat& antipode(int two_l) const;
  const Mat& antipode_inverse(int two_l) const;
  double antipode_solve_residual(int two_l) const;

  // phi(a) = sum_l Tr(haar(l) a_l), normalized by phi(unit of block 0) = 1.
  const Mat& haar(int two_l) const;
  const Mat& right_haar(int two_l) const;  // psi(a) = sum_l Tr(right_haar(l) a_l)
  const Mat& modular_element(int two_l) const;
  // rho(a) on block l as a matrix on row-major vectorizations: phi(ab) = phi(b rho(a)).
  const Mat& modular_automorphism(int two_l) const;

  cplx phi(const BlockElement& a) const;
  cplx psi(const BlockElement& a) const;

  // Orthonormal frame of the GNS space: Lambda(a) = a haar^{1/2} on each block,
  // as the matrix kron(1, (haar^{1/2})^T) on row-major vectorizations.
  const Mat& frame(int two_l) const;
  const Mat& frame_inverse(int two_l) const;

  // Coordinate kernel of W from H_l1 (x) H_lb into H_l1 (x) H_l2: rows (i1 d2 + i2) d2 + k2,
  // columns r d_b^2 + x_b, entries of (S^-1 (x) id)(Delta(E_xb)) at ((i1, i2), (r, k2)).
  const Mat& w_kernel(int two_l1, int two_lb, int two_l2) const;

 private:
  void check_budget(int two_l) const;

  double q_;
  int max_two_l_;
  mutable std::map<std::pair<int, int>, Intertwiner> cg_;
  mutable std::map<int, Mat> antipode_, antipode_inv_, haar_, right_haar_, delta_, rho_, frame_, frame_inv_;
  mutable std::map<int, double> antipode_res_;
  mutable std::map<std::vector<int>, Mat> w_kernel_;
};

// Vectors with finite support in H^{(x) legs}: key = spins per leg, value = coordinates in the
// orthonormal frame, legs flattened row-major, each leg of dimension d^2.
struct BlockVector {
  int legs = 1;
  std::map<std::vector<int>, Vec> parts;

  double norm() const;
  cplx dot(const BlockVector& other) const;  // <this, other> = other^H this
  void add(const std::vector<int>& key, const Vec& v);
};
BlockVector operator-(const BlockVector& a, const BlockVector& b);
BlockVector operator*(cplx s, const BlockVector& a);

// Random vector with every block of spin <= cap present on each leg.
BlockVector random_block_vector(int legs, int cap_two_l, Rng& rng);

// W (Lambda(a) (x) Lambda(b)) = (Lambda (x) Lambda)((S^-1 (x) id)(Delta(b))(a (x) 1)) on legs (first, second).
BlockVector apply_w(const BlockQuantumGroup& g, const BlockVector& x, int first, int second);
// Block-diagonal operator on one leg; op(two_l) is a d^2 x d^2 matrix.
template <typename F>
BlockVector apply_on_leg(const BlockVector& x, int leg, F op);

double block_relative_residual(const BlockVector& lhs, const BlockVector& rhs);

struct BlockScalars {
  cplx mu{1.0, 0.0};
  double nu = 1.0;
  double gamma = 1.0;
  double nu_residual = 0.0;
};

// Block operators of the modular theory in the orthonormal frame (each d^2 x d^2).
struct BlockModularOps {
  AntiLinOp t;  // T Lambda(a) = Lambda(a*)
  Mat nabla;
  AntiLinOp g;  // G Lambda(a) = Lambda(S(a)*)
  PositiveOp m;
  AntiLinOp i;
  Mat delta_op;  // <delta_op Lambda(a), Lambda(b)> = phi(b* delta a)
};
BlockModularOps block_modular_ops(const BlockQuantumGroup& g, int two_l);

// Structure, Haar and modular checks on blocks of spin <= cap, and the sampled GNS suite.
CheckList check_block_structure(const BlockQuantumGroup& g, int cap_two_l, const BlockOptions& opt);
CheckList check_block_haar(const BlockQuantumGroup& g, int cap_two_l, const BlockOptions& opt);
CheckList block_gns_suite(const BlockQuantumGroup& g, int cap_two_l, const BlockOptions& opt,
                          BlockScalars* scalars = nullptr);
CheckList check_block_nondegeneracy(const BlockQuantumGroup& g, const BlockOptions& opt);
CheckList run_block_checks(const BlockQuantumGroup& g, int cap_two_l, const BlockOptions& opt,
                           BlockScalars* scalars = nullptr);

// ----------------------------------------------------------------------------

template <typename F>
BlockVector apply_on_leg(const BlockVector& x, int leg, F op) {
  BlockVector out;
  out.legs = x.legs;
  for (const auto& [key, v] : x.parts) {
    const Mat a = op(key[leg]);
    Eigen::Index before = 1, after = 1;
    for (int k = 0; k < leg; ++k) before *= Eigen::Index(block_dim(key[k])) * block_dim(key[k]);
    for (int k = leg + 1; k < x.legs; ++k) after *= Eigen::Index(block_dim(key[k])) * block_dim(key[k]);
    const Eigen::Index dl = a.cols();
    Vec r(v.size());
    for (Eigen::Index b = 0; b < before; ++b) {
      // Slab (dl x after) in row-major order: Map as column-major (after x dl) and multiply on the right.
      Eigen::Map<const Mat> in(v.data() + b * dl * after, after, dl);
      Eigen::Map<Mat> res(r.data() + b * dl * after, after, dl);
      res = in * a.transpose();
    }
    out.parts[key] = r;
  }
  return out;
}

}  // namespace aqg
