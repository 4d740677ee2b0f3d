#pragma once

#include <cstdint>
#include <random>

#include <Eigen/SparseCore>

#include "aqg/types.hpp"

namespace aqg {

// Index convention for tensors: e_i (x) f_k sits at i * n2 + k.

Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);

// (A (x) 1) v and (1 (x) B) v for v in C^{n1} (x) C^{n2}.
Vec apply_leg1(const Mat& a, const Vec& v, Eigen::Index n2);
Vec apply_leg2(const Mat& b, const Vec& v, Eigen::Index n1);

// (A (x) B) X and X (A (x) B) without forming the Kronecker product.
Mat kron_apply(const Mat& a, const Mat& b, const Mat& x);
Mat kron_apply_right(const Mat& x, const Mat& a, const Mat& b);

// X[(i1,i2),(j1,j2)] -> R[(i1,j1),(i2,j2)]; maps A (x) B to vec(A) vec(B)^T.
Mat realign(const Mat& x, Eigen::Index n1, Eigen::Index n2);
Mat unrealign(const Mat& r, Eigen::Index n1, Eigen::Index n2);

// Swap of tensor legs on C^{n1} (x) C^{n2}.
Vec flip(const Vec& v, Eigen::Index n1, Eigen::Index n2);
Mat flip_rows(const Mat& x, Eigen::Index n1, Eigen::Index n2);

// Orthonormal basis of the kernel; singular values below tol * max are zero.
Mat null_space(const Mat& m, double rel_tol);
Eigen::Index numerical_rank(const Mat& m, double rel_tol);
double min_singular_value(const Mat& m);

using SpMat = Eigen::SparseMatrix<cplx>;
double sparsity(const Mat& m);  // fraction of nonzero entries
SpMat to_sparse(const Mat& m);

// Minimum-norm least-squares solve with residual.
struct LstsqResult {
  Mat x;
  double residual = 0.0;
  Eigen::Index rank = 0;
};
LstsqResult lstsq(const Mat& a, const Mat& b, double rel_tol = 1e-12);

double rel_diff(const Mat& a, const Mat& b);

// Hermitian positive operator with cached spectral decomposition.
class PositiveOp {
 public:
  PositiveOp() = default;
  explicit PositiveOp(const Mat& op, double rel_tol = 1e-12);
  // From an orthonormal eigenbasis and positive eigenvalues.
  static PositiveOp from_spectrum(const Mat& vecs, const RVec& evals);

  Mat pow(cplx z) const;
  Mat it(double t) const { return pow(cplx(0.0, t)); }
  const Mat& matrix() const { return op_; }
  double min_eig() const { return evals_.minCoeff(); }
  double max_eig() const { return evals_.maxCoeff(); }

 private:
  Mat op_;
  Mat vecs_;
  RVec evals_;
};

template <typename Derived>
Mat hermitian_power(const Eigen::MatrixBase<Derived>& op, cplx z) {
  return PositiveOp(Mat(op)).pow(z);
}

// v -> C conj(v).
struct AntiLinOp {
  Mat m;

  Vec operator()(const Vec& v) const { return m * v.conjugate(); }
  Mat apply(const Mat& x) const { return m * x.conjugate(); }
  AntiLinOp adjoint() const { return {m.transpose()}; }
  Eigen::Index rows() const { return m.rows(); }
  Eigen::Index cols() const { return m.cols(); }
};

inline Mat compose(const AntiLinOp& a, const AntiLinOp& b) { return a.m * b.m.conjugate(); }
inline AntiLinOp compose(const AntiLinOp& a, const Mat& l) { return {a.m * l.conjugate()}; }
inline AntiLinOp compose(const Mat& l, const AntiLinOp& a) { return {l * a.m}; }
inline AntiLinOp kron(const AntiLinOp& a, const AntiLinOp& b) { return {kron(a.m, b.m)}; }

// A = U |A| with |A| = (A*A)^{1/2}; returns U and A*A.
struct AntiPolar {
  AntiLinOp unitary;
  PositiveOp square;
};
AntiPolar polar(const AntiLinOp& a);
// Same decomposition through the SVD of the coefficient matrix; keeps relative accuracy when
// the spectrum of A*A spans many orders of magnitude.
AntiPolar polar_svd(const AntiLinOp& a);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double normal() { return dist_(gen_); }
  cplx cnormal() { return {normal(), normal()}; }
  Vec cvec(Eigen::Index n);
  Vec unit_cvec(Eigen::Index n);
  Mat cmat(Eigen::Index r, Eigen::Index c);

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace aqg
