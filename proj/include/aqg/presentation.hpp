#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aqg/linalg.hpp"
#include "aqg/report.hpp"

namespace aqg {

// Finite-dimensional *-algebra in a fixed basis e_0..e_{n-1}.
struct AlgebraPresentation {
  int dim = 0;
  std::vector<std::string> labels;
  Mat mult;        // n x n^2, column i*n+j holds e_i e_j
  Mat involution;  // x* = involution * conj(x); column i holds (e_i)*
  Vec unit;
};

struct QuantumGroupPresentation {
  AlgebraPresentation algebra;
  Mat comul;      // n^2 x n, column i holds Delta(e_i)
  RowVec counit;  // eps(e_i)
  std::optional<Mat> antipode;

  int dim() const { return algebra.dim; }
};

Vec basis_vector(int n, int i);

Vec product(const AlgebraPresentation& alg, const Vec& x, const Vec& y);
Mat left_mult(const AlgebraPresentation& alg, const Vec& x);
Mat right_mult(const AlgebraPresentation& alg, const Vec& y);
Vec star(const AlgebraPresentation& alg, const Vec& x);
// Inverse of x in a unital algebra, through the left regular representation.
Vec inverse(const AlgebraPresentation& alg, const Vec& x);

// Componentwise product and involution on A (x) A.
Vec product2(const AlgebraPresentation& alg, const Vec& x, const Vec& y);
Vec star2(const AlgebraPresentation& alg, const Vec& x);
Vec unit2(const AlgebraPresentation& alg);

// Slices of a two-leg element by a covector.
Vec slice_left(const RowVec& f, const Vec& x, int n);   // (f (x) id) x
Vec slice_right(const RowVec& f, const Vec& x, int n);  // (id (x) f) x

// Maps a (x) b -> Delta(a)(b (x) 1) and a (x) b -> Delta(a)(1 (x) b).
Mat galois_map_left(const QuantumGroupPresentation& p);
Mat galois_map_right(const QuantumGroupPresentation& p);

void validate_shapes(const QuantumGroupPresentation& p);

bool is_commutative(const AlgebraPresentation& alg, double tol);
bool is_cocommutative(const QuantumGroupPresentation& p, double tol);

double max_abs(const Mat& m);

// Residuals of the multiplier Hopf *-algebra axioms.
CheckList check_algebra(const AlgebraPresentation& alg, double tol);
CheckList check_axioms(const QuantumGroupPresentation& p, double tol);

}  // namespace aqg
