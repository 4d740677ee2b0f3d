#pragma once

#include "aqg/presentation.hpp"

namespace aqg {

struct HaarData {
  RowVec phi;      // phi(e_i)
  Mat gram;        // gram(a, b) = phi(e_b* e_a)
  double min_eig = 0.0;
  bool normalized = true;  // phi(1) = 1
  long null_dim = 1;
  double invariance_residual = 0.0;
};

struct AlgebraicModularData {
  Mat rho;
  Mat rho_prime;
  Vec delta;
  Vec delta_inv;
  cplx mu{1.0, 0.0};
  RowVec psi;  // right invariant, psi(1) = 1
  double delta_consistency = 0.0;
  double mu_residual = 0.0;
};

// Unknown S from both antipode equations; throws NoSolution / NonUnique.
Mat solve_antipode(const QuantumGroupPresentation& p, double tol = kDefaultTol);
const Mat& antipode_of(const QuantumGroupPresentation& p);
QuantumGroupPresentation with_antipode(QuantumGroupPresentation p, double tol = kDefaultTol);

// Gram matrix, positivity and faithfulness of a functional.
HaarData haar_from_functional(const AlgebraPresentation& alg, const RowVec& phi, double tol);

HaarData solve_haar(const QuantumGroupPresentation& p, double tol = kDefaultTol);
RowVec solve_right_haar(const QuantumGroupPresentation& p, double tol = kDefaultTol);

double left_invariance_residual(const QuantumGroupPresentation& p, const RowVec& phi);
double right_invariance_residual(const QuantumGroupPresentation& p, const RowVec& psi);

// The automorphism r with f(ab) = f(b r(a)) for a faithful functional f.
Mat solve_modular_automorphism(const AlgebraPresentation& alg, const RowVec& f);
Mat solve_rho(const AlgebraPresentation& alg, const HaarData& haar);

Vec solve_delta(const QuantumGroupPresentation& p, const HaarData& haar, double tol,
                double* consistency = nullptr);
cplx compute_mu(const QuantumGroupPresentation& p, const HaarData& haar, double tol,
                double* residual = nullptr);

AlgebraicModularData solve_modular(const QuantumGroupPresentation& p, const HaarData& haar,
                                   double tol = kDefaultTol);

CheckList check_modular_relations(const QuantumGroupPresentation& p, const HaarData& haar,
                                  const AlgebraicModularData& m, double tol);

}  // namespace aqg
