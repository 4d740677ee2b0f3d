#pragma once

#include <vector>

#include "aqg/modular.hpp"

namespace aqg {

// Dual quantum group in the basis e_i phi, where (a phi)(x) = phi(x a).
struct DualQuantumGroup {
  QuantumGroupPresentation pres;  // antipode included
  Mat fourier;                    // fourier(k, i) = phi(e_k e_i); column i is e_i phi as a covector
  Mat fourier_inv;
  RowVec psi_hat;  // right Haar functional: psi_hat(a phi) = eps(a)

  RowVec functional(const Vec& coeffs) const { return (fourier * coeffs).transpose(); }
  Vec coefficients(const RowVec& f) const { return fourier_inv * f.transpose(); }
};

DualQuantumGroup build_dual(const QuantumGroupPresentation& p, const HaarData& haar);

// Max residual of map being a unital Hopf *-algebra morphism from -> to
// (product, unit, involution, coproduct, counit, antipode).
double hopf_morphism_residual(const QuantumGroupPresentation& from, const QuantumGroupPresentation& to,
                              const Mat& map);

// Coordinate map dual -> target for a target paired with A by pairing(i, j) = <t_i, e_j>.
Mat pairing_isomorphism(const DualQuantumGroup& dual, const Mat& pairing);

struct Biduality {
  DualQuantumGroup dual;
  HaarData dual_haar;
  DualQuantumGroup bidual;
  Mat evaluation;  // a -> (omega -> omega(a)) in bidual coordinates
  double residual = 0.0;
};
Biduality check_biduality(const QuantumGroupPresentation& p, const HaarData& haar, double tol);

// max |psi_hat(b^ * a^) - phi(b* a)| over basis pairs, and over random pairs.
double plancherel_basis_residual(const QuantumGroupPresentation& p, const HaarData& haar,
                                 const DualQuantumGroup& dual);
double plancherel_random_residual(const QuantumGroupPresentation& p, const HaarData& haar,
                                  const DualQuantumGroup& dual, int samples, std::uint64_t seed);

// pi_hat(omega) Lambda_hat(theta) = Lambda_hat(omega theta) with Lambda_hat(a^) = Lambda(a).
struct DualRepresentation {
  std::vector<Mat> pi_hat;
  Mat rep(const Vec& coeffs) const;
};
DualRepresentation build_dual_rep(const GnsSpace& gns, const DualQuantumGroup& dual);

struct TrivialityDims {
  long invariant_dim = 0;     // dim {x : W* (1 (x) x) W = x (x) 1}
  long intersection_dim = 0;  // dim pi(A) cap pi_hat(A_hat)
  double invariant_gap = 0.0;  // smallest nonzero eigenvalue / largest, of the normal equations
};
TrivialityDims triviality_dims(const QuantumGroupModel& m, const DualRepresentation& rep, int probes,
                               std::uint64_t seed);

CheckList check_duality(const QuantumGroupModel& m, const GnsOptions& opt);

}  // namespace aqg
