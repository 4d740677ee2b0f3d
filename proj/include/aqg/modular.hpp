#pragma once

#include <functional>
#include <string>

#include "aqg/gns.hpp"

namespace aqg {

// Everything built from a presentation up to the multiplicative unitary.
struct QuantumGroupModel {
  QuantumGroupPresentation pres;  // antipode filled in
  Mat s;
  Mat s_inv;
  HaarData haar;
  AlgebraicModularData modular;
  GnsSpace gns;
  MultiplicativeUnitary w;
  GnsOptions options;
  Mat probes;  // probe vectors on H (x) H

  int dim() const { return pres.dim(); }
};

QuantumGroupModel build_model(QuantumGroupPresentation p, const GnsOptions& opt = {});

// Output of the polar construction for (eta, x, y, Gamma):
// G Lambda(a) = Gamma(S(a)* y), P = G* G, G = J P^{1/2}, theta(a) Gamma(c) = Gamma(ac).
struct PolarData {
  AntiLinOp g;
  PositiveOp positive;
  AntiLinOp unitary;
  Mat gamma_frame;
  std::vector<Mat> theta;
  MultiplicativeUnitary v;  // V (Gamma (x) Lambda)(Delta(b)(a (x) 1)) = Gamma(a) (x) Lambda(b)
  double precondition = 0.0;  // max |eta(a) - phi(S(a) x)|
};

PolarData polar_machinery(const QuantumGroupModel& m, const RowVec& eta, const Vec& x, const Vec& y,
                          const Mat& gamma_frame, double tol);
CheckList check_polar(const QuantumGroupModel& m, const PolarData& pd, const std::string& group,
                      const AntiLinOp& j, const PositiveOp& nabla);

struct ModularSuite {
  AntiLinOp t;  // T Lambda(a) = Lambda(a*)
  PositiveOp nabla;
  AntiLinOp j;
  AntiLinOp e;  // E Lambda(a) = Lambda_delta(S(a*))
  PositiveOp p;
  PolarData scaling;       // eta = phi, x = delta / mu, y = 1: M and I
  AntiLinOp t_hat;         // T_hat Lambda(a) = Lambda(S(a)* delta)
  PolarData dual_hilbert;  // y = delta: nabla_hat and J_hat
  Mat l_op;                // Lambda(a) -> Lambda_delta(a)
  PositiveOp delta_op;
  Vec delta_half;          // delta^{1/2} as an element
  RowVec psi_sym;          // phi(delta^{1/2} . delta^{1/2})
  PolarData right_haar;    // eta = psi_sym, Gamma(a) = Lambda(a delta^{1/2}): Q and D
  double nu = 1.0;
  double gamma = 1.0;
  double nu_residual = 0.0;
  cplx mu{1.0, 0.0};
  CheckList build_notes;

  const PositiveOp& m_op() const { return scaling.positive; }
  const AntiLinOp& i_op() const { return scaling.unitary; }
};

ModularSuite build_modular_suite(const QuantumGroupModel& m);

// One-parameter groups and the anti-unitary antipode on B(H).
Mat conjugate_by_power(const PositiveOp& op, cplx it_exponent, const Mat& x);  // op^{z} x op^{-z}
Mat sigma(const ModularSuite& s, cplx t, const Mat& x);
Mat tau(const ModularSuite& s, cplx t, const Mat& x);
Mat scaling_k(const ModularSuite& s, cplx t, const Mat& x);
Mat sigma_prime(const ModularSuite& s, cplx t, const Mat& x);
Mat unitary_antipode(const AntiLinOp& i, const Mat& x);  // I x* I

// Coordinates of f(pi(e_i)) for a map f on B(H), with the worst membership residual in pi(A).
Mat coordinate_map(const QuantumGroupModel& m, const std::function<Mat(const Mat&)>& f,
                   double* membership = nullptr);

// Element delta^z from the positive operator pi(delta).
Vec element_power(const QuantumGroupModel& m, const PositiveOp& delta_op, cplx z,
                  double* residual = nullptr);

struct NuEstimate {
  double nu = 1.0;
  double residual = 0.0;
  double gamma = 1.0;
};
NuEstimate estimate_nu(const QuantumGroupModel& m, const ModularSuite& s);
// Throws Inconsistent when the two extractions disagree.
double compute_nu(const QuantumGroupModel& m, const ModularSuite& s, double tol);

CheckList check_left_hilbert(const QuantumGroupModel& m, const ModularSuite& s);
CheckList check_polar_antipode(const QuantumGroupModel& m, const ModularSuite& s);
CheckList check_dual_hilbert(const QuantumGroupModel& m, const ModularSuite& s);
CheckList check_right_haar_instance(const QuantumGroupModel& m, const ModularSuite& s);
CheckList check_w_identities(const QuantumGroupModel& m, const ModularSuite& s);
CheckList check_functional_calculus(const ModularSuite& s, double tol);
CheckList check_groups(const QuantumGroupModel& m, const ModularSuite& s, double t);
CheckList check_antipode_symmetry(const QuantumGroupModel& m, const ModularSuite& s);
CheckList check_delta_operator(const QuantumGroupModel& m, const ModularSuite& s);
CheckList check_scalars(const QuantumGroupModel& m, const ModularSuite& s);
CheckList check_manageability(const QuantumGroupModel& m, const ModularSuite& s, int samples);
CheckList check_invariance(const QuantumGroupModel& m, const ModularSuite& s, int functionals);

// Every check of the engine in report order.
CheckList run_modular_checks(const QuantumGroupModel& m, const ModularSuite& s);

}  // namespace aqg
