#include "aqg/solvers.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseQR>
#include <Eigen/OrderingMethods>

namespace aqg {

Mat solve_antipode(const QuantumGroupPresentation& p, double tol) {
  validate_shapes(p);
  const int n = p.dim();
  const auto& alg = p.algebra;
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
  // Unknown S(r, q) sits at column r + q * n.
  Mat sys = Mat::Zero(2 * nn, nn);
  Mat rhs = Mat::Zero(2 * nn, 1);
  for (int a = 0; a < n; ++a) {
    Eigen::Map<const Mat> c(p.comul.col(a).data(), n, n);  // c(q, p) = Delta_a(p, q)
    for (int pp = 0; pp < n; ++pp)
      for (int q = 0; q < n; ++q) {
        cplx w = c(q, pp);
        if (w == cplx(0.0)) continue;
        for (int r = 0; r < n; ++r) {
          sys.block(a * n, r + pp * n, n, 1) += w * alg.mult.col(r * n + q);
          sys.block(nn + a * n, r + q * n, n, 1) += w * alg.mult.col(pp * n + r);
        }
      }
    rhs.block(a * n, 0, n, 1) = p.counit(a) * alg.unit;
    rhs.block(nn + a * n, 0, n, 1) = p.counit(a) * alg.unit;
  }
  Mat sol;
  Eigen::Index rank = 0;
  if (sparsity(sys) < 0.05) {
    SpMat sp = to_sparse(sys);
    sp.makeCompressed();
    Eigen::SparseQR<SpMat, Eigen::COLAMDOrdering<int>> qr;
    qr.setPivotThreshold(1e-10);
    qr.compute(sp);
    rank = qr.rank();
    if (rank == nn) sol = qr.solve(rhs);
  } else {
    Eigen::ColPivHouseholderQR<Mat> qr(sys);
    qr.setThreshold(1e-10);
    rank = qr.rank();
    if (rank == nn) sol = qr.solve(rhs);
  }
  if (rank < nn)
    throw Error(ErrorCode::NonUnique, "antipode equations leave " + std::to_string(nn - rank) +
                                          " free directions");
  double res = (sys * sol - rhs).cwiseAbs().maxCoeff();
  if (res > std::max(tol, 1e-9)) throw Error(ErrorCode::NoSolution, "antipode residual " + std::to_string(res));
  return Eigen::Map<Mat>(sol.data(), n, n);
}

const Mat& antipode_of(const QuantumGroupPresentation& p) {
  if (!p.antipode) throw Error(ErrorCode::PreconditionFailed, "antipode not available");
  return *p.antipode;
}

QuantumGroupPresentation with_antipode(QuantumGroupPresentation p, double tol) {
  if (!p.antipode) p.antipode = solve_antipode(p, tol);
  return p;
}

HaarData haar_from_functional(const AlgebraPresentation& alg, const RowVec& phi, double tol) {
  const int n = alg.dim;
  HaarData h;
  h.phi = phi;
  h.gram.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      h.gram(a, b) = (phi * product(alg, alg.involution.col(b), basis_vector(n, a)))(0);
  Mat herm = 0.5 * (h.gram + h.gram.adjoint());
  if ((h.gram - herm).cwiseAbs().maxCoeff() > std::max(tol, 1e-9) * std::max(1.0, herm.norm()))
    throw Error(ErrorCode::NotPositive, "Gram matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(herm, Eigen::EigenvaluesOnly);
  RVec ev = es.eigenvalues();
  double scale = std::max(1e-300, ev.cwiseAbs().maxCoeff());
  if (ev.maxCoeff() < 0) ev = -ev;
  if (ev.minCoeff() < -tol * scale) throw Error(ErrorCode::NotPositive, "Gram matrix is indefinite");
  h.min_eig = ev.minCoeff();
  if (h.min_eig <= tol * scale) throw Error(ErrorCode::NotFaithful, "Gram matrix is singular");
  h.normalized = std::abs((phi * alg.unit)(0) - 1.0) <= 1e-12;
  return h;
}

namespace {

Mat invariance_system(const QuantumGroupPresentation& p, bool left) {
  const int n = p.dim();
  const auto& alg = p.algebra;
  Mat sys = Mat::Zero(static_cast<Eigen::Index>(n) * n * n, n);
  std::vector<Mat> rb(n);
  for (int b = 0; b < n; ++b) rb[b] = right_mult(alg, basis_vector(n, b));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Vec x = left ? apply_leg1(rb[b], p.comul.col(a), n) : apply_leg2(rb[b], p.comul.col(a), n);
      Eigen::Map<const Mat> m(x.data(), n, n);  // m(q, p) = X(p, q)
      auto blk = sys.middleRows((static_cast<Eigen::Index>(a) * n + b) * n, n);
      // left: output component p, coefficient of phi_q is X(p, q); right: component q, psi_p.
      blk = left ? Mat(m.transpose()) : Mat(m);
      blk(b, a) -= 1.0;
    }
  return sys;
}

RowVec normalized_null_vector(const Mat& sys, const AlgebraPresentation& alg, long* null_dim) {
  Mat ns = null_space(sys, 1e-9);
  *null_dim = static_cast<long>(ns.cols());
  if (ns.cols() == 0) throw Error(ErrorCode::NoHaar, "invariance system has trivial kernel");
  if (ns.cols() > 1)
    throw Error(ErrorCode::NonUnique, "invariant functionals form a " + std::to_string(ns.cols()) +
                                          "-dimensional space");
  RowVec f = ns.col(0).transpose();
  cplx at_one = (f * alg.unit)(0);
  if (std::abs(at_one) < 1e-12) throw Error(ErrorCode::NotFaithful, "invariant functional vanishes at 1");
  return f / at_one;
}

}  // namespace

double left_invariance_residual(const QuantumGroupPresentation& p, const RowVec& phi) {
  return max_abs(invariance_system(p, true) * phi.transpose());
}

double right_invariance_residual(const QuantumGroupPresentation& p, const RowVec& psi) {
  return max_abs(invariance_system(p, false) * psi.transpose());
}

HaarData solve_haar(const QuantumGroupPresentation& p, double tol) {
  validate_shapes(p);
  Mat sys = invariance_system(p, true);
  long nd = 0;
  RowVec phi = normalized_null_vector(sys, p.algebra, &nd);
  HaarData h = haar_from_functional(p.algebra, phi, tol);
  h.null_dim = nd;
  h.invariance_residual = max_abs(sys * phi.transpose());
  return h;
}

RowVec solve_right_haar(const QuantumGroupPresentation& p, double tol) {
  validate_shapes(p);
  long nd = 0;
  RowVec psi = normalized_null_vector(invariance_system(p, false), p.algebra, &nd);
  haar_from_functional(p.algebra, psi, tol);
  return psi;
}

Mat solve_modular_automorphism(const AlgebraPresentation& alg, const RowVec& f) {
  const int n = alg.dim;
  // form(i, j) = f(e_i e_j); f(e_i e_j) = f(e_j r(e_i)) gives form * r = form^T.
  Mat form(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) form(i, j) = (f * alg.mult.col(i * n + j))(0);
  Eigen::FullPivLU<Mat> lu(form);
  if (!lu.isInvertible()) throw Error(ErrorCode::NotFaithful, "bilinear form of functional is singular");
  return lu.solve(Mat(form.transpose()));
}

Mat solve_rho(const AlgebraPresentation& alg, const HaarData& haar) {
  return solve_modular_automorphism(alg, haar.phi);
}

Vec solve_delta(const QuantumGroupPresentation& p, const HaarData& haar, double tol,
                double* consistency) {
  const int n = p.dim();
  // y_a = (phi (x) id) Delta(a) must equal phi(a) delta for every a.
  Mat y(n, n);
  for (int a = 0; a < n; ++a) y.col(a) = slice_left(haar.phi, p.comul.col(a), n);
  RowVec w = haar.phi;
  double denom = w.squaredNorm();
  Vec delta = y * w.adjoint() / denom;
  double worst = 0.0;
  std::vector<Mat> rb(n);
  for (int b = 0; b < n; ++b) rb[b] = right_mult(p.algebra, basis_vector(n, b));
  Vec db(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Vec lhs = slice_left(haar.phi, apply_leg2(rb[b], p.comul.col(a), n), n);
      Vec rhs = haar.phi(a) * (rb[b] * delta);
      worst = std::max(worst, max_abs(lhs - rhs));
    }
  if (consistency) *consistency = worst;
  if (worst > std::max(tol, 1e-9) * std::max(1.0, delta.norm()))
    throw Error(ErrorCode::Inconsistent, "witnesses disagree on delta by " + std::to_string(worst));
  return delta;
}

cplx compute_mu(const QuantumGroupPresentation& p, const HaarData& haar, double tol, double* residual) {
  const Mat& s = antipode_of(p);
  RowVec lhs = haar.phi * s * s;
  cplx mu = (haar.phi.conjugate() * lhs.transpose())(0) / haar.phi.squaredNorm();
  double res = max_abs(lhs - mu * haar.phi);
  if (residual) *residual = res;
  if (res > std::max(tol, 1e-9)) throw Error(ErrorCode::NotProportional, "phi S^2 is not a multiple of phi");
  return mu;
}

AlgebraicModularData solve_modular(const QuantumGroupPresentation& p, const HaarData& haar, double tol) {
  AlgebraicModularData m;
  const Mat& s = antipode_of(p);
  m.rho = solve_rho(p.algebra, haar);
  m.rho_prime = solve_modular_automorphism(p.algebra, haar.phi * s);
  m.delta = solve_delta(p, haar, tol, &m.delta_consistency);
  m.delta_inv = inverse(p.algebra, m.delta);
  m.mu = compute_mu(p, haar, tol, &m.mu_residual);
  m.psi = solve_right_haar(p, tol);
  return m;
}

CheckList check_modular_relations(const QuantumGroupPresentation& p, const HaarData& haar,
                                  const AlgebraicModularData& m, double tol) {
  const int n = p.dim();
  const auto& alg = p.algebra;
  const Mat& s = antipode_of(p);
  const Mat& d = p.comul;
  const Mat id = Mat::Identity(n, n);
  const std::string g = "modular_algebraic";
  CheckList out;

  out.push_back(residual_check(g, "haar_left_invariance", "(id (x) phi)(Delta(a)(b (x) 1)) = phi(a) b",
                               haar.invariance_residual, tol));
  out.push_back(dimension_check(g, "haar_uniqueness", "left invariant functionals form a line",
                                haar.null_dim, 1));
  out.push_back(lower_bound_check(g, "haar_faithful", "phi(a* a) > 0 for a != 0", haar.min_eig, tol));

  double kms = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx lhs = (haar.phi * alg.mult.col(i * n + j))(0);
      cplx rhs = (haar.phi * product(alg, basis_vector(n, j), m.rho.col(i)))(0);
      kms = std::max(kms, std::abs(lhs - rhs));
    }
  out.push_back(residual_check(g, "rho_definition", "phi(ab) = phi(b rho(a))", kms, tol));

  double rm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rm = std::max(rm, max_abs(m.rho * alg.mult.col(i * n + j) -
                                product(alg, m.rho.col(i), m.rho.col(j))));
  out.push_back(residual_check(g, "rho_multiplicative", "rho(ab) = rho(a) rho(b)", rm, tol));
  // x -> rho(rho(x*)*) is rho I conj(rho) conj(I).
  Mat rr = m.rho * alg.involution * m.rho.conjugate() * alg.involution.conjugate();
  out.push_back(residual_check(g, "rho_star", "rho(rho(a*)*) = a", max_abs(rr - id), tol));

  RowVec phis = haar.phi * s;
  double kp = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx lhs = (phis * alg.mult.col(i * n + j))(0);
      cplx rhs = (phis * product(alg, basis_vector(n, j), m.rho_prime.col(i)))(0);
      kp = std::max(kp, std::abs(lhs - rhs));
    }
  out.push_back(residual_check(g, "rho_prime_definition", "(phi S)(ab) = (phi S)(b rho'(a))", kp, tol));
  out.push_back(residual_check(g, "S_rho_prime", "S rho' = rho S", max_abs(s * m.rho_prime - m.rho * s), tol));
  Mat conj_delta = left_mult(alg, m.delta) * m.rho * right_mult(alg, m.delta_inv);
  out.push_back(residual_check(g, "rho_prime_delta", "rho'(a) = delta rho(a) delta^-1",
                               max_abs(m.rho_prime - conj_delta), tol));

  Mat s2 = s * s;
  Mat sinv = s.inverse();
  Mat sm2 = sinv * sinv;
  out.push_back(residual_check(g, "comul_rho", "Delta rho = (S^2 (x) rho) Delta",
                               max_abs(d * m.rho - kron_apply(s2, m.rho, d)), tol));
  out.push_back(residual_check(g, "comul_rho_prime", "Delta rho' = (rho' (x) S^-2) Delta",
                               max_abs(d * m.rho_prime - kron_apply(m.rho_prime, sm2, d)), tol));
  out.push_back(residual_check(g, "rho_inverse_rho_prime", "(rho^-1 (x) rho') Delta = Delta S^-2",
                               max_abs(kron_apply(m.rho.inverse(), m.rho_prime, d) - d * sm2), tol));

  out.push_back(residual_check(g, "delta_consistency", "(phi (x) id)(Delta(a)(1 (x) b)) = phi(a) delta b",
                               m.delta_consistency, tol));
  out.push_back(residual_check(g, "delta_grouplike", "Delta(delta) = delta (x) delta",
                               max_abs(d * m.delta - kron(m.delta, m.delta)), tol));
  out.push_back(residual_check(g, "delta_counit", "eps(delta) = 1",
                               std::abs((p.counit * m.delta)(0) - 1.0), tol));
  out.push_back(residual_check(g, "delta_antipode", "S(delta) = delta^-1",
                               max_abs(s * m.delta - m.delta_inv), tol));

  double ps = 0.0, pm = 0.0;
  for (int a = 0; a < n; ++a) {
    Vec e = basis_vector(n, a);
    cplx lhs = (haar.phi * s * e)(0);
    cplx mid = (haar.phi * product(alg, e, m.delta))(0);
    cplx rhs = m.mu * (haar.phi * product(alg, m.delta, e))(0);
    ps = std::max(ps, std::abs(lhs - mid));
    pm = std::max(pm, std::abs(mid - rhs));
  }
  out.push_back(residual_check(g, "phi_S_delta", "phi(S(a)) = phi(a delta)", ps, tol));
  out.push_back(residual_check(g, "phi_delta_mu", "phi(a delta) = mu phi(delta a)", pm, tol));
  out.push_back(residual_check(g, "mu_proportional", "phi S^2 = mu phi", m.mu_residual, tol));
  out.push_back(scalar_check(g, "mu_modulus", "|mu| = 1", std::abs(m.mu), 1.0, tol));
  out.push_back(residual_check(g, "rho_delta", "rho(delta) = mu^-1 delta",
                               max_abs(m.rho * m.delta - m.delta / m.mu), tol));
  out.push_back(residual_check(g, "rho_prime_delta_scalar", "rho'(delta) = mu^-1 delta",
                               max_abs(m.rho_prime * m.delta - m.delta / m.mu), tol));

  out.push_back(residual_check(g, "psi_right_invariance", "(psi (x) id)(Delta(a)(1 (x) b)) = psi(a) b",
                               right_invariance_residual(p, m.psi), tol));
  // psi is a multiple of phi o S; the constant is compared with nu later.
  RowVec phis_n = phis / (phis * alg.unit)(0);
  out.push_back(residual_check(g, "psi_proportional_phi_S", "psi = c phi S",
                               max_abs(m.psi - phis_n), tol));
  return out;
}

}  // namespace aqg
