#include "aqg/duality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

namespace aqg {

namespace {

double rel(const Mat& lhs, const Mat& rhs) { return max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs)); }

Vec row_major_vec(const Mat& a) {
  Mat t = a.transpose();
  return Eigen::Map<const Vec>(t.data(), t.size());
}

}  // namespace

DualQuantumGroup build_dual(const QuantumGroupPresentation& p_in, const HaarData& haar) {
  QuantumGroupPresentation p = with_antipode(p_in);
  const AlgebraPresentation& alg = p.algebra;
  const int n = p.dim();
  const Mat& s = *p.antipode;

  DualQuantumGroup d;
  d.fourier.resize(n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) d.fourier(k, i) = (haar.phi * alg.mult.col(k * n + i))(0);
  Eigen::FullPivLU<Mat> lu(d.fourier);
  if (!lu.isInvertible()) throw Error(ErrorCode::NotFaithful, "Fourier transform is not bijective");
  d.fourier_inv = lu.inverse();
  const Mat& f = d.fourier;
  const Mat& fi = d.fourier_inv;

  AlgebraPresentation& da = d.pres.algebra;
  da.dim = n;
  da.labels.resize(n);
  for (int i = 0; i < n; ++i)
    da.labels[i] = (i < int(alg.labels.size()) ? alg.labels[i] : "e" + std::to_string(i)) + "^";
  // (w1 w2)(a) = (w1 (x) w2)(Delta(a)).
  da.mult = fi * p.comul.transpose() * kron(f, f);
  // w*(a) = conj(w(S(a)*)).
  da.involution = fi * s.transpose() * alg.involution.transpose().conjugate() * f.conjugate();
  da.unit = fi * p.counit.transpose();
  // Delta_hat(w)(x (x) y) = w(xy).
  Mat fik = kron(fi, fi);
  d.pres.comul = fik * alg.mult.transpose() * f;
  d.pres.counit = alg.unit.transpose() * f;
  d.pres.antipode = Mat(fi * s.transpose() * f);
  d.psi_hat = p.counit;
  return d;
}

double hopf_morphism_residual(const QuantumGroupPresentation& from, const QuantumGroupPresentation& to,
                              const Mat& map) {
  const AlgebraPresentation& a = from.algebra;
  const AlgebraPresentation& b = to.algebra;
  Mat mm = kron(map, map);
  double r = rel(map * a.mult, b.mult * mm);
  r = std::max(r, rel(map * a.unit, b.unit));
  r = std::max(r, rel(map * a.involution, b.involution * map.conjugate()));
  r = std::max(r, rel(mm * from.comul, to.comul * map));
  r = std::max(r, rel(to.counit * map, from.counit));
  if (from.antipode && to.antipode) r = std::max(r, rel(map * *from.antipode, *to.antipode * map));
  return r;
}

Mat pairing_isomorphism(const DualQuantumGroup& dual, const Mat& pairing) {
  return pairing.transpose().fullPivLu().solve(dual.fourier);
}

Biduality check_biduality(const QuantumGroupPresentation& p_in, const HaarData& haar, double tol) {
  QuantumGroupPresentation p = with_antipode(p_in, tol);
  Biduality b;
  b.dual = build_dual(p, haar);
  b.dual_haar = solve_haar(b.dual.pres, tol);
  b.bidual = build_dual(b.dual.pres, b.dual_haar);
  // omega(a) = a^T F c for omega with coefficients c.
  b.evaluation = b.bidual.fourier_inv * b.dual.fourier.transpose();
  b.residual = hopf_morphism_residual(p, b.bidual.pres, b.evaluation);
  return b;
}

double plancherel_basis_residual(const QuantumGroupPresentation& p, const HaarData& haar,
                                 const DualQuantumGroup& dual) {
  const int n = p.dim();
  const AlgebraPresentation& da = dual.pres.algebra;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    Vec ei = basis_vector(n, i);
    for (int j = 0; j < n; ++j) {
      Vec ej = basis_vector(n, j);
      cplx lhs = (dual.psi_hat * product(da, star(da, ej), ei))(0);
      worst = std::max(worst, std::abs(lhs - haar.gram(i, j)));
    }
  }
  return worst;
}

double plancherel_random_residual(const QuantumGroupPresentation& p, const HaarData& haar,
                                  const DualQuantumGroup& dual, int samples, std::uint64_t seed) {
  const int n = p.dim();
  const AlgebraPresentation& da = dual.pres.algebra;
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vec a = rng.cvec(n), b = rng.cvec(n);
    cplx lhs = (dual.psi_hat * product(da, star(da, b), a))(0);
    cplx rhs = (haar.phi * product(p.algebra, star(p.algebra, b), a))(0);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return worst;
}

Mat DualRepresentation::rep(const Vec& coeffs) const {
  Mat out = Mat::Zero(pi_hat[0].rows(), pi_hat[0].cols());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    if (coeffs(i) != cplx(0.0)) out += coeffs(i) * pi_hat[i];
  return out;
}

DualRepresentation build_dual_rep(const GnsSpace& gns, const DualQuantumGroup& dual) {
  DualRepresentation r;
  const int n = dual.pres.dim();
  r.pi_hat.resize(n);
  for (int i = 0; i < n; ++i)
    r.pi_hat[i] = gns.frame_linear(left_mult(dual.pres.algebra, basis_vector(n, i)));
  return r;
}

TrivialityDims triviality_dims(const QuantumGroupModel& m, const DualRepresentation& rep, int probes,
                               std::uint64_t seed) {
  const int n = m.dim();
  const Eigen::Index nn = Eigen::Index(n) * n;
  TrivialityDims t;

  // Unknown x = sum x_pq E_pq; the map x -> (1 (x) x) W v - W (x (x) 1) v for each probe v.
  Mat vs = probe_vectors(nn, probes, seed, 64);
  Mat wv = m.w.op.apply(vs);
  Mat gram = Mat::Zero(nn, nn);
  Mat block(nn, nn);
  for (Eigen::Index c = 0; c < vs.cols(); ++c) {
    Eigen::Map<const Mat> y(wv.col(c).data(), n, n);  // y(k, i) = (Wv)(i n + k)
    Eigen::Map<const Mat> v(vs.col(c).data(), n, n);  // v(k, i)
    for (int p = 0; p < n; ++p) {
      // W (E_pq (x) 1) v for all q at once: columns p n .. p n + n of W against row q of v.
      Mat shifted(nn, n);
      if (m.w.op.is_dense()) {
        shifted = m.w.op.dense->middleCols(Eigen::Index(p) * n, n) * v;
      } else {
        Mat u = Mat::Zero(nn, n);
        u.middleRows(Eigen::Index(p) * n, n) = v;
        shifted = m.w.op.apply(u);
      }
      for (int q = 0; q < n; ++q) {
        Vec col = -shifted.col(q);
        for (int i = 0; i < n; ++i) col(Eigen::Index(i) * n + p) += y(q, i);
        block.col(Eigen::Index(p) * n + q) = col;
      }
    }
    gram.noalias() += block.adjoint() * block;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
  const RVec& ev = es.eigenvalues();
  double top = std::max(ev(ev.size() - 1), 1e-300);
  long zero = 0;
  while (zero < ev.size() && ev(zero) <= 1e-10 * top) ++zero;
  t.invariant_dim = zero;
  t.invariant_gap = zero < ev.size() ? ev(zero) / top : 0.0;

  Mat pa(nn, n), pb(nn, n);
  for (int i = 0; i < n; ++i) {
    pa.col(i) = Eigen::Map<const Vec>(m.gns.pi[i].data(), nn);
    pb.col(i) = Eigen::Map<const Vec>(rep.pi_hat[i].data(), nn);
  }
  Mat both(nn, 2 * n);
  both << pa, pb;
  const double rt = 1e-9;
  t.intersection_dim = long(numerical_rank(pa, rt) + numerical_rank(pb, rt) - numerical_rank(both, rt));
  return t;
}

CheckList check_duality(const QuantumGroupModel& m, const GnsOptions& opt) {
  const QuantumGroupPresentation& p = m.pres;
  const AlgebraPresentation& alg = p.algebra;
  const int n = m.dim();
  const double tol = opt.tol;
  CheckList out;
  const std::string g = "dual";

  DualQuantumGroup d;
  try {
    d = build_dual(p, m.haar);
  } catch (const Error& e) {
    out.push_back(failed_check(g, "build_dual", "A_hat = {a phi}", e.what()));
    return out;
  }
  out.push_back(lower_bound_check(g, "fourier_bijective", "a -> a phi is a bijection",
                                  min_singular_value(d.fourier), tol));
  for (Check c : check_axioms(d.pres, tol)) {
    c.group = "dual_axioms";
    out.push_back(c);
  }
  out.push_back(residual_check(g, "psi_hat_right_invariant", "(psi_hat (x) id) Delta_hat = psi_hat(.) 1",
                               right_invariance_residual(d.pres, d.psi_hat), tol));
  out.push_back(residual_check(g, "plancherel_basis", "psi_hat(b^* a^) = phi(b* a)",
                               plancherel_basis_residual(p, m.haar, d), tol));
  out.push_back(residual_check(g, "plancherel_random", "psi_hat(b^* a^) = phi(b* a)",
                               plancherel_random_residual(p, m.haar, d, 100, opt.seed + 20), tol));
  try {
    Biduality b = check_biduality(p, m.haar, tol);
    out.push_back(residual_check(g, "biduality", "evaluation A -> dual(dual(A)) is a Hopf *-isomorphism",
                                 b.residual, tol));
  } catch (const Error& e) {
    out.push_back(failed_check(g, "biduality", "evaluation A -> dual(dual(A)) is a Hopf *-isomorphism",
                               e.what()));
  }

  const std::string rg = "dual_representation";
  DualRepresentation r = build_dual_rep(m.gns, d);
  const AlgebraPresentation& da = d.pres.algebra;
  double mul = 0.0, st = 0.0, lam = 0.0;
  for (int i = 0; i < n; ++i) {
    Vec ei = basis_vector(n, i);
    for (int j = 0; j < n; ++j)
      mul = std::max(mul, rel(r.rep(da.mult.col(i * n + j)), r.pi_hat[i] * r.pi_hat[j]));
    st = std::max(st, rel(r.rep(da.involution.col(i)), r.pi_hat[i].adjoint()));
    RowVec shifted = d.functional(ei) * m.s_inv;  // S_hat^{-1}(omega) = omega o S^{-1}
    for (int b = 0; b < n; ++b) {
      Vec lhs = r.pi_hat[i] * m.gns.lambda(basis_vector(n, b));
      Vec rhs = m.gns.lambda(slice_left(shifted, p.comul.col(b), n));
      lam = std::max(lam, max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs)));
    }
  }
  out.push_back(residual_check(rg, "pi_hat_multiplicative", "pi_hat(w1 w2) = pi_hat(w1) pi_hat(w2)", mul, tol));
  out.push_back(residual_check(rg, "pi_hat_star", "pi_hat(w*) = pi_hat(w)*", st, tol));
  out.push_back(residual_check(rg, "pi_hat_lambda", "pi_hat(w) Lambda(x) = Lambda((S_hat^{-1}(w) (x) id) Delta(x))",
                               lam, tol));

  std::vector<std::pair<int, int>> pairs;
  if (n <= 8) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) pairs.emplace_back(a, b);
  } else {
    std::mt19937_64 gen(opt.seed + 21);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int s = 0; s < 20; ++s) pairs.emplace_back(pick(gen), pick(gen));
  }
  double sl = 0.0;
  for (auto [a, b] : pairs) {
    Vec ea = basis_vector(n, a), eb = basis_vector(n, b);
    // (a phi b*)(x) = phi(b* x a)
    RowVec f = m.haar.phi * left_mult(alg, star(alg, eb)) * right_mult(alg, ea);
    Mat lhs = slice_leg1(m.w.op, m.gns.lambda(ea), m.gns.lambda(eb));
    sl = std::max(sl, rel(lhs, r.rep(d.coefficients(f))));
  }
  out.push_back(residual_check(rg, "slice_leg1_formula", "(omega_{Lambda(a),Lambda(b)} (x) id)(W) = pi_hat(a phi b*)",
                               sl, tol));

  double dc = 0.0;
  Mat id = Mat::Identity(n, n);
  Mat wa = m.w.op.apply_adjoint(m.probes);
  for (int a = 0; a < n; ++a) {
    Mat lhs = m.w.op.apply(kron_apply(r.pi_hat[a], id, wa));
    Mat rhs = Mat::Zero(m.probes.rows(), m.probes.cols());
    Vec x2 = d.pres.comul.col(a);
    for (int k = 0; k < n; ++k) {
      Vec row = x2.segment(k * n, n);
      if (row.isZero(0.0)) continue;
      rhs += kron_apply(r.pi_hat[k], r.rep(row), m.probes);
    }
    dc = std::max(dc, relative_residual(lhs, rhs));
  }
  out.push_back(residual_check(rg, "dual_reduced_comul_agreement", "W (pi_hat(w) (x) 1) W* = (pi_hat (x) pi_hat)(Delta_hat(w))",
                               dc, tol));

  const Eigen::Index nn = Eigen::Index(n) * n;
  Mat rb(nn, n);
  for (int j = 0; j < n; ++j) rb.col(j) = row_major_vec(r.pi_hat[j]);
  if (m.w.op.is_dense()) {
    Mat ra(nn, n);
    for (int i = 0; i < n; ++i) ra.col(i) = row_major_vec(m.gns.pi[i]);
    Mat rw = realign(*m.w.op.dense, n, n);  // rw = sum vec(A) vec(B)^T over W = sum A (x) B
    Mat x = lstsq(ra, rw).x;
    Mat ct = lstsq(rb, Mat(x.transpose())).x;
    Mat fit = ra * ct.transpose() * rb.transpose();
    out.push_back(residual_check(rg, "W_membership", "W in span(pi(A) (x) pi_hat(A_hat))",
                                 (rw - fit).norm() / std::max(1.0, rw.norm()), tol));
    // Rows of rw are the slices (omega (x) id)(W) for omega running over matrix units.
    Mat slices = rw.transpose();
    out.push_back(dimension_check(rg, "slice_leg1_span_rank", "dim span{(omega (x) id)(W)} = dim pi_hat(A_hat)",
                                  long(numerical_rank(slices, 1e-9)), n));
    Mat joint(nn, slices.cols() + n);
    joint << slices, rb;
    out.push_back(dimension_check(rg, "slice_leg1_span_joint", "span{(omega (x) id)(W)} = pi_hat(A_hat)",
                                  long(numerical_rank(joint, 1e-9)), n));
  } else {
    out.push_back(note_check(rg, "W_membership", "W in span(pi(A) (x) pi_hat(A_hat))",
                             "skipped: W is matrix-free above the dense threshold"));
    Rng rng(opt.seed + 22);
    Mat slices(nn, 2 * n);
    for (int s = 0; s < 2 * n; ++s) slices.col(s) = row_major_vec(slice_leg1(m.w.op, rng.cvec(n), rng.cvec(n)));
    out.push_back(dimension_check(rg, "slice_leg1_span_rank", "dim span{(omega (x) id)(W)} = dim pi_hat(A_hat)",
                                  long(numerical_rank(slices, 1e-9)), n));
    Mat joint(nn, 3 * n);
    joint << slices, rb;
    out.push_back(dimension_check(rg, "slice_leg1_span_joint", "span{(omega (x) id)(W)} = pi_hat(A_hat)",
                                  long(numerical_rank(joint, 1e-9)), n));
  }

  const std::string tg = "triviality";
  TrivialityDims t = triviality_dims(m, r, 3, opt.seed + 23);
  Check inv = dimension_check(tg, "invariant_elements_dim", "dim {x in B(H) : W* (1 (x) x) W = x (x) 1} = 1",
                              t.invariant_dim, 1);
  std::ostringstream gap;
  gap << "relative spectral gap " << t.invariant_gap;
  inv.note = gap.str();
  out.push_back(inv);
  out.push_back(dimension_check(tg, "intersection_dim", "dim (pi(A) cap pi_hat(A_hat)) = 1", t.intersection_dim, 1));
  return out;
}

}  // namespace aqg
