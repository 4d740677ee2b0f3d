#include "aqg/modular.hpp"

#include <algorithm>
#include <cmath>

namespace aqg {

namespace {

const cplx kI(0.0, 1.0);

Mat ipow(const Mat& m, int k) {
  Mat out = Mat::Identity(m.rows(), m.cols());
  Mat base = k >= 0 ? m : Mat(m.inverse());
  for (int i = 0; i < std::abs(k); ++i) out = out * base;
  return out;
}

double rel_max(const Mat& a, const Mat& b) {
  return max_abs(a - b) / std::max({1.0, max_abs(a), max_abs(b)});
}

double unitary_defect(const AntiLinOp& u) {
  return max_abs(u.m.adjoint() * u.m - Mat::Identity(u.cols(), u.cols()));
}

Check with_note(Check c, std::string note) {
  c.note = std::move(note);
  return c;
}

const char* kTransferNote =
    "evaluated on coordinates through the verified agreement Delta_r pi = (pi (x) pi) Delta";

}  // namespace

Mat coordinate_map(const QuantumGroupModel& m, const std::function<Mat(const Mat&)>& f,
                    double* membership) {
  const int n = m.dim();
  Mat out(n, n);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    out.col(i) = m.gns.pullback(m.pres.algebra, f(m.gns.pi[i]), &r);
    worst = std::max(worst, r);
  }
  if (membership) *membership = worst;
  return out;
}

QuantumGroupModel build_model(QuantumGroupPresentation p, const GnsOptions& opt) {
  QuantumGroupModel m;
  if (!p.antipode) p.antipode = solve_antipode(p, opt.tol);
  m.pres = std::move(p);
  m.s = *m.pres.antipode;
  m.s_inv = m.s.inverse();
  m.options = opt;
  m.haar = solve_haar(m.pres, opt.tol);
  m.modular = solve_modular(m.pres, m.haar, opt.tol);
  m.gns = build_gns(m.pres, m.haar);
  m.w = build_W(m.pres, m.gns.ortho, m.gns.ortho, opt.dense_threshold);
  const Eigen::Index n = m.dim();
  m.probes = probe_vectors(n * n, opt.probes, opt.seed + 1);
  return m;
}

PolarData polar_machinery(const QuantumGroupModel& m, const RowVec& eta, const Vec& x, const Vec& y,
                          const Mat& gamma_frame, double tol) {
  const auto& alg = m.pres.algebra;
  const int n = m.dim();
  PolarData pd;
  for (int a = 0; a < n; ++a) {
    Vec sa = m.s.col(a);
    cplx expected = (m.haar.phi * product(alg, sa, x))(0);
    pd.precondition = std::max(pd.precondition, std::abs(eta(a) - expected));
  }
  if (pd.precondition > tol * std::max(1.0, eta.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::PreconditionFailed,
                "eta differs from phi(S(.) x) by " + std::to_string(pd.precondition));
  // a -> S(a)* y in coordinates is R_y I conj(S) conj(a).
  Mat coords = right_mult(alg, y) * alg.involution * m.s.conjugate();
  pd.gamma_frame = gamma_frame;
  pd.g = {gamma_frame * coords * m.gns.ortho_inv.conjugate()};
  AntiPolar pol = polar(pd.g);
  pd.positive = pol.square;
  pd.unitary = pol.unitary;
  Mat gamma_inv = gamma_frame.inverse();
  pd.theta.resize(n);
  for (int i = 0; i < n; ++i) pd.theta[i] = gamma_frame * alg.mult.middleCols(i * n, n) * gamma_inv;
  pd.v = build_W(m.pres, gamma_frame, m.gns.ortho, m.options.dense_threshold);
  return pd;
}

CheckList check_polar(const QuantumGroupModel& m, const PolarData& pd, const std::string& group,
                      const AntiLinOp& j, const PositiveOp& nabla) {
  const auto& alg = m.pres.algebra;
  const int n = m.dim();
  const double tol = m.options.tol;
  CheckList out;
  out.push_back(residual_check(group, group + ".precondition", "eta(a) = phi(S(a) x)", pd.precondition, tol));
  out.push_back(lower_bound_check(group, group + ".positive_pd", "min eig of G* G", pd.positive.min_eig(), tol));
  out.push_back(residual_check(group, group + ".unitary_antiunitary", "J_G* J_G = 1", unitary_defect(pd.unitary), tol));
  out.push_back(residual_check(group, group + ".polar", "G = J_G P_G^{1/2}",
                               rel_max(compose(pd.unitary, pd.positive.pow(0.5)).m, pd.g.m), tol));

  double th = 0.0;
  for (int a = 0; a < n; ++a) {
    Vec sa_star = star(alg, m.s.col(a));
    Mat lhs = pd.theta[a] * pd.g.m;
    Mat rhs = pd.g.m * m.gns.rep(sa_star).conjugate();
    th = std::max(th, rel_max(lhs, rhs));
  }
  out.push_back(residual_check(group, group + ".theta_intertwines", "theta(a) G = G pi(S(a)*)", th, tol));

  const Mat& v = m.probes;
  Mat wv = m.w.op.apply(v);
  Mat lhs = tensor_apply(pd.unitary.m, j.m, wv, true);
  Mat rhs = pd.v.op.apply_adjoint(tensor_apply(pd.unitary.m, j.m, v, true));
  out.push_back(residual_check(group, group + ".J_W", "(J_G (x) J) W = V* (J_G (x) J)",
                               relative_residual(lhs, rhs), tol));
  Mat pm = pd.positive.matrix(), nm = nabla.matrix();
  out.push_back(residual_check(group, group + ".P_nabla_W", "(P_G (x) nabla) W = W (P_G (x) nabla)",
                               relative_residual(kron_apply(pm, nm, wv), m.w.op.apply(kron_apply(pm, nm, v))), tol));

  double pw = 0.0;
  Mat s2inv = m.s_inv * m.s_inv;
  for (int k = -2; k <= 2; ++k) {
    Mat pk = pd.positive.pow(double(k));
    Mat sk = ipow(s2inv, k);
    for (int a = 0; a < n; ++a)
      pw = std::max(pw, rel_max(m.gns.pi[a] * pk, pk * m.gns.rep(sk.col(a))));
  }
  out.push_back(residual_check(group, group + ".pi_P_power", "pi(a) P_G^k = P_G^k pi(S^{-2k}(a)), k = -2..2", pw, tol));
  return out;
}

Mat conjugate_by_power(const PositiveOp& op, cplx z, const Mat& x) { return op.pow(z) * x * op.pow(-z); }
Mat sigma(const ModularSuite& s, cplx t, const Mat& x) { return conjugate_by_power(s.nabla, kI * t, x); }
Mat tau(const ModularSuite& s, cplx t, const Mat& x) { return conjugate_by_power(s.m_op(), kI * t, x); }
Mat scaling_k(const ModularSuite& s, cplx t, const Mat& x) { return conjugate_by_power(s.p, kI * t, x); }
Mat sigma_prime(const ModularSuite& s, cplx t, const Mat& x) {
  return conjugate_by_power(s.delta_op, kI * t, sigma(s, t, x));
}
Mat unitary_antipode(const AntiLinOp& i, const Mat& x) { return i.m * x.transpose() * i.m.conjugate(); }

Vec element_power(const QuantumGroupModel& m, const PositiveOp& delta_op, cplx z, double* residual) {
  return m.gns.pullback(m.pres.algebra, delta_op.pow(z), residual);
}

NuEstimate estimate_nu(const QuantumGroupModel& m, const ModularSuite& s) {
  const int n = m.dim();
  NuEstimate e;
  Vec f(n), g(n);
  for (int i = 0; i < n; ++i) {
    f(i) = m.haar.phi(i);
    Vec c = m.gns.pullback(m.pres.algebra, tau(s, 1.0, m.gns.pi[i]));
    g(i) = (m.haar.phi * c)(0);
  }
  cplx nu = f.dot(g) / f.squaredNorm();
  e.nu = nu.real();
  e.residual = std::max((g - nu * f).cwiseAbs().maxCoeff(), std::abs(nu.imag()));
  Mat d = s.delta_op.matrix();
  Mat sd = sigma(s, 1.0, d);
  e.gamma = (d.adjoint() * sd).trace().real() / d.squaredNorm();
  return e;
}

double compute_nu(const QuantumGroupModel& m, const ModularSuite& s, double tol) {
  NuEstimate e = estimate_nu(m, s);
  if (e.residual > tol) throw Error(ErrorCode::Inconsistent, "phi tau_1 is not proportional to phi");
  if (!(e.nu > 0.0)) throw Error(ErrorCode::Inconsistent, "scaling constant is not positive");
  if (std::abs(e.gamma * e.nu - 1.0) > tol)
    throw Error(ErrorCode::Inconsistent, "sigma_t(delta) = nu^{-t} delta cross-check failed");
  return e.nu;
}

ModularSuite build_modular_suite(const QuantumGroupModel& m) {
  const auto& alg = m.pres.algebra;
  const int n = m.dim();
  const double tol = m.options.tol;
  const auto& mod = m.modular;
  ModularSuite s;
  s.mu = mod.mu;
  s.t = m.gns.frame_antilinear(alg.involution);
  AntiPolar tp = polar(s.t);
  s.nabla = tp.square;
  s.j = tp.unitary;

  Mat frame_delta = gns_frame(alg, m.haar.phi, mod.delta);
  s.e = {frame_delta * m.s * alg.involution * m.gns.ortho_inv.conjugate()};
  Mat pmat = s.e.m.transpose() * s.e.m.conjugate();
  s.p = PositiveOp(0.5 * (pmat + pmat.adjoint()));

  Vec x = mod.delta / mod.mu;
  s.scaling = polar_machinery(m, m.haar.phi, x, alg.unit, m.gns.ortho, tol);

  s.l_op = frame_delta * m.gns.ortho_inv;
  Mat dop = s.l_op.adjoint() * s.l_op;
  s.delta_op = PositiveOp(0.5 * (dop + dop.adjoint()));

  NuEstimate e = estimate_nu(m, s);
  s.nu = e.nu;
  s.gamma = e.gamma;
  s.nu_residual = e.residual;

  s.t_hat = m.gns.frame_antilinear(right_mult(alg, mod.delta) * alg.involution * m.s.conjugate());
  s.dual_hilbert = polar_machinery(m, m.haar.phi, x, mod.delta, m.gns.ortho, tol);

  s.delta_half = element_power(m, s.delta_op, 0.5);
  s.psi_sym = RowVec(n);
  for (int a = 0; a < n; ++a) {
    Vec c = product(alg, product(alg, s.delta_half, basis_vector(n, a)), s.delta_half);
    s.psi_sym(a) = (m.haar.phi * c)(0);
  }
  cplx nu_half = std::exp(0.5 * kI * std::log(std::max(s.nu, 1e-300)));
  Mat gamma_frame = m.gns.ortho * right_mult(alg, s.delta_half);
  s.right_haar = polar_machinery(m, s.psi_sym, nu_half * alg.unit, alg.unit, gamma_frame, tol);
  return s;
}

CheckList check_left_hilbert(const QuantumGroupModel& m, const ModularSuite& s) {
  const auto& alg = m.pres.algebra;
  const int n = m.dim();
  const double tol = m.options.tol;
  const auto& mod = m.modular;
  const std::string g = "left_hilbert";
  CheckList out;
  const Mat& b = m.gns.ortho;
  out.push_back(residual_check(g, "T_definition", "T Lambda(a) = Lambda(a*)",
                               rel_max(s.t.m * b.conjugate(), b * alg.involution), tol));
  out.push_back(residual_check(g, "nabla_rho", "nabla Lambda(a) = Lambda(rho(a))",
                               rel_max(s.nabla.matrix() * b, b * mod.rho), tol));
  out.push_back(residual_check(g, "T_polar", "J nabla^{1/2} = T",
                               rel_max(compose(s.j, s.nabla.pow(0.5)).m, s.t.m), tol));
  out.push_back(residual_check(g, "J_antiunitary", "J* J = 1", unitary_defect(s.j), tol));
  out.push_back(residual_check(g, "J_involutive", "J^2 = 1",
                               max_abs(compose(s.j, s.j) - Mat::Identity(n, n)), tol));
  double comm = 0.0;
  for (int a = 0; a < n; ++a) {
    Mat ja = s.j.m * m.gns.pi[a].transpose() * s.j.m.conjugate();  // J pi(a)* J
    for (int c = 0; c < n; ++c) comm = std::max(comm, rel_max(ja * m.gns.pi[c], m.gns.pi[c] * ja));
  }
  out.push_back(residual_check(g, "J_commutant", "J pi(a)* J commutes with pi(b)", comm, tol));
  out.push_back(note_check(g, "nabla_multiplicative", "nabla(vw) = nabla(v) nabla(w) on the Tomita algebra",
                           "subsumed: follows from nabla Lambda(a) = Lambda(rho(a)) and rho multiplicative"));

  Mat frame_delta = s.l_op * b;
  Mat dinv_l = left_mult(alg, mod.delta_inv) * right_mult(alg, mod.delta);
  Mat s2inv = m.s_inv * m.s_inv;
  out.push_back(residual_check(g, "P_definition", "P Lambda(a) = Lambda(delta^{-1} S^{-2}(a) delta)",
                               rel_max(s.p.matrix() * b, b * dinv_l * s2inv), tol));
  // E* Lambda_delta(a) = Lambda(delta^{-1} S(a)* delta).
  Mat eadj = s.e.m.transpose() * frame_delta.conjugate();
  Mat expect = b * dinv_l * alg.involution * m.s.conjugate();
  out.push_back(residual_check(g, "E_adjoint", "E* Lambda_delta(a) = Lambda(delta^{-1} S(a)* delta)",
                               rel_max(eadj, expect), tol));
  return out;
}

CheckList check_polar_antipode(const QuantumGroupModel& m, const ModularSuite& s) {
  const auto& alg = m.pres.algebra;
  const int n = m.dim();
  const double tol = m.options.tol;
  const std::string g = "polar_antipode";
  CheckList out = check_polar(m, s.scaling, "scaling_construction", s.j, s.nabla);
  const AntiLinOp& iop = s.i_op();
  double thm = 0.0;
  for (int a = 0; a < n; ++a) {
    Mat lhs = m.gns.rep(m.s.col(a));
    Mat rhs = unitary_antipode(iop, tau(s, cplx(0.0, -0.5), m.gns.pi[a]));
    thm = std::max(thm, rel_max(lhs, rhs));
  }
  out.push_back(residual_check(g, "antipode_polar_decomposition", "pi(S(a)) = R(tau_{-i/2}(pi(a)))", thm, tol));

  double tn = 0.0;
  Mat s2inv = m.s_inv * m.s_inv;
  for (int k = -2; k <= 2; ++k) {
    Mat sk = ipow(s2inv, k);
    for (int a = 0; a < n; ++a)
      tn = std::max(tn, rel_max(tau(s, cplx(0.0, k), m.gns.pi[a]), m.gns.rep(sk.col(a))));
  }
  out.push_back(residual_check(g, "tau_analytic", "tau_{ki}(pi(a)) = pi(S^{-2k}(a)), k = -2..2", tn, tol));

  Rng rng(m.options.seed + 11);
  double rt = 0.0, rr = 0.0, ranti = 0.0;
  for (double t : {0.3, 1.7}) {
    for (int a = 0; a < n; ++a) {
      const Mat& x = m.gns.pi[a];
      rt = std::max(rt, rel_max(unitary_antipode(iop, tau(s, t, x)), tau(s, t, unitary_antipode(iop, x))));
    }
    Mat x = rng.cmat(n, n);
    rt = std::max(rt, rel_max(unitary_antipode(iop, tau(s, t, x)), tau(s, t, unitary_antipode(iop, x))));
  }
  for (int a = 0; a < n; ++a) {
    const Mat& x = m.gns.pi[a];
    rr = std::max(rr, rel_max(unitary_antipode(iop, unitary_antipode(iop, x)), x));
    for (int c = 0; c < n; ++c)
      ranti = std::max(ranti, rel_max(unitary_antipode(iop, x * m.gns.pi[c]),
                                      unitary_antipode(iop, m.gns.pi[c]) * unitary_antipode(iop, x)));
  }
  out.push_back(residual_check(g, "R_tau_commute", "R tau_t = tau_t R, t in {0.3, 1.7}", rt, tol));
  out.push_back(residual_check(g, "R_involutive", "R(R(x)) = x on pi(A)", rr, tol));
  out.push_back(residual_check(g, "R_antimultiplicative", "R(xy) = R(y) R(x) on pi(A)", ranti, tol));
  (void)alg;
  return out;
}

CheckList check_dual_hilbert(const QuantumGroupModel& m, const ModularSuite& s) {
  const int n = m.dim();
  const double tol = m.options.tol;
  const std::string g = "dual_hilbert";
  CheckList out = check_polar(m, s.dual_hilbert, "dual_hilbert_construction", s.j, s.nabla);
  out.push_back(residual_check(g, "T_hat_equals_G", "T_hat Lambda(a) = Lambda(S(a)* delta) equals G for y = delta",
                               rel_max(s.t_hat.m, s.dual_hilbert.g.m), tol));
  Mat nh = s.t_hat.m.transpose() * s.t_hat.m.conjugate();
  out.push_back(residual_check(g, "nabla_hat", "nabla_hat = T_hat* T_hat",
                               rel_max(nh, s.dual_hilbert.positive.matrix()), tol));
  double ta = 0.0, ra = 0.0;
  for (double t : {0.3, 1.7})
    for (int a = 0; a < n; ++a)
      ta = std::max(ta, rel_max(conjugate_by_power(s.dual_hilbert.positive, cplx(0.0, t), m.gns.pi[a]),
                                tau(s, t, m.gns.pi[a])));
  for (int a = 0; a < n; ++a)
    ra = std::max(ra, rel_max(unitary_antipode(s.dual_hilbert.unitary, m.gns.pi[a]),
                              unitary_antipode(s.i_op(), m.gns.pi[a])));
  out.push_back(residual_check(g, "tau_by_nabla_hat", "tau_t(x) = nabla_hat^{it} x nabla_hat^{-it}", ta, tol));
  out.push_back(residual_check(g, "R_by_J_hat", "R(x) = J_hat x* J_hat", ra, tol));
  return out;
}

CheckList check_right_haar_instance(const QuantumGroupModel& m, const ModularSuite& s) {
  const auto& alg = m.pres.algebra;
  const int n = m.dim();
  const double tol = m.options.tol;
  const std::string g = "right_haar";
  CheckList out = check_polar(m, s.right_haar, "right_haar_construction", s.j, s.nabla);

  Mat inner(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      inner(j, i) = (s.psi_sym * product(alg, star(alg, basis_vector(n, j)), basis_vector(n, i)))(0);
  const Mat& gf = s.right_haar.gamma_frame;
  out.push_back(residual_check(g, "gamma_gns", "<Gamma(a), Gamma(b)> = psi(b* a) for Gamma(a) = Lambda(a delta^{1/2})",
                               rel_max(gf.adjoint() * gf, inner), tol));
  out.push_back(residual_check(g, "psi_right_invariant", "psi = phi(delta^{1/2} . delta^{1/2}) is right invariant",
                               right_invariance_residual(m.pres, s.psi_sym), tol));
  cplx nu_half = std::exp(0.5 * kI * std::log(s.nu));
  RowVec phis = m.haar.phi * m.s;
  out.push_back(residual_check(g, "psi_phi_S", "psi = nu^{i/2} phi S",
                               max_abs(s.psi_sym - nu_half * phis), tol));
  const AntiLinOp& d = s.right_haar.unitary;
  out.push_back(residual_check(g, "D_involutive", "D^2 = 1", max_abs(compose(d, d) - Mat::Identity(n, n)), tol));
  Mat vw = s.right_haar.v.op.apply(m.probes), ww = m.w.op.apply(m.probes);
  out.push_back(residual_check(g, "V_equals_W", "V = W for Gamma(a) = Lambda(a delta^{1/2})",
                               relative_residual(vw, ww), tol));
  double ta = 0.0, ra = 0.0;
  for (double t : {0.3, 1.7})
    for (int a = 0; a < n; ++a)
      ta = std::max(ta, rel_max(conjugate_by_power(s.right_haar.positive, cplx(0.0, t), m.gns.pi[a]),
                                tau(s, t, m.gns.pi[a])));
  for (int a = 0; a < n; ++a)
    ra = std::max(ra, rel_max(unitary_antipode(d, m.gns.pi[a]), unitary_antipode(s.i_op(), m.gns.pi[a])));
  out.push_back(residual_check(g, "tau_by_Q", "tau_t(x) = Q^{it} x Q^{-it}", ta, tol));
  out.push_back(residual_check(g, "R_by_D", "R(x) = D x* D", ra, tol));
  Mat qit = s.right_haar.positive.it(0.7);
  const Mat& ci = s.i_op().m;
  out.push_back(residual_check(g, "Q_I_symmetry", "Q^{it} = I Q^{it} I",
                               rel_max(qit, ci * qit.conjugate() * ci.conjugate()), tol));
  out.push_back(note_check(g, "psi_core", "pi(A) is a core for the GNS map of psi",
                           "vacuous at finite dimension: pi(A) is the whole algebra"));
  return out;
}

CheckList check_w_identities(const QuantumGroupModel& m, const ModularSuite& s) {
  const double tol = m.options.tol;
  const std::string g = "w_commutation";
  const Mat& v = m.probes;
  const LinOp& w = m.w.op;
  Mat wv = w.apply(v);
  CheckList out;
  auto lin = [&](const std::string& name, const std::string& id, const Mat& a1, const Mat& b1,
                 const Mat& a2, const Mat& b2) {
    out.push_back(residual_check(g, name, id,
                                 relative_residual(kron_apply(a1, b1, wv), w.apply(kron_apply(a2, b2, v))), tol));
  };
  auto anti = [&](const std::string& name, const std::string& id, const Mat& a, const Mat& b) {
    out.push_back(residual_check(
        g, name, id,
        relative_residual(tensor_apply(a, b, wv, true), w.apply_adjoint(tensor_apply(a, b, v, true))), tol));
  };
  const Mat& p = s.p.matrix();
  const Mat& nb = s.nabla.matrix();
  const Mat& mm = s.m_op().matrix();
  const Mat& nh = s.dual_hilbert.positive.matrix();
  const Mat& q = s.right_haar.positive.matrix();
  const Mat& d = s.delta_op.matrix();
  Mat id = Mat::Identity(m.dim(), m.dim());
  lin("W_P_P", "(P (x) P) W = W (P (x) P)", p, p, p, p);
  lin("W_nabla_nabla_P", "(nabla (x) nabla) W = W (nabla (x) P)", nb, nb, nb, p);
  lin("W_M_nabla", "(M (x) nabla) W = W (M (x) nabla)", mm, nb, mm, nb);
  anti("W_I_J", "(I (x) J) W = W* (I (x) J)", s.i_op().m, s.j.m);
  anti("W_Jhat_J", "(J_hat (x) J) W = W* (J_hat (x) J)", s.dual_hilbert.unitary.m, s.j.m);
  lin("W_nablahat_nabla", "(nabla_hat (x) nabla) W = W (nabla_hat (x) nabla)", nh, nb, nh, nb);
  lin("W_delta", "(1 (x) delta) W = W (delta (x) delta)", id, d, d, d);
  lin("W_Q_nabla", "(Q (x) nabla) W = W (Q (x) nabla)", q, nb, q, nb);
  anti("W_D_J", "(D (x) J) W = W* (D (x) J)", s.right_haar.unitary.m, s.j.m);
  return out;
}

CheckList check_functional_calculus(const ModularSuite& s, double tol) {
  const std::string g = "functional_calculus";
  CheckList out;
  const std::vector<std::pair<std::string, const PositiveOp*>> ops = {
      {"nabla", &s.nabla}, {"P", &s.p}, {"M", &s.scaling.positive}, {"nabla_hat", &s.dual_hilbert.positive},
      {"Q", &s.right_haar.positive}, {"delta", &s.delta_op}};
  const std::vector<cplx> exps = {-1.0, -0.5, 0.5, 1.0, cplx(0.0, 0.7)};
  for (const auto& [name, op] : ops) {
    double law = 0.0;
    for (cplx a : exps)
      for (cplx b : exps) law = std::max(law, rel_max(op->pow(a) * op->pow(b), op->pow(a + b)));
    Mat half = op->pow(0.5);
    const Eigen::Index n = half.rows();
    Mat u = op->it(0.7);
    double extra = std::max({rel_max(half * half, op->matrix()), max_abs(u.adjoint() * u - Mat::Identity(n, n)),
                             max_abs(op->pow(0.0) - Mat::Identity(n, n))});
    out.push_back(residual_check(g, name + "_group_law", name + "^s " + name + "^t = " + name + "^{s+t}", law, tol));
    out.push_back(residual_check(g, name + "_root_unitary",
                                 "(" + name + "^{1/2})^2 = " + name + ", " + name + "^{it} unitary, " + name + "^0 = 1",
                                 extra, tol));
  }
  return out;
}

CheckList check_groups(const QuantumGroupModel& m, const ModularSuite& s, double t) {
  const int n = m.dim();
  const double tol = m.options.tol;
  const Mat& comul = m.pres.comul;
  const std::string g = "one_parameter_groups";
  double mem = 0.0, r = 0.0;
  auto pull = [&](std::function<Mat(const Mat&)> f) {
    Mat c = coordinate_map(m, f, &r);
    mem = std::max(mem, r);
    return c;
  };
  Mat sig = pull([&](const Mat& x) { return sigma(s, t, x); });
  Mat kk = pull([&](const Mat& x) { return scaling_k(s, t, x); });
  Mat ta = pull([&](const Mat& x) { return tau(s, t, x); });
  Mat tam = pull([&](const Mat& x) { return tau(s, -t, x); });
  Mat sp = pull([&](const Mat& x) { return sigma_prime(s, t, x); });
  CheckList out;
  out.push_back(residual_check(g, "groups_preserve_pi_A", "sigma_t, K_t, tau_t, sigma'_t map pi(A) into pi(A)", mem, tol));
  auto cov = [&](const std::string& name, const std::string& id, const Mat& left, const Mat& right, const Mat& inner) {
    out.push_back(with_note(residual_check(g, name, id, rel_max(kron_apply(left, right, comul), comul * inner), tol),
                            kTransferNote));
  };
  cov("sigma_K_covariance", "(sigma_t (x) K_t) Delta = Delta sigma_t", sig, kk, sig);
  cov("sigma_tau_covariance", "Delta sigma_t = (tau_t (x) sigma_t) Delta", ta, sig, sig);
  cov("tau_covariance", "Delta tau_t = (tau_t (x) tau_t) Delta", ta, ta, ta);
  cov("sigma_prime_covariance", "Delta sigma'_t = (sigma'_t (x) tau_{-t}) Delta", sp, tam, sp);
  cov("tau_sigma_sigma_prime", "Delta tau_t = (sigma_t (x) sigma'_t) Delta", sig, sp, ta);

  double kt = 0.0;
  for (int a = 0; a < n; ++a) {
    Mat rhs = conjugate_by_power(s.delta_op, cplx(0.0, -t), tau(s, -t, m.gns.pi[a]));
    kt = std::max(kt, rel_max(scaling_k(s, t, m.gns.pi[a]), rhs));
  }
  out.push_back(residual_check(g, "K_from_tau", "K_t(a) = delta^{-it} tau_{-t}(a) delta^{it}", kt, tol));
  double sn = 0.0;
  for (int k = -2; k <= 2; ++k) {
    Mat rk = ipow(m.modular.rho, -k);
    for (int a = 0; a < n; ++a)
      sn = std::max(sn, rel_max(sigma(s, cplx(0.0, k), m.gns.pi[a]), m.gns.rep(rk.col(a))));
  }
  out.push_back(residual_check(g, "sigma_analytic", "sigma_{ki}(pi(a)) = pi(rho^{-k}(a)), k = -2..2", sn, tol));
  double id0 = 0.0;
  for (int a = 0; a < n; ++a)
    id0 = std::max({id0, rel_max(sigma(s, 0.0, m.gns.pi[a]), m.gns.pi[a]), rel_max(tau(s, 0.0, m.gns.pi[a]), m.gns.pi[a])});
  out.push_back(residual_check(g, "groups_at_zero", "sigma_0 = tau_0 = id", id0, tol));
  return out;
}

CheckList check_antipode_symmetry(const QuantumGroupModel& m, const ModularSuite& s) {
  const int n = m.dim();
  const double tol = m.options.tol;
  const std::string g = "antipode_symmetry";
  double mem = 0.0;
  Mat r = coordinate_map(m, [&](const Mat& x) { return unitary_antipode(s.i_op(), x); }, &mem);
  CheckList out;
  out.push_back(residual_check(g, "R_preserves_pi_A", "R maps pi(A) into pi(A)", mem, tol));
  Mat lhs = flip_rows(kron_apply(r, r, m.pres.comul), n, n);
  out.push_back(with_note(residual_check(g, "R_coproduct", "chi (R (x) R) Delta = Delta R",
                                         rel_max(lhs, m.pres.comul * r), tol),
                          kTransferNote));
  out.push_back(residual_check(g, "R_squared", "R^2 = id on pi(A)", max_abs(r * r - Mat::Identity(n, n)), tol));
  return out;
}

CheckList check_delta_operator(const QuantumGroupModel& m, const ModularSuite& s) {
  const auto& alg = m.pres.algebra;
  const int n = m.dim();
  const double tol = m.options.tol;
  const std::string g = "modular_element";
  const Mat& d = s.delta_op.matrix();
  const Mat& b = m.gns.ortho;
  CheckList out;
  out.push_back(lower_bound_check(g, "delta_op_pd", "delta = L* L is positive definite", s.delta_op.min_eig(), tol));
  out.push_back(residual_check(g, "delta_op_definition", "delta Lambda(a) = Lambda(delta a)",
                               rel_max(d * b, b * left_mult(alg, m.modular.delta)), tol));
  Mat dit = s.delta_op.it(0.7);
  Mat lhs = reduced_comul_apply(m.w.op, dit, m.probes);
  out.push_back(residual_check(g, "delta_grouplike_reduced", "Delta_r(delta^{it}) = delta^{it} (x) delta^{it}",
                               relative_residual(lhs, kron_apply(dit, dit, m.probes)), tol));
  out.push_back(residual_check(g, "R_delta", "R(delta) = delta^{-1}",
                               rel_max(unitary_antipode(s.i_op(), d), s.delta_op.pow(-1.0)), tol));
  out.push_back(residual_check(g, "tau_delta", "tau_t(delta) = delta", rel_max(tau(s, 0.7, d), d), tol));
  out.push_back(residual_check(g, "sigma_delta", "sigma_t(delta) = nu^{-t} delta",
                               rel_max(sigma(s, 0.7, d), std::pow(s.nu, -0.7) * d), tol));
  double incl = 0.0, rho_res = 0.0, er = 0.0;
  for (cplx z : {cplx(0.5, 0.0), cplx(0.0, 0.3)}) {
    Mat dz = s.delta_op.pow(z);
    for (int a = 0; a < n; ++a) {
      double r = 0.0;
      m.gns.pullback(alg, dz * m.gns.pi[a], &r);
      incl = std::max(incl, r);
    }
    Vec c = element_power(m, s.delta_op, z, &er);
    incl = std::max(incl, er);
    cplx scale = std::exp(kI * z * std::log(s.nu));
    rho_res = std::max(rho_res, max_abs(m.modular.rho * c - scale * c) / std::max(1.0, c.cwiseAbs().maxCoeff()));
  }
  out.push_back(residual_check(g, "delta_power_inclusion", "delta^z pi(A) is contained in pi(A)", incl, tol));
  out.push_back(residual_check(g, "rho_delta_power", "rho(delta^z) = nu^{iz} delta^z", rho_res, tol));
  out.push_back(note_check(g, "delta_power_core", "pi(A) is a core for delta^z",
                           "vacuous at finite dimension: pi(A) is the whole algebra"));
  return out;
}

CheckList check_scalars(const QuantumGroupModel& m, const ModularSuite& s) {
  const double tol = m.options.tol;
  const std::string g = "scalars";
  CheckList out;
  out.push_back(value_report(g, "mu_real", "mu (real part)", s.mu.real()));
  out.push_back(value_report(g, "mu_imag", "mu (imaginary part)", s.mu.imag()));
  out.push_back(value_report(g, "nu", "phi tau_t = nu^t phi", s.nu));
  out.push_back(value_report(g, "gamma", "sigma_t(delta) = gamma^t delta", s.gamma));
  out.push_back(residual_check(g, "nu_extraction", "phi(tau_1(a)) = nu phi(a) least squares", s.nu_residual, tol));
  out.push_back(lower_bound_check(g, "nu_positive", "nu > 0", s.nu, 0.0));
  out.push_back(residual_check(g, "mu_modulus", "|mu| = 1", std::abs(std::abs(s.mu) - 1.0), tol));
  cplx nu_mi = std::exp(-kI * std::log(s.nu));
  out.push_back(residual_check(g, "mu_nu", "mu = nu^{-i}", std::abs(s.mu - nu_mi), tol));
  out.push_back(residual_check(g, "gamma_nu", "gamma nu = 1", std::abs(s.gamma * s.nu - 1.0), tol));
  return out;
}

CheckList check_manageability(const QuantumGroupModel& m, const ModularSuite& s, int samples) {
  const int n = m.dim();
  const double tol = m.options.tol;
  const std::string g = "manageability";
  const Mat& q = s.right_haar.positive.matrix();
  const LinOp& w = m.w.op;
  CheckList out;
  out.push_back(residual_check(g, "W_Q_Q", "W (Q (x) Q) = (Q (x) Q) W",
                               relative_residual(w.apply(kron_apply(q, q, m.probes)), kron_apply(q, q, w.apply(m.probes))),
                               tol));
  Rng rng(m.options.seed + 21);
  Mat qh = s.right_haar.positive.pow(0.5), qmh = s.right_haar.positive.pow(-0.5);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    Vec u1 = rng.unit_cvec(n), u2 = rng.unit_cvec(n), v1 = rng.unit_cvec(n), v2 = rng.unit_cvec(n);
    Vec left_vec = w.apply_adjoint(kron(Vec(qh * u1), s.j(v1)));
    cplx lhs = kron(Vec(qmh * u2), s.j(v2)).dot(left_vec);
    Vec wu = w.apply(kron(u1, v2));
    cplx rhs = kron(u2, v1).dot(wu);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
  }
  out.push_back(residual_check(g, "manageable_pairing",
                               "<W*(Q^{1/2} u1 (x) J v1), Q^{-1/2} u2 (x) J v2> = <W(u1 (x) v2), u2 (x) v1>", worst, tol));
  return out;
}

CheckList check_invariance(const QuantumGroupModel& m, const ModularSuite& s, int functionals) {
  const auto& alg = m.pres.algebra;
  const int n = m.dim();
  const double tol = m.options.tol;
  const std::string g = "invariance";
  const RowVec& phi = m.haar.phi;
  CheckList out;
  double li = 0.0;
  for (int a = 0; a < n; ++a) {
    Vec lhs = slice_right(phi, m.pres.comul.col(a), n);
    li = std::max(li, max_abs(lhs - phi(a) * alg.unit));
  }
  out.push_back(with_note(residual_check(g, "left_invariance_reduced", "(id (x) phi) Delta(x) = phi(x) 1 on pi(A)", li, tol),
                          kTransferNote));

  // theta = omega R tau_{-i/2} on pi(A).
  Rng rng(m.options.seed + 31);
  double worst = 0.0;
  std::vector<Mat> rt(n);
  for (int p = 0; p < n; ++p) rt[p] = unitary_antipode(s.i_op(), tau(s, cplx(0.0, -0.5), m.gns.pi[p]));
  for (int k = 0; k < functionals; ++k) {
    Vec xi = rng.unit_cvec(n), eta = rng.unit_cvec(n);
    RowVec omega(n), theta(n);
    for (int p = 0; p < n; ++p) {
      omega(p) = eta.dot(m.gns.pi[p] * xi);
      theta(p) = eta.dot(rt[p] * xi);
    }
    Vec a = rng.cvec(n), b = rng.cvec(n);
    Vec bs = star(alg, b);
    Vec slice_a = slice_left(omega, m.pres.comul * a, n);
    cplx lhs = (phi * product(alg, bs, slice_a))(0);
    Vec slice_b = slice_left(theta, m.pres.comul * bs, n);
    cplx rhs = (phi * product(alg, slice_b, a))(0);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
  }
  out.push_back(with_note(residual_check(g, "strong_left_invariance",
                                         "phi(b* (omega (x) id)Delta(a)) = phi((theta (x) id)(Delta(b*)) a), theta = omega R tau_{-i/2}",
                                         worst, tol),
                          kTransferNote));
  out.push_back(note_check(g, "phi_on_pi_A", "phi(pi(a)) = phi(a)",
                           "holds by construction: the reduced functional is the vector state of Lambda(1)"));
  out.push_back(note_check(g, "phi_core", "pi(A) is a core for the GNS map of phi",
                           "vacuous at finite dimension: pi(A) is the whole algebra"));
  return out;
}

CheckList run_modular_checks(const QuantumGroupModel& m, const ModularSuite& s) {
  CheckList out;
  append(out, check_left_hilbert(m, s));
  append(out, check_polar_antipode(m, s));
  append(out, check_dual_hilbert(m, s));
  append(out, check_right_haar_instance(m, s));
  append(out, check_w_identities(m, s));
  append(out, check_functional_calculus(s, m.options.tol));
  append(out, check_groups(m, s, 0.7));
  append(out, check_antipode_symmetry(m, s));
  append(out, check_delta_operator(m, s));
  append(out, check_scalars(m, s));
  append(out, check_manageability(m, s, 100));
  append(out, check_invariance(m, s, 50));
  return out;
}

}  // namespace aqg
