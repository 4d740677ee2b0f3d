#include "aqg/mnw.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>

namespace aqg {

namespace {

const cplx kI(0.0, 1.0);
const std::string kGroup = "mnw";

struct CatalogueItem {
  std::string name;
  std::string identity;
};

const std::vector<CatalogueItem>& items() {
  static const std::vector<CatalogueItem> v = {
      {"coassociativity", "(Delta (x) id) Delta = (id (x) Delta) Delta"},
      {"density_left", "Delta(B)(B (x) 1) is dense in B (x) B"},
      {"density_right", "Delta(B)(1 (x) B) is dense in B (x) B"},
      {"kms_weight_faithful", "phi is positive and faithful"},
      {"kms_sigma_invariance", "phi sigma_t = phi"},
      {"kms_condition", "phi(a x) = phi(x sigma_{-i}(a))"},
      {"tau_one_parameter_group", "tau_s tau_t = tau_{s+t}, tau_0 = id"},
      {"R_involutive_antiautomorphism", "R^2 = id, R(xy) = R(y) R(x), R(x*) = R(x)*"},
      {"left_invariance", "(id (x) phi) Delta(a) = phi(a) 1"},
      {"strong_left_invariance",
       "phi(b* (omega (x) id)Delta(a)) = phi((theta (x) id)(Delta(b*)) a), theta = omega R tau_{-i/2}"},
      {"tau_relative_invariance", "phi tau_t = nu^t phi"},
      {"tau_invariance_caveat", "phi tau_t = phi"},
      {"sigma_sigma_prime_commute", "sigma_s sigma'_t = sigma'_t sigma_s"},
      {"phi_sigma_prime_scaling", "phi sigma'_t = nu^{-t} phi"},
      {"R_tau_commute", "R tau_t = tau_t R"},
      {"tau_coproduct", "Delta tau_t = (tau_t (x) tau_t) Delta"},
      {"R_coproduct", "Delta R = chi (R (x) R) Delta"},
  };
  return v;
}

const std::string& identity_of(const std::string& name) {
  for (const auto& it : items())
    if (it.name == name) return it.identity;
  throw Error(ErrorCode::Schema, "unknown catalogue entry " + name);
}

const char* kCaveat =
    "phi is only relatively invariant under tau; nu is reported and nu = 1 is not required";
const char* kCommuteNote = "operational form of 'phi commutes with phi R': the modular groups of phi and psi commute";

double rel_max(const Mat& a, const Mat& b) {
  return max_abs(a - b) / std::max({1.0, max_abs(a), max_abs(b)});
}

double rel_scalar(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// Catalogue assembly: computed entries by name, failures with the first build error.
class Catalogue {
 public:
  void set(Check c) {
    c.group = kGroup;
    c.identity = identity_of(c.name);
    got_[c.name] = std::move(c);
  }
  void residual(const std::string& name, double value, double tol) {
    set(residual_check(kGroup, name, "", value, tol));
  }
  // Copy of an engine check under a catalogue name.
  void take(const std::string& name, const CheckList& suites, const std::string& source) {
    const Check* c = find_check(suites, source);
    if (!c) return;
    Check e = *c;
    e.name = name;
    e.note = "from " + c->group + "/" + c->name + (c->note.empty() ? "" : "; " + c->note);
    set(std::move(e));
  }
  // Runs fn, recording any exception as a failed entry.
  void guarded(const std::string& name, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      set(failed_check(kGroup, name, "", e.what()));
    }
  }
  void fail_reason(const std::string& why) {
    if (reason_.empty()) reason_ = why;
  }
  CheckList finish() const {
    CheckList out;
    for (const auto& it : items()) {
      auto f = got_.find(it.name);
      if (f != got_.end()) {
        out.push_back(f->second);
      } else {
        out.push_back(failed_check(kGroup, it.name, it.identity,
                                   reason_.empty() ? "not computed" : "not computed: " + reason_));
      }
    }
    return out;
  }

 private:
  std::map<std::string, Check> got_;
  std::string reason_;
};

void caveat(Catalogue& cat, double nu) {
  Check c = value_report(kGroup, "tau_invariance_caveat", "", nu);
  c.note = kCaveat;
  cat.set(c);
}

}  // namespace

const std::vector<std::string>& mnw_catalogue() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& it : items()) v.push_back(it.name);
    return v;
  }();
  return names;
}

bool MnwReport::pass() const {
  if (!all_pass(axioms) || !all_pass(suites)) return false;
  for (const auto& a : automorphisms)
    if (!all_pass(a.checks)) return false;
  for (const auto& u : grouplikes)
    if (!all_pass(u.checks)) return false;
  return true;
}

// ----------------------------------------------------------------------------
// Finite engine

AutomorphismResult automorphism_analysis(const QuantumGroupModel& m, const ModularSuite& s,
                                         const Mat& alpha, const Mat& beta) {
  const auto& alg = m.pres.algebra;
  const int n = m.dim();
  const double tol = m.options.tol;
  if (alpha.rows() != n || alpha.cols() != n || beta.rows() != n || beta.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "automorphism matrices must be " + std::to_string(n) + " x " +
                                                  std::to_string(n));
  double hom = 0.0;
  for (const Mat* f : {&alpha, &beta}) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Vec lhs = *f * alg.mult.col(i * n + j);
        hom = std::max(hom, max_abs(lhs - product(alg, f->col(i), f->col(j))));
      }
    hom = std::max(hom, max_abs(*f * alg.unit - alg.unit));
    hom = std::max(hom, max_abs(*f * alg.involution - alg.involution * f->conjugate()));
    if (min_singular_value(*f) <= tol) hom = std::max(hom, 1.0);
  }
  double inter = rel_max(m.pres.comul * alpha, kron(beta, alpha) * m.pres.comul);
  const double pre = std::max(hom, inter);
  if (pre > tol)
    throw Error(ErrorCode::PreconditionFailed,
                "alpha, beta are not *-automorphisms with Delta alpha = (beta (x) alpha) Delta, residual " +
                    std::to_string(pre));

  AutomorphismResult out;
  const std::string g = "automorphism";
  const RowVec& phi = m.haar.phi;
  RowVec pa = phi * alpha;
  const cplx r = (pa * phi.adjoint())(0) / phi.squaredNorm();
  out.r = r.real();
  out.checks.push_back(residual_check(g, "precondition", "Delta alpha = (beta (x) alpha) Delta", pre, tol));
  out.checks.push_back(residual_check(g, "r_proportional", "phi alpha = r phi", max_abs(pa - r * phi), tol));
  out.checks.push_back(residual_check(g, "r_real", "r is real", std::abs(r.imag()), tol));
  out.checks.push_back(lower_bound_check(g, "r_positive", "r > 0", r.real(), 0.0));
  double sc = 0.0, tc = 0.0, rc = 0.0;
  for (double t : {0.4, -1.3}) {
    Mat sg = coordinate_map(m, [&](const Mat& x) { return sigma(s, t, x); });
    Mat ta = coordinate_map(m, [&](const Mat& x) { return tau(s, t, x); });
    sc = std::max(sc, rel_max(sg * alpha, alpha * sg));
    tc = std::max(tc, rel_max(ta * beta, beta * ta));
  }
  Mat rm = coordinate_map(m, [&](const Mat& x) { return unitary_antipode(s.i_op(), x); });
  rc = rel_max(rm * beta, beta * rm);
  out.checks.push_back(residual_check(g, "sigma_alpha", "sigma_t alpha = alpha sigma_t", sc, tol));
  out.checks.push_back(residual_check(g, "tau_beta", "tau_t beta = beta tau_t", tc, tol));
  out.checks.push_back(residual_check(g, "R_beta", "R beta = beta R", rc, tol));
  return out;
}

GrouplikeResult grouplike_analysis(const QuantumGroupModel& m, const ModularSuite& s, const Vec& u) {
  const auto& alg = m.pres.algebra;
  const int n = m.dim();
  const double tol = m.options.tol;
  if (u.size() != n) throw Error(ErrorCode::DimensionMismatch, "grouplike element has the wrong size");
  // Delta(u) = v (x) u means the coefficient matrix X(i, k) is v u^T.
  Vec du = m.pres.comul * u;
  Mat x = Eigen::Map<const Mat>(du.data(), n, n).transpose();
  const double un = u.squaredNorm();
  if (un == 0.0) throw Error(ErrorCode::NotGrouplike, "u = 0");
  Vec v = x * u.conjugate() / un;
  double res = rel_max(x, v * u.transpose());
  if (res > tol) throw Error(ErrorCode::NotGrouplike, "Delta(u) is not of the form v (x) u, residual " + std::to_string(res));

  GrouplikeResult out;
  const std::string g = "grouplike";
  out.exact = max_abs(v - u) <= tol * std::max(1.0, u.cwiseAbs().maxCoeff());
  out.checks.push_back(residual_check(g, "form", "Delta(u) = v (x) u", res, tol));
  out.checks.push_back(residual_check(g, "unitary", "u* u = 1",
                                      max_abs(product(alg, star(alg, u), u) - alg.unit), tol));
  const RowVec& phi = m.haar.phi;
  cplx num = 0.0;
  double den = 0.0;
  std::vector<std::pair<cplx, cplx>> pairs;
  for (int k = 0; k < n; ++k) {
    Vec e = basis_vector(n, k);
    cplx a = (phi * product(alg, u, e))(0), b = (phi * product(alg, e, u))(0);
    pairs.emplace_back(a, b);
    num += std::conj(b) * a;
    den += std::norm(b);
  }
  cplx lambda = den > 0.0 ? num / den : cplx(1.0);
  double fit = 0.0;
  for (const auto& [a, b] : pairs) fit = std::max(fit, rel_scalar(a, lambda * b));
  out.lambda = lambda.real();
  out.checks.push_back(residual_check(g, "lambda_fit", "phi(u x) = lambda phi(x u)", fit, tol));
  out.checks.push_back(residual_check(g, "lambda_real", "lambda is real", std::abs(lambda.imag()), tol));
  out.checks.push_back(lower_bound_check(g, "lambda_positive", "lambda > 0", lambda.real(), 0.0));
  Mat pu = m.gns.rep(u);
  double sres = 0.0;
  for (double t : {0.7, -1.9}) {
    cplx scale = std::exp(kI * t * std::log(out.lambda));
    sres = std::max(sres, rel_max(sigma(s, t, pu), scale * pu));
  }
  out.checks.push_back(residual_check(g, "sigma_eigen", "sigma_t(u) = lambda^{it} u", sres, tol));
  if (out.exact) {
    out.checks.push_back(residual_check(g, "R_u", "R(u) = u*", rel_max(unitary_antipode(s.i_op(), pu), pu.adjoint()), tol));
    out.checks.push_back(residual_check(g, "tau_fixed", "tau_t(u) = u", rel_max(tau(s, 0.7, pu), pu), tol));
  }
  out.checks.push_back(note_check(g, "normalizes_pi_A", "u pi(a) = pi(x a) for some x",
                                  "automatic at finite dimension: u is an element of A"));
  return out;
}

MnwReport run_mnw(const QuantumGroupPresentation& pres, const MnwOptions& opt) {
  MnwReport rep;
  rep.engine = "finite";
  rep.seed = opt.gns.seed;
  rep.tol = opt.gns.tol;
  const double tol = opt.gns.tol;
  Catalogue cat;
  auto record = [&](const std::string& stage, const std::exception& e) {
    rep.suites.push_back(failed_check("build", stage, "construction succeeds", e.what()));
    cat.fail_reason(stage + " failed");
  };

  QuantumGroupPresentation p = pres;
  try {
    if (!p.antipode) p.antipode = solve_antipode(p, tol);
  } catch (const std::exception& e) {
    record("antipode", e);
  }
  try {
    CheckList ax = check_axioms(p, tol);
    cat.take("coassociativity", ax, "coassociativity");
    cat.take("density_left", ax, "T1_min_singular_value");
    cat.take("density_right", ax, "T2_min_singular_value");
    append(rep.suites, ax);
  } catch (const std::exception& e) {
    record("axioms", e);
  }

  std::optional<QuantumGroupModel> model;
  std::optional<ModularSuite> suite;
  if (p.antipode) {
    try {
      model = build_model(p, opt.gns);
    } catch (const std::exception& e) {
      record("model", e);
    }
  }
  if (model) {
    const QuantumGroupModel& m = *model;
    cat.set(lower_bound_check(kGroup, "kms_weight_faithful", "", m.haar.min_eig, tol));
    if (opt.engine_suites) {
      try {
        append(rep.suites, check_modular_relations(m.pres, m.haar, m.modular, tol));
        append(rep.suites, check_gns(m.pres, m.haar, m.gns, m.w, opt.gns));
      } catch (const std::exception& e) {
        record("gns", e);
      }
    }
    try {
      suite = build_modular_suite(m);
    } catch (const std::exception& e) {
      record("modular_suite", e);
    }
  }
  if (model && suite) {
    const QuantumGroupModel& m = *model;
    const ModularSuite& s = *suite;
    rep.mu = s.mu;
    rep.nu = s.nu;
    rep.gamma = s.gamma;
    CheckList mod;
    try {
      mod = run_modular_checks(m, s);
    } catch (const std::exception& e) {
      record("modular_checks", e);
    }
    cat.take("left_invariance", mod, "left_invariance_reduced");
    cat.take("strong_left_invariance", mod, "strong_left_invariance");
    cat.take("R_tau_commute", mod, "R_tau_commute");
    cat.take("tau_coproduct", mod, "tau_covariance");
    cat.take("R_coproduct", mod, "R_coproduct");
    if (opt.engine_suites) append(rep.suites, mod);

    const int n = m.dim();
    const auto& pi = m.gns.pi;
    const Vec xi = m.gns.lambda(m.pres.algebra.unit);
    auto phi = [&](const Mat& x) { return xi.dot(x * xi); };
    double scale = 1.0;
    for (int a = 0; a < n; ++a) scale = std::max(scale, std::abs(phi(pi[a])));
    auto worst_over = [&](const std::function<double(int)>& f) {
      double w = 0.0;
      for (int a = 0; a < n; ++a) w = std::max(w, f(a));
      return w;
    };

    cat.guarded("kms_sigma_invariance", [&] {
      double w = 0.0;
      for (double t : {0.4, -1.3})
        w = std::max(w, worst_over([&](int a) { return std::abs(phi(sigma(s, t, pi[a])) - phi(pi[a])) / scale; }));
      cat.residual("kms_sigma_invariance", w, tol);
    });
    cat.guarded("kms_condition", [&] {
      double w = 0.0;
      for (int a = 0; a < n; ++a) {
        Mat sa = sigma(s, cplx(0.0, -1.0), pi[a]);
        for (int b = 0; b < n; ++b) w = std::max(w, rel_scalar(phi(pi[a] * pi[b]), phi(pi[b] * sa)));
      }
      cat.residual("kms_condition", w, tol);
    });
    cat.guarded("tau_one_parameter_group", [&] {
      double w = worst_over([&](int a) {
        return std::max(rel_max(tau(s, 0.4, tau(s, 1.3, pi[a])), tau(s, 1.7, pi[a])),
                        rel_max(tau(s, 0.0, pi[a]), pi[a]));
      });
      cat.residual("tau_one_parameter_group", w, tol);
    });
    cat.guarded("R_involutive_antiautomorphism", [&] {
      auto r = [&](const Mat& x) { return unitary_antipode(s.i_op(), x); };
      double w = 0.0;
      for (int a = 0; a < n; ++a) {
        w = std::max({w, rel_max(r(r(pi[a])), pi[a]), rel_max(r(Mat(pi[a].adjoint())), r(pi[a]).adjoint())});
        for (int b = 0; b < n; ++b) w = std::max(w, rel_max(r(pi[a] * pi[b]), r(pi[b]) * r(pi[a])));
      }
      cat.residual("R_involutive_antiautomorphism", w, tol);
    });
    cat.guarded("tau_relative_invariance", [&] {
      double w = 0.0;
      for (double t : {0.7, -1.3})
        w = std::max(w, worst_over([&](int a) {
                       return std::abs(phi(tau(s, t, pi[a])) - std::pow(s.nu, t) * phi(pi[a])) / scale;
                     }));
      cat.residual("tau_relative_invariance", w, tol);
    });
    caveat(cat, s.nu);
    cat.guarded("sigma_sigma_prime_commute", [&] {
      double w = worst_over([&](int a) {
        return rel_max(sigma(s, 0.4, sigma_prime(s, 1.3, pi[a])), sigma_prime(s, 1.3, sigma(s, 0.4, pi[a])));
      });
      Check c = residual_check(kGroup, "sigma_sigma_prime_commute", "", w, tol);
      c.note = kCommuteNote;
      cat.set(c);
    });
    cat.guarded("phi_sigma_prime_scaling", [&] {
      double w = 0.0;
      for (double t : {0.7, -1.3})
        w = std::max(w, worst_over([&](int a) {
                       return std::abs(phi(sigma_prime(s, t, pi[a])) - std::pow(s.nu, -t) * phi(pi[a])) / scale;
                     }));
      cat.residual("phi_sigma_prime_scaling", w, tol);
    });

    for (const auto& in : opt.automorphisms) {
      try {
        AutomorphismResult r = automorphism_analysis(m, s, in.alpha, in.beta);
        r.label = in.label;
        rep.automorphisms.push_back(std::move(r));
      } catch (const std::exception& e) {
        AutomorphismResult r;
        r.label = in.label;
        r.r = std::nan("");
        r.checks.push_back(failed_check("automorphism", "precondition", "Delta alpha = (beta (x) alpha) Delta", e.what()));
        rep.automorphisms.push_back(std::move(r));
      }
    }
    std::vector<std::pair<std::string, Vec>> us;
    try {
      us.emplace_back("delta^i", element_power(m, s.delta_op, kI));
    } catch (const std::exception& e) {
      record("delta_power", e);
    }
    for (const auto& u : opt.grouplikes) us.push_back(u);
    for (const auto& [label, u] : us) {
      try {
        GrouplikeResult r = grouplike_analysis(m, s, u);
        r.label = label;
        if (label == "delta^i")
          r.checks.push_back(scalar_check("grouplike", "lambda_inverse_nu", "lambda = 1 / nu", r.lambda * s.nu, 1.0, tol));
        rep.grouplikes.push_back(std::move(r));
      } catch (const std::exception& e) {
        GrouplikeResult r;
        r.label = label;
        r.lambda = std::nan("");
        r.checks.push_back(failed_check("grouplike", "form", "Delta(u) = v (x) u", e.what()));
        rep.grouplikes.push_back(std::move(r));
      }
    }
    if (opt.engine_suites) {
      try {
        append(rep.suites, check_duality(m, opt.gns));
      } catch (const std::exception& e) {
        record("duality", e);
      }
    }
  }
  rep.axioms = cat.finish();
  return rep;
}

// ----------------------------------------------------------------------------
// Block engine

namespace {

Mat basis_block(int d, int x) {
  Mat e = Mat::Zero(d, d);
  e(x / d, x % d) = 1.0;
  return e;
}

// Row-major coordinates of f(pi(E_x)) pulled back from the frame, where pi(a) = a (x) 1.
Mat block_coordinate_map(int two_l, const std::function<Mat(const Mat&)>& f, double* membership = nullptr) {
  const int d = block_dim(two_l), n = d * d;
  const Mat id = Mat::Identity(d, d);
  Mat out(n, n);
  double worst = 0.0;
  for (int x = 0; x < n; ++x) {
    Mat y = f(kron(basis_block(d, x), id));
    Mat c = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j) c(i, k) += y(i * d + j, k * d + j);
    c /= double(d);
    worst = std::max(worst, rel_max(y, kron(c, id)));
    out.col(x) = vec_rm(c);
  }
  if (membership) *membership = std::max(*membership, worst);
  return out;
}

PositiveOp hermitian_positive(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
  return PositiveOp::from_spectrum(es.eigenvectors(), es.eigenvalues());
}

// Per-block operators of the modular theory and their algebra-level maps.
struct BlockGroups {
  int two_l = 0;
  PositiveOp nabla;
  PositiveOp m;
  AntiLinOp i;
  PositiveOp delta;  // delta_l on C^d
  RowVec phi;        // phi(a) = phi * vec_rm(a)

  Mat op_sigma(cplx t, const Mat& x) const { return nabla.pow(kI * t) * x * nabla.pow(-kI * t); }
  Mat op_tau(cplx t, const Mat& x) const { return m.pow(kI * t) * x * m.pow(-kI * t); }
  Mat op_sigma_prime(double t, const Mat& x) const {
    const int d = block_dim(two_l);
    Mat u = kron(delta.it(t), Mat::Identity(d, d));
    return u * op_sigma(t, x) * u.adjoint();
  }
  Mat op_R(const Mat& x) const { return unitary_antipode(i, x); }
};

BlockGroups block_groups(const BlockQuantumGroup& g, int two_l) {
  BlockModularOps ops = block_modular_ops(g, two_l);
  BlockGroups b;
  b.two_l = two_l;
  b.nabla = polar_svd(ops.t).square;
  b.m = ops.m;
  b.i = ops.i;
  b.delta = hermitian_positive(g.modular_element(two_l));
  b.phi = vec_rm(Mat(g.haar(two_l).transpose())).transpose();
  return b;
}

// (A (x) B) applied to an operator X on C^{d1} (x) C^{d2}, for maps A, B on row-major coordinates.
Mat tensor_map(const Mat& a, const Mat& b, const Mat& x, int d1, int d2) {
  return unrealign(a * realign(x, d1, d2) * b.transpose(), d1, d2);
}

// Operator on C^{d2} (x) C^{d1} moved to C^{d1} (x) C^{d2}.
Mat swap_legs(const Mat& y, int d2, int d1) {
  Mat p = Mat::Zero(d1 * d2, d1 * d2);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2) p(i1 * d2 + i2, i2 * d1 + i1) = 1.0;
  return p * y * p.transpose();
}

BlockElement single(int two_l, const Mat& a) {
  BlockElement e;
  e.blocks[two_l] = a;
  return e;
}

double strong_invariance_residual(const BlockQuantumGroup& g, int cap, const BlockOptions& opt) {
  Rng rng(opt.seed + 77);
  double worst = 0.0;
  const int samples = 5;
  for (int k = 0; k < samples; ++k) {
    std::map<int, Mat> w, theta;  // densities: omega(x) = sum Tr(W_l x_l)
    BlockElement b, bstar;
    for (int l = 0; l <= cap; ++l) {
      const int d = block_dim(l);
      w[l] = rng.cmat(d, d);
      // theta = omega S: Tr(Theta x) = Tr(W S(x)).
      Vec c = g.antipode(l).transpose() * vec_rm(Mat(w[l].transpose()));
      theta[l] = unvec_rm(c, d).transpose();
      b.blocks[l] = rng.cmat(d, d);
      bstar.blocks[l] = b.blocks[l].adjoint();
    }
    // Slice (F (x) id) of X on C^{d1} (x) C^{d2} against the density F.
    auto slice = [](const Mat& f, const Mat& x, int d1, int d2) {
      Mat y = Mat::Zero(d2, d2);
      for (int i1 = 0; i1 < d1; ++i1)
        for (int j1 = 0; j1 < d1; ++j1) y += f(i1, j1) * x.block(j1 * d2, i1 * d2, d2, d2);
      return y;
    };
    for (int la = 0; la <= cap; ++la) {
      const int da = block_dim(la);
      Mat a = rng.cmat(da, da);
      BlockElement ae = single(la, a);
      cplx lhs = 0.0;
      for (int l2 = 0; l2 <= cap; ++l2) {
        Mat y = Mat::Zero(block_dim(l2), block_dim(l2));
        for (int l1 = 0; l1 <= cap; ++l1) {
          const auto f = fusion(l1, l2);
          if (std::find(f.begin(), f.end(), la) == f.end()) continue;
          y += slice(w[l1], g.coproduct(ae, l1, l2), block_dim(l1), block_dim(l2));
        }
        lhs += (g.haar(l2) * b.blocks[l2].adjoint() * y).trace();
      }
      Mat z = Mat::Zero(da, da);
      for (int l1 = 0; l1 <= cap; ++l1) z += slice(theta[l1], g.coproduct(bstar, l1, la), block_dim(l1), da);
      cplx rhs = (g.haar(la) * z * a).trace();
      worst = std::max(worst, rel_scalar(lhs, rhs));
    }
  }
  return worst;
}

}  // namespace

GrouplikeResult block_grouplike_analysis(const BlockQuantumGroup& g, int cap, const BlockElement& u,
                                         const BlockOptions& opt) {
  const double tol = opt.tol;
  for (int l = 0; l <= 2 * cap; ++l)
    if (!u.find(l)) throw Error(ErrorCode::PreconditionFailed, "u must be given on every block of spin <= 2 cap");
  // v_l from Delta(u) on (l, 0): realigned X = vec(v) vec(u_0)^T.
  std::map<int, Mat> v;
  double form = 0.0;
  for (int l1 = 0; l1 <= cap; ++l1) {
    const int d1 = block_dim(l1);
    const Mat& u0 = *u.find(0);
    Mat r = realign(g.coproduct(u, l1, 0), d1, 1);
    v[l1] = unvec_rm(Vec(r.col(0) / u0(0, 0)), d1);
    for (int l2 = 0; l2 <= cap; ++l2)
      form = std::max(form, rel_max(g.coproduct(u, l1, l2), kron(v[l1], *u.find(l2))));
  }
  if (form > tol) throw Error(ErrorCode::NotGrouplike, "Delta(u) is not of the form v (x) u, residual " + std::to_string(form));

  GrouplikeResult out;
  const std::string grp = "grouplike";
  double exact = 0.0, unit = 0.0;
  for (int l = 0; l <= cap; ++l) {
    const Mat& ul = *u.find(l);
    exact = std::max(exact, max_abs(v[l] - ul));
    unit = std::max(unit, max_abs(ul.adjoint() * ul - Mat::Identity(ul.rows(), ul.cols())));
  }
  out.exact = exact <= tol;
  out.checks.push_back(residual_check(grp, "form", "Delta(u) = v (x) u", form, tol));
  out.checks.push_back(residual_check(grp, "unitary", "u* u = 1", unit, tol));

  cplx num = 0.0;
  double den = 0.0;
  std::vector<std::pair<cplx, cplx>> pairs;
  for (int l = 0; l <= cap; ++l) {
    const int d = block_dim(l);
    const Mat& ul = *u.find(l);
    for (int x = 0; x < d * d; ++x) {
      Mat e = basis_block(d, x);
      cplx a = (g.haar(l) * ul * e).trace(), b = (g.haar(l) * e * ul).trace();
      pairs.emplace_back(a, b);
      num += std::conj(b) * a;
      den += std::norm(b);
    }
  }
  cplx lambda = den > 0.0 ? num / den : cplx(1.0);
  double fit = 0.0;
  for (const auto& [a, b] : pairs) fit = std::max(fit, rel_scalar(a, lambda * b));
  out.lambda = lambda.real();
  out.checks.push_back(residual_check(grp, "lambda_fit", "phi(u x) = lambda phi(x u)", fit, tol));
  out.checks.push_back(residual_check(grp, "lambda_real", "lambda is real", std::abs(lambda.imag()), tol));
  out.checks.push_back(lower_bound_check(grp, "lambda_positive", "lambda > 0", lambda.real(), 0.0));

  double sres = 0.0, rres = 0.0, tres = 0.0;
  for (int l = 0; l <= cap; ++l) {
    BlockGroups bg = block_groups(g, l);
    const Mat& ul = *u.find(l);
    Vec vu = vec_rm(ul);
    for (double t : {0.7, -1.9}) {
      Mat sg = block_coordinate_map(l, [&](const Mat& x) { return bg.op_sigma(t, x); });
      sres = std::max(sres, rel_max(sg * vu, std::exp(kI * t * std::log(out.lambda)) * vu));
    }
    if (out.exact) {
      Mat rm = block_coordinate_map(l, [&](const Mat& x) { return bg.op_R(x); });
      Mat tm = block_coordinate_map(l, [&](const Mat& x) { return bg.op_tau(0.7, x); });
      rres = std::max(rres, rel_max(rm * vu, vec_rm(Mat(ul.adjoint()))));
      tres = std::max(tres, rel_max(tm * vu, vu));
    }
  }
  out.checks.push_back(residual_check(grp, "sigma_eigen", "sigma_t(u) = lambda^{it} u", sres, tol));
  if (out.exact) {
    out.checks.push_back(residual_check(grp, "R_u", "R(u) = u*", rres, tol));
    out.checks.push_back(residual_check(grp, "tau_fixed", "tau_t(u) = u", tres, tol));
  }
  out.checks.push_back(note_check(grp, "normalizes_pi_A", "u pi(a) = pi(x a) for some x",
                                  "automatic: u acts blockwise and A is the algebraic direct sum of the blocks"));
  return out;
}

MnwReport run_mnw_blocks(const BlockQuantumGroup& g, int cap, const BlockOptions& opt) {
  MnwReport rep;
  rep.engine = "block";
  rep.seed = opt.seed;
  rep.tol = opt.tol;
  const double tol = opt.tol;
  Catalogue cat;
  BlockScalars sc;
  try {
    rep.suites = run_block_checks(g, cap, opt, &sc);
  } catch (const std::exception& e) {
    rep.suites.push_back(failed_check("build", "block_checks", "construction succeeds", e.what()));
    cat.fail_reason("block checks failed");
  }
  rep.suites.push_back(note_check("duality", "dual_unsupported", "dual quantum group",
                                  "not computed: the dual is the compact quantum group SU_q(2), whose GNS space "
                                  "is not finitely supported"));
  rep.mu = sc.mu;
  rep.nu = sc.nu;
  rep.gamma = sc.gamma;
  cat.take("coassociativity", rep.suites, "coassociativity");
  cat.take("density_left", rep.suites, "galois_maps_surjective");
  cat.take("density_right", rep.suites, "galois_maps_surjective");
  cat.take("kms_weight_faithful", rep.suites, "haar_positive");
  cat.take("left_invariance", rep.suites, "haar_left_invariance");
  caveat(cat, sc.nu);

  std::map<int, BlockGroups> groups;
  std::map<int, Mat> tau_map, r_map;
  const double t0 = 0.7;
  try {
    for (int l = 0; l <= 2 * cap; ++l) {
      groups[l] = block_groups(g, l);
      const BlockGroups& bg = groups[l];
      tau_map[l] = block_coordinate_map(l, [&](const Mat& x) { return bg.op_tau(t0, x); });
      r_map[l] = block_coordinate_map(l, [&](const Mat& x) { return bg.op_R(x); });
    }
  } catch (const std::exception& e) {
    rep.suites.push_back(failed_check("build", "block_groups", "construction succeeds", e.what()));
    cat.fail_reason("block modular groups failed");
    rep.axioms = cat.finish();
    return rep;
  }
  auto over_blocks = [&](const std::function<double(const BlockGroups&)>& f) {
    double w = 0.0;
    for (int l = 0; l <= cap; ++l) w = std::max(w, f(groups.at(l)));
    return w;
  };
  auto map_of = [](const BlockGroups& bg, const std::function<Mat(const Mat&)>& f) {
    double mem = 0.0;
    Mat out = block_coordinate_map(bg.two_l, f, &mem);
    return std::make_pair(out, mem);
  };

  cat.guarded("kms_sigma_invariance", [&] {
    cat.residual("kms_sigma_invariance", over_blocks([&](const BlockGroups& bg) {
                   double w = 0.0;
                   for (double t : {0.4, -1.3}) {
                     auto [sg, mem] = map_of(bg, [&](const Mat& x) { return bg.op_sigma(t, x); });
                     w = std::max({w, mem, rel_max(bg.phi * sg, bg.phi)});
                   }
                   return w;
                 }),
                 tol);
  });
  cat.guarded("kms_condition", [&] {
    cat.residual("kms_condition", over_blocks([&](const BlockGroups& bg) {
                   const int d = block_dim(bg.two_l);
                   auto [sg, mem] = map_of(bg, [&](const Mat& x) { return bg.op_sigma(cplx(0.0, -1.0), x); });
                   double w = mem;
                   const Mat& q = g.haar(bg.two_l);
                   for (int x = 0; x < d * d; ++x) {
                     Mat ex = basis_block(d, x), sx = unvec_rm(Vec(sg.col(x)), d);
                     for (int y = 0; y < d * d; ++y) {
                       Mat ey = basis_block(d, y);
                       w = std::max(w, rel_scalar((q * ex * ey).trace(), (q * ey * sx).trace()));
                     }
                   }
                   return w;
                 }),
                 tol);
  });
  cat.guarded("tau_one_parameter_group", [&] {
    cat.residual("tau_one_parameter_group", over_blocks([&](const BlockGroups& bg) {
                   const int n = block_dim(bg.two_l) * block_dim(bg.two_l);
                   auto [a, m1] = map_of(bg, [&](const Mat& x) { return bg.op_tau(0.4, x); });
                   auto [b, m2] = map_of(bg, [&](const Mat& x) { return bg.op_tau(1.3, x); });
                   auto [c, m3] = map_of(bg, [&](const Mat& x) { return bg.op_tau(1.7, x); });
                   auto [z, m4] = map_of(bg, [&](const Mat& x) { return bg.op_tau(0.0, x); });
                   return std::max({m1, m2, m3, m4, rel_max(a * b, c), rel_max(z, Mat::Identity(n, n))});
                 }),
                 tol);
  });
  cat.guarded("R_involutive_antiautomorphism", [&] {
    cat.residual("R_involutive_antiautomorphism", over_blocks([&](const BlockGroups& bg) {
                   const int d = block_dim(bg.two_l), n = d * d;
                   const Mat& r = r_map.at(bg.two_l);
                   double w = rel_max(r * r, Mat::Identity(n, n));
                   for (int x = 0; x < n; ++x) {
                     Mat ex = basis_block(d, x);
                     Mat rx = unvec_rm(Vec(r.col(x)), d);
                     w = std::max(w, rel_max(r * vec_rm(Mat(ex.adjoint())), vec_rm(Mat(rx.adjoint()))));
                     for (int y = 0; y < n; ++y) {
                       Mat ry = unvec_rm(Vec(r.col(y)), d);
                       w = std::max(w, rel_max(r * vec_rm(Mat(ex * basis_block(d, y))), vec_rm(Mat(ry * rx))));
                     }
                   }
                   return w;
                 }),
                 tol);
  });
  cat.guarded("strong_left_invariance", [&] {
    Check c = residual_check(kGroup, "strong_left_invariance", "", strong_invariance_residual(g, cap, opt), tol);
    c.note = "theta = omega S on finitely supported functionals";
    cat.set(c);
  });
  cat.guarded("tau_relative_invariance", [&] {
    cat.residual("tau_relative_invariance", over_blocks([&](const BlockGroups& bg) {
                   double w = 0.0;
                   for (double t : {0.7, -1.3}) {
                     auto [tm, mem] = map_of(bg, [&](const Mat& x) { return bg.op_tau(t, x); });
                     w = std::max({w, mem, rel_max(bg.phi * tm, std::pow(sc.nu, t) * bg.phi)});
                   }
                   return w;
                 }),
                 tol);
  });
  cat.guarded("sigma_sigma_prime_commute", [&] {
    double w = over_blocks([&](const BlockGroups& bg) {
      auto [a, m1] = map_of(bg, [&](const Mat& x) { return bg.op_sigma(0.4, x); });
      auto [b, m2] = map_of(bg, [&](const Mat& x) { return bg.op_sigma_prime(1.3, x); });
      return std::max({m1, m2, rel_max(a * b, b * a)});
    });
    Check c = residual_check(kGroup, "sigma_sigma_prime_commute", "", w, tol);
    c.note = kCommuteNote;
    cat.set(c);
  });
  cat.guarded("phi_sigma_prime_scaling", [&] {
    cat.residual("phi_sigma_prime_scaling", over_blocks([&](const BlockGroups& bg) {
                   double w = 0.0;
                   for (double t : {0.7, -1.3}) {
                     auto [sp, mem] = map_of(bg, [&](const Mat& x) { return bg.op_sigma_prime(t, x); });
                     w = std::max({w, mem, rel_max(bg.phi * sp, std::pow(sc.nu, -t) * bg.phi)});
                   }
                   return w;
                 }),
                 tol);
  });
  cat.guarded("R_tau_commute", [&] {
    cat.residual("R_tau_commute", over_blocks([&](const BlockGroups& bg) {
                   const Mat& r = r_map.at(bg.two_l);
                   const Mat& t = tau_map.at(bg.two_l);
                   return rel_max(r * t, t * r);
                 }),
                 tol);
  });
  // Coproduct covariance on every pair (l1, l2) <= cap, for all blocks they fuse into.
  auto covariance = [&](bool antipodal) {
    double w = 0.0;
    for (int l1 = 0; l1 <= cap; ++l1)
      for (int l2 = 0; l2 <= cap; ++l2) {
        const int d1 = block_dim(l1), d2 = block_dim(l2);
        for (int l : fusion(l1, l2)) {
          const int d = block_dim(l);
          const Mat& f = antipodal ? r_map.at(l) : tau_map.at(l);
          for (int x = 0; x < d * d; ++x) {
            Mat lhs = g.coproduct(single(l, unvec_rm(Vec(f.col(x)), d)), l1, l2);
            Mat rhs;
            if (antipodal) {
              Mat y = g.coproduct_basis(l, x, l2, l1);
              rhs = swap_legs(tensor_map(r_map.at(l2), r_map.at(l1), y, d2, d1), d2, d1);
            } else {
              rhs = tensor_map(tau_map.at(l1), tau_map.at(l2), g.coproduct_basis(l, x, l1, l2), d1, d2);
            }
            w = std::max(w, rel_max(lhs, rhs));
          }
        }
      }
    return w;
  };
  cat.guarded("tau_coproduct", [&] { cat.residual("tau_coproduct", covariance(false), tol); });
  cat.guarded("R_coproduct", [&] { cat.residual("R_coproduct", covariance(true), tol); });

  // u = delta^{i}: sigma_t(u) = nu^{-it} u, so lambda = 1 / nu.
  BlockElement u;
  for (int l = 0; l <= 2 * cap; ++l) u.blocks[l] = groups.at(l).delta.it(1.0);
  try {
    GrouplikeResult r = block_grouplike_analysis(g, cap, u, opt);
    r.label = "delta^i";
    r.checks.push_back(scalar_check("grouplike", "lambda_inverse_nu", "lambda = 1 / nu", r.lambda * sc.nu, 1.0, tol));
    rep.grouplikes.push_back(std::move(r));
  } catch (const std::exception& e) {
    GrouplikeResult r;
    r.label = "delta^i";
    r.lambda = std::nan("");
    r.checks.push_back(failed_check("grouplike", "form", "Delta(u) = v (x) u", e.what()));
    rep.grouplikes.push_back(std::move(r));
  }
  rep.axioms = cat.finish();
  return rep;
}

BlockScalars block_scalars(const BlockQuantumGroup& g, int cap) {
  std::vector<cplx> f, s2, t1;
  for (int l = 0; l <= cap; ++l) {
    const int d = block_dim(l);
    BlockGroups bg = block_groups(g, l);
    Mat tm = block_coordinate_map(l, [&](const Mat& x) { return bg.op_tau(1.0, x); });
    Mat s = g.antipode(l) * g.antipode(l);
    for (int x = 0; x < d * d; ++x) {
      f.push_back(bg.phi(x));
      s2.push_back((bg.phi * s.col(x))(0));
      t1.push_back((bg.phi * tm.col(x))(0));
    }
  }
  Eigen::Map<Vec> fv(f.data(), Eigen::Index(f.size()));
  Eigen::Map<Vec> sv(s2.data(), Eigen::Index(s2.size())), tv(t1.data(), Eigen::Index(t1.size()));
  BlockScalars sc;
  sc.mu = fv.dot(sv) / fv.squaredNorm();
  cplx nu = fv.dot(tv) / fv.squaredNorm();
  sc.nu = nu.real();
  sc.nu_residual = std::max(max_abs(Vec(tv - nu * fv)), std::abs(nu.imag()));
  return sc;
}

}  // namespace aqg
