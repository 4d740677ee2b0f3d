#include "aqg/gns.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace aqg {

LinOp dense_op(Mat m) {
  LinOp op;
  op.dim = m.rows();
  if (m.rows() > 64 && sparsity(m) < 0.05) op.sparse = std::make_shared<const SpMat>(to_sparse(m));
  op.dense = std::move(m);
  return op;
}

Mat gns_frame(const AlgebraPresentation& alg, const RowVec& f) { return gns_frame(alg, f, alg.unit); }

Mat gns_frame(const AlgebraPresentation& alg, const RowVec& f, const Vec& weight) {
  const int n = alg.dim;
  // inner(j, i) = f(e_j* w e_i) so that <x, y> = y^H inner x.
  Mat inner(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vec ej_star = star(alg, basis_vector(n, j));
      inner(j, i) = (f * product(alg, product(alg, ej_star, weight), basis_vector(n, i)))(0);
    }
  }
  Mat herm = 0.5 * (inner + inner.adjoint());
  Eigen::LLT<Mat> llt(herm);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::NotPositive, "Cholesky factorisation of the GNS Gram matrix failed");
  return llt.matrixU();
}

Mat GnsSpace::rep(const Vec& a) const {
  Mat out = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    if (a(i) != cplx(0.0)) out += a(i) * pi[i];
  return out;
}

Vec GnsSpace::pullback(const AlgebraPresentation& alg, const Mat& x, double* residual) const {
  Vec c = ortho_inv * (x * (ortho * alg.unit));
  if (residual) *residual = (x - rep(c)).norm() / std::max(1.0, x.norm());
  return c;
}

GnsSpace build_gns(const QuantumGroupPresentation& p, const HaarData& haar) {
  const auto& alg = p.algebra;
  const int n = alg.dim;
  GnsSpace g;
  g.dim = n;
  g.gram = haar.gram;
  g.ortho = gns_frame(alg, haar.phi);
  g.ortho_inv = g.ortho.inverse();
  g.pi.resize(n);
  Mat stacked(n * n, n);
  for (int i = 0; i < n; ++i) {
    g.pi[i] = g.ortho * alg.mult.middleCols(i * n, n) * g.ortho_inv;
    stacked.col(i) = Eigen::Map<const Vec>(g.pi[i].data(), n * n);
  }
  g.faithfulness = min_singular_value(stacked);
  return g;
}

Mat inverse_antipode_shift(const QuantumGroupPresentation& p, const Mat& s_inv) {
  const int n = p.dim();
  Mat out(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    Mat shift = right_mult(p.algebra, basis_vector(n, i)) * s_inv;
    for (int k = 0; k < n; ++k) out.col(i * n + k) = apply_leg1(shift, p.comul.col(k), n);
  }
  return out;
}

SpMat inverse_antipode_shift_sparse(const QuantumGroupPresentation& p, const Mat& s_inv) {
  const int n = p.dim();
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int i = 0; i < n; ++i) {
    Mat shift = right_mult(p.algebra, basis_vector(n, i)) * s_inv;
    for (int k = 0; k < n; ++k) {
      Vec col = apply_leg1(shift, p.comul.col(k), n);
      for (int r = 0; r < n * n; ++r)
        if (std::abs(col(r)) > 0.0) trips.emplace_back(r, i * n + k, col(r));
    }
  }
  SpMat out(n * n, n * n);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

MultiplicativeUnitary build_W(const QuantumGroupPresentation& p, const Mat& leg1_frame,
                              const Mat& leg2_frame, int dense_threshold) {
  const int n = p.dim();
  Mat s_inv = antipode_of(p).inverse();
  Mat inv1 = leg1_frame.inverse();
  Mat inv2 = leg2_frame.inverse();
  MultiplicativeUnitary w;
  w.dim = n;
  w.leg1_frame = leg1_frame;
  w.leg2_frame = leg2_frame;
  if (n <= dense_threshold) {
    Mat shift = inverse_antipode_shift(p, s_inv);
    Mat left = kron_apply(leg1_frame, leg2_frame, shift);
    w.op = dense_op(kron_apply_right(left, inv1, inv2));
    return w;
  }
  auto shift = std::make_shared<SpMat>(inverse_antipode_shift_sparse(p, s_inv));
  Mat b1a = leg1_frame.adjoint(), b2a = leg2_frame.adjoint();
  Mat i1a = inv1.adjoint(), i2a = inv2.adjoint();
  w.op.dim = Eigen::Index(n) * n;
  w.op.forward = [=](const Mat& x) {
    Mat c = kron_apply(inv1, inv2, x);
    Mat y = (*shift) * c;
    return kron_apply(leg1_frame, leg2_frame, y);
  };
  w.op.backward = [=](const Mat& x) {
    Mat c = kron_apply(b1a, b2a, x);
    Mat y = shift->adjoint() * c;
    return kron_apply(i1a, i2a, y);
  };
  return w;
}

Mat probe_vectors(Eigen::Index dim, int count, std::uint64_t seed, Eigen::Index exhaustive_limit) {
  if (dim <= exhaustive_limit) return Mat::Identity(dim, dim);
  Rng rng(seed);
  Mat out(dim, count);
  for (int c = 0; c < count; ++c) out.col(c) = rng.unit_cvec(dim);
  return out;
}

double relative_residual(const Mat& lhs, const Mat& rhs) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < lhs.cols(); ++c) {
    double scale = std::max({1.0, lhs.col(c).norm(), rhs.col(c).norm()});
    worst = std::max(worst, (lhs.col(c) - rhs.col(c)).norm() / scale);
  }
  return worst;
}

Mat tensor_apply(const Mat& a, const Mat& b, const Mat& x, bool antilinear) {
  return antilinear ? kron_apply(a, b, x.conjugate()) : kron_apply(a, b, x);
}

double unitarity_residual(const LinOp& w, const Mat& probes) {
  if (w.sparse) {
    SpMat id(w.dim, w.dim);
    id.setIdentity();
    SpMat d = SpMat(w.sparse->adjoint()) * (*w.sparse) - id;
    double r = 0.0;
    for (Eigen::Index k = 0; k < d.outerSize(); ++k)
      for (SpMat::InnerIterator it(d, k); it; ++it) r = std::max(r, std::abs(it.value()));
    return r;
  }
  if (w.is_dense()) {
    const Mat& m = *w.dense;
    return max_abs(m.adjoint() * m - Mat::Identity(m.rows(), m.cols()));
  }
  Mat wx = w.apply(probes);
  return std::max(relative_residual(w.apply_adjoint(wx), probes),
                  relative_residual(w.apply(w.apply_adjoint(probes)), probes));
}

double definition_residual(const QuantumGroupPresentation& p, const MultiplicativeUnitary& w,
                           int samples, std::uint64_t seed) {
  const int n = p.dim();
  Rng rng(seed);
  std::vector<Mat> right(n);
  for (int b = 0; b < n; ++b) right[b] = right_mult(p.algebra, basis_vector(n, b));
  Mat coeff(n * n, samples), image(n * n, samples);
  for (int s = 0; s < samples; ++s) {
    Vec c = rng.cvec(n * n);
    Vec y = Vec::Zero(n * n);
    for (int b = 0; b < n; ++b) {
      Mat rb = Mat::Zero(n, n);
      for (int a = 0; a < n; ++a) rb += c(a * n + b) * right[a];
      y += apply_leg1(rb, p.comul.col(b), n);
    }
    coeff.col(s) = c;
    image.col(s) = y;
  }
  Mat lhs = w.op.apply(kron_apply(w.leg1_frame, w.leg2_frame, image));
  Mat rhs = kron_apply(w.leg1_frame, w.leg2_frame, coeff);
  return relative_residual(lhs, rhs);
}

Mat materialize(const LinOp& op) {
  if (op.is_dense()) return *op.dense;
  return op.apply(Mat::Identity(op.dim, op.dim));
}

// Three-leg vectors use the index (i * n + j) * n + k.
Mat apply_w12(const LinOp& w, const Mat& x, Eigen::Index n) {
  Mat out(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    Eigen::Map<const Mat> m(x.col(c).data(), n, n * n);  // m(k, ij)
    Mat r = w.apply(m.transpose()).transpose();
    out.col(c) = Eigen::Map<const Vec>(r.data(), r.size());
  }
  return out;
}

Mat apply_w23(const LinOp& w, const Mat& x, Eigen::Index n) {
  Mat out(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    Eigen::Map<const Mat> m(x.col(c).data(), n * n, n);  // m(jk, i)
    Mat r = w.apply(m);
    out.col(c) = Eigen::Map<const Vec>(r.data(), r.size());
  }
  return out;
}

namespace {

Mat swap_legs23(const Mat& x, Eigen::Index n) {
  Mat out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k) out.row((i * n + k) * n + j) = x.row((i * n + j) * n + k);
  return out;
}

}  // namespace

Mat apply_w13(const LinOp& w, const Mat& x, Eigen::Index n) {
  return swap_legs23(apply_w12(w, swap_legs23(x, n), n), n);
}

double pentagon_residual(const LinOp& w, Eigen::Index n, int samples, std::uint64_t seed,
                         Eigen::Index exhaustive_limit) {
  Mat x = probe_vectors(n * n * n, samples, seed, exhaustive_limit);
  Mat lhs = apply_w12(w, apply_w13(w, apply_w23(w, x, n), n), n);
  Mat rhs = apply_w23(w, apply_w12(w, x, n), n);
  return relative_residual(lhs, rhs);
}

Mat reduced_comul_apply(const LinOp& w, const Mat& x_op, const Mat& v) {
  Mat wv = w.apply(v);
  return w.apply_adjoint(kron_apply(Mat::Identity(x_op.rows(), x_op.cols()), x_op, wv));
}

Mat pi_pair_apply(const QuantumGroupPresentation& p, const GnsSpace& gns, const Vec& x2,
                  const Mat& v) {
  const int n = p.dim();
  Mat out = Mat::Zero(v.rows(), v.cols());
  for (int a = 0; a < n; ++a) {
    Vec row = x2.segment(a * n, n);
    if (row.isZero(0.0)) continue;
    Mat second = gns.rep(row);
    out += kron_apply(gns.pi[a], second, v);
  }
  return out;
}

double reduced_comul_agreement(const QuantumGroupPresentation& p, const GnsSpace& gns,
                               const LinOp& w, const Mat& probes) {
  const int n = p.dim();
  Mat wv = w.apply(probes);
  Mat id = Mat::Identity(n, n);
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    Mat lhs = w.apply_adjoint(kron_apply(id, gns.pi[a], wv));
    Mat rhs = pi_pair_apply(p, gns, p.comul.col(a), probes);
    worst = std::max(worst, relative_residual(lhs, rhs));
  }
  return worst;
}

Mat slice_leg2(const LinOp& w, const Vec& xi, const Vec& eta) {
  const Eigen::Index n = xi.size();
  Mat cols(n * n, n);
  for (Eigen::Index j = 0; j < n; ++j) cols.col(j) = kron(Vec(Vec::Unit(n, j)), xi);
  Mat img = w.apply(cols);
  Mat out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Map<const Mat> m(img.col(j).data(), n, n);  // m(k, i)
    out.col(j) = (eta.adjoint() * m).transpose();
  }
  return out;
}

Mat slice_leg1(const LinOp& w, const Vec& xi, const Vec& eta) {
  const Eigen::Index n = xi.size();
  Mat cols(n * n, n);
  for (Eigen::Index j = 0; j < n; ++j) cols.col(j) = kron(xi, Vec(Vec::Unit(n, j)));
  Mat img = w.apply(cols);
  Mat out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Map<const Mat> m(img.col(j).data(), n, n);
    out.col(j) = m * eta.conjugate();
  }
  return out;
}

namespace {

Mat stack_ops(const std::vector<Mat>& ops) {
  if (ops.empty()) return Mat();
  Mat s(ops[0].size(), Eigen::Index(ops.size()));
  for (size_t i = 0; i < ops.size(); ++i)
    s.col(Eigen::Index(i)) = Eigen::Map<const Vec>(ops[i].data(), ops[i].size());
  return s;
}

}  // namespace

Eigen::Index operator_span_rank(const std::vector<Mat>& ops, double rel_tol) {
  return numerical_rank(stack_ops(ops), rel_tol);
}

Eigen::Index joint_span_rank(const std::vector<Mat>& a, const std::vector<Mat>& b, double rel_tol) {
  std::vector<Mat> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return operator_span_rank(all, rel_tol);
}

CheckList check_gns(const QuantumGroupPresentation& p, const HaarData& haar, const GnsSpace& gns,
                    const MultiplicativeUnitary& w, const GnsOptions& opt) {
  const auto& alg = p.algebra;
  const int n = p.dim();
  const double tol = opt.tol;
  CheckList out;
  const std::string grp = "gns";
  out.push_back(lower_bound_check(grp, "gram_positive", "min eig of <Lambda(e_i), Lambda(e_j)>",
                                  haar.min_eig, tol));

  double hom = 0.0, star_res = 0.0;
  for (int i = 0; i < n; ++i) {
    Vec ei = basis_vector(n, i);
    star_res = std::max(star_res, max_abs(gns.rep(star(alg, ei)) - gns.pi[i].adjoint()));
    for (int j = 0; j < n; ++j) {
      Mat lhs = gns.pi[i] * gns.pi[j];
      hom = std::max(hom, max_abs(lhs - gns.rep(alg.mult.col(i * n + j))));
    }
  }
  out.push_back(residual_check(grp, "pi_multiplicative", "pi(a) pi(b) = pi(ab)", hom, tol));
  out.push_back(residual_check(grp, "pi_star", "pi(a*) = pi(a)*", star_res, tol));

  Rng rng(opt.seed);
  double lam = 0.0;
  for (int s = 0; s < 100; ++s) {
    Vec a = rng.cvec(n), b = rng.cvec(n);
    Vec lhs = gns.rep(a) * gns.lambda(b);
    Vec rhs = gns.lambda(product(alg, a, b));
    lam = std::max(lam, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
  }
  out.push_back(residual_check(grp, "pi_lambda", "pi(a) Lambda(b) = Lambda(ab)", lam, tol));
  out.push_back(lower_bound_check(grp, "pi_faithful", "min singular value of a -> pi(a)",
                                  gns.faithfulness, tol));

  Mat probes = probe_vectors(Eigen::Index(n) * n, opt.probes, opt.seed + 1);
  const std::string wg = "multiplicative_unitary";
  out.push_back(residual_check(wg, "W_unitary", "W* W = 1", unitarity_residual(w.op, probes), tol));
  out.push_back(residual_check(wg, "W_definition",
                               "W (Lambda (x) Lambda)(Delta(b)(a (x) 1)) = Lambda(a) (x) Lambda(b)",
                               definition_residual(p, w, opt.probes, opt.seed + 2), tol));
  out.push_back(residual_check(wg, "W_pentagon", "W12 W13 W23 = W23 W12",
                               pentagon_residual(w.op, n, opt.pentagon_samples, opt.seed + 3), tol));

  const std::string rg = "reduced_comultiplication";
  Mat id = Mat::Identity(n, n);
  out.push_back(residual_check(rg, "reduced_comul_unit", "W* (1 (x) 1) W = 1 (x) 1",
                               relative_residual(reduced_comul_apply(w.op, id, probes), probes), tol));
  out.push_back(residual_check(rg, "reduced_comul_agreement", "W* (1 (x) pi(a)) W = (pi (x) pi)(Delta(a))",
                               reduced_comul_agreement(p, gns, w.op, probes), tol));
  if (n <= 16) {
    // (Delta_r (x) id) Delta_r(x) = W12* W23* (1 (x) 1 (x) x) W23 W12, compared with
    // (id (x) Delta_r) Delta_r(x) = W23* W13* (1 (x) 1 (x) x) W13 W23.
    Mat v = probe_vectors(Eigen::Index(n) * n * n, 8, opt.seed + 4, 0);
    double co = 0.0;
    auto leg3 = [&](const Mat& x, const Mat& op) {
      Mat out3(x.rows(), x.cols());
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        Eigen::Map<const Mat> m(x.col(c).data(), n, n * n);
        Mat r = op * m;
        out3.col(c) = Eigen::Map<const Vec>(r.data(), r.size());
      }
      return out3;
    };
    LinOp wadj = dense_op(materialize(w.op).adjoint());
    for (int a = 0; a < n; ++a) {
      Mat lhs = apply_w12(wadj, apply_w23(wadj, leg3(apply_w23(w.op, apply_w12(w.op, v, n), n), gns.pi[a]), n), n);
      Mat rhs = apply_w23(wadj, apply_w13(wadj, leg3(apply_w13(w.op, apply_w23(w.op, v, n), n), gns.pi[a]), n), n);
      co = std::max(co, relative_residual(lhs, rhs));
    }
    out.push_back(residual_check(rg, "reduced_comul_coassociative",
                                 "(Delta_r (x) id) Delta_r = (id (x) Delta_r) Delta_r on pi(A)", co, tol));
  } else {
    Check c = residual_check(rg, "reduced_comul_coassociative",
                             "(Delta_r (x) id) Delta_r = (id (x) Delta_r) Delta_r on pi(A)",
                             max_abs(kron_apply(p.comul, id, p.comul) - kron_apply(id, p.comul, p.comul)), tol);
    c.note = "evaluated on coordinates through the verified agreement Delta_r pi = (pi (x) pi) Delta";
    out.push_back(c);
  }

  // (id (x) omega_{Lambda(a), Lambda(b)})(W) = pi((id (x) phi)(Delta(b*)(1 (x) a))).
  const std::string sg = "slices";
  std::vector<std::pair<int, int>> pairs;
  if (n <= 8) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) pairs.emplace_back(a, b);
  } else {
    std::mt19937_64 gen(opt.seed + 5);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int s = 0; s < 20; ++s) pairs.emplace_back(pick(gen), pick(gen));
  }
  double sl = 0.0;
  for (auto [a, b] : pairs) {
    Vec ea = basis_vector(n, a), eb = basis_vector(n, b);
    Vec d = p.comul * star(alg, eb);
    Vec shifted = apply_leg2(right_mult(alg, ea), d, n);
    Vec elem = slice_right(haar.phi, shifted, n);
    Mat lhs = slice_leg2(w.op, gns.lambda(ea), gns.lambda(eb));
    sl = std::max(sl, max_abs(lhs - gns.rep(elem)) / std::max(1.0, max_abs(lhs)));
  }
  out.push_back(residual_check(sg, "slice_leg2_formula",
                               "(id (x) omega_{Lambda(a),Lambda(b)})(W) = pi((id (x) phi)(Delta(b*)(1 (x) a)))",
                               sl, tol));

  std::vector<Mat> slices;
  if (w.op.is_dense()) {
    const Mat& m = *w.op.dense;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        Mat s(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) s(i, j) = m(i * n + k, j * n + l);
        slices.push_back(s);
      }
  } else {
    Rng r2(opt.seed + 6);
    for (int s = 0; s < 2 * n; ++s) slices.push_back(slice_leg2(w.op, r2.cvec(n), r2.cvec(n)));
  }
  out.push_back(dimension_check(sg, "slice_leg2_span_rank", "dim span{(id (x) omega)(W)} = dim pi(A)",
                                long(operator_span_rank(slices, 1e-9)), n));
  out.push_back(dimension_check(sg, "slice_leg2_span_joint", "dim span{(id (x) omega)(W)} + pi(A) = dim pi(A)",
                                long(joint_span_rank(slices, gns.pi, 1e-9)), n));
  return out;
}

}  // namespace aqg
