#include "aqg/presentation.hpp"

#include <algorithm>

namespace aqg {

Vec basis_vector(int n, int i) {
  Vec v = Vec::Zero(n);
  v(i) = 1.0;
  return v;
}

Vec product(const AlgebraPresentation& alg, const Vec& x, const Vec& y) {
  return alg.mult * kron(x, y);
}

Mat left_mult(const AlgebraPresentation& alg, const Vec& x) {
  const int n = alg.dim;
  Mat l = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    if (x(i) != cplx(0.0)) l += x(i) * alg.mult.middleCols(i * n, n);
  return l;
}

Mat right_mult(const AlgebraPresentation& alg, const Vec& y) {
  const int n = alg.dim;
  Mat r = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (y(k) != cplx(0.0)) r.col(j) += y(k) * alg.mult.col(j * n + k);
  return r;
}

Vec star(const AlgebraPresentation& alg, const Vec& x) { return alg.involution * x.conjugate(); }

Vec inverse(const AlgebraPresentation& alg, const Vec& x) {
  Mat l = left_mult(alg, x);
  Eigen::FullPivLU<Mat> lu(l);
  if (!lu.isInvertible()) throw Error(ErrorCode::Inconsistent, "element is not invertible");
  return lu.solve(alg.unit);
}

Vec product2(const AlgebraPresentation& alg, const Vec& x, const Vec& y) {
  const int n = alg.dim;
  Vec out = Vec::Zero(n * n);
  for (int p = 0; p < n; ++p) {
    Vec xp = x.segment(p * n, n);
    if (xp.isZero()) continue;
    for (int r = 0; r < n; ++r) {
      Vec yr = y.segment(r * n, n);
      if (yr.isZero()) continue;
      Vec left = alg.mult.col(p * n + r);
      if (left.isZero()) continue;
      out += kron(left, product(alg, xp, yr));
    }
  }
  return out;
}

Vec star2(const AlgebraPresentation& alg, const Vec& x) {
  const int n = alg.dim;
  Vec c = x.conjugate();
  return apply_leg2(alg.involution, apply_leg1(alg.involution, c, n), n);
}

Vec unit2(const AlgebraPresentation& alg) { return kron(alg.unit, alg.unit); }

Vec slice_left(const RowVec& f, const Vec& x, int n) {
  Eigen::Map<const Mat> m(x.data(), n, n);  // m(k, i) = x[i*n + k]
  return m * f.transpose();
}

Vec slice_right(const RowVec& f, const Vec& x, int n) {
  Eigen::Map<const Mat> m(x.data(), n, n);
  return (f * m).transpose();
}

Mat galois_map_left(const QuantumGroupPresentation& p) {
  const int n = p.dim();
  Mat t(n * n, n * n);
  std::vector<Mat> rb(n);
  for (int b = 0; b < n; ++b) rb[b] = right_mult(p.algebra, basis_vector(n, b));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t.col(a * n + b) = apply_leg1(rb[b], p.comul.col(a), n);
  return t;
}

Mat galois_map_right(const QuantumGroupPresentation& p) {
  const int n = p.dim();
  Mat t(n * n, n * n);
  std::vector<Mat> rb(n);
  for (int b = 0; b < n; ++b) rb[b] = right_mult(p.algebra, basis_vector(n, b));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t.col(a * n + b) = apply_leg2(rb[b], p.comul.col(a), n);
  return t;
}

void validate_shapes(const QuantumGroupPresentation& p) {
  const auto& a = p.algebra;
  const Eigen::Index n = a.dim;
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
  };
  need(n > 0, "dim must be positive");
  need(a.labels.empty() || static_cast<Eigen::Index>(a.labels.size()) == n, "basis_labels");
  need(a.mult.rows() == n && a.mult.cols() == n * n, "mult");
  need(a.involution.rows() == n && a.involution.cols() == n, "involution");
  need(a.unit.size() == n, "unit");
  need(p.comul.rows() == n * n && p.comul.cols() == n, "comul");
  need(p.counit.size() == n, "counit");
  if (p.antipode) need(p.antipode->rows() == n && p.antipode->cols() == n, "antipode");
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

bool is_commutative(const AlgebraPresentation& alg, double tol) {
  const int n = alg.dim;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (max_abs(alg.mult.col(i * n + j) - alg.mult.col(j * n + i)) > tol) return false;
  return true;
}

bool is_cocommutative(const QuantumGroupPresentation& p, double tol) {
  const int n = p.dim();
  return max_abs(flip_rows(p.comul, n, n) - p.comul) <= tol;
}

CheckList check_algebra(const AlgebraPresentation& alg, double tol) {
  const int n = alg.dim;
  CheckList out;
  const std::string g = "algebra";

  std::vector<Mat> l(n);
  for (int i = 0; i < n; ++i) l[i] = alg.mult.middleCols(i * n, n);
  double assoc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat lij = left_mult(alg, alg.mult.col(i * n + j));
      assoc = std::max(assoc, max_abs(lij - l[i] * l[j]));
    }
  out.push_back(residual_check(g, "associativity", "(e_i e_j) e_k = e_i (e_j e_k)", assoc, tol));

  Mat lu = left_mult(alg, alg.unit), ru = right_mult(alg, alg.unit);
  Mat id = Mat::Identity(n, n);
  out.push_back(residual_check(g, "unit", "1 e_i = e_i 1 = e_i",
                               std::max(max_abs(lu - id), max_abs(ru - id)), tol));

  Mat inv2 = alg.involution * alg.involution.conjugate();
  out.push_back(residual_check(g, "involution_involutive", "(x*)* = x", max_abs(inv2 - id), tol));

  double anti = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec lhs = star(alg, alg.mult.col(i * n + j));
      Vec rhs = product(alg, alg.involution.col(j), alg.involution.col(i));
      anti = std::max(anti, max_abs(lhs - rhs));
    }
  out.push_back(residual_check(g, "involution_antimultiplicative", "(xy)* = y* x*", anti, tol));

  Mat stacked(n * n, n);
  for (int j = 0; j < n; ++j) stacked.middleRows(j * n, n) = right_mult(alg, basis_vector(n, j));
  Mat stacked_l(n * n, n);
  for (int j = 0; j < n; ++j) stacked_l.middleRows(j * n, n) = left_mult(alg, basis_vector(n, j));
  long kernel = static_cast<long>(n - std::min(numerical_rank(stacked, 1e-10),
                                               numerical_rank(stacked_l, 1e-10)));
  out.push_back(dimension_check(g, "non_degeneracy", "xA = 0 or Ax = 0 implies x = 0", kernel, 0));
  return out;
}

CheckList check_axioms(const QuantumGroupPresentation& p, double tol) {
  validate_shapes(p);
  const auto& alg = p.algebra;
  const int n = alg.dim;
  CheckList out = check_algebra(alg, tol);
  const std::string g = "coalgebra";
  const Mat& d = p.comul;

  out.push_back(residual_check(g, "comul_unital", "Delta(1) = 1 (x) 1",
                               max_abs(d * alg.unit - unit2(alg)), tol));
  double mult = 0.0, sr = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vec lhs = d * alg.mult.col(i * n + j);
      Vec rhs = product2(alg, d.col(i), d.col(j));
      mult = std::max(mult, max_abs(lhs - rhs));
    }
    sr = std::max(sr, max_abs(d * star(alg, basis_vector(n, i)) - star2(alg, d.col(i))));
  }
  out.push_back(residual_check(g, "comul_multiplicative", "Delta(xy) = Delta(x) Delta(y)", mult, tol));
  out.push_back(residual_check(g, "comul_star", "Delta(x*) = Delta(x)*", sr, tol));

  double coassoc = 0.0;
  for (int k = 0; k < n; ++k) {
    Eigen::Map<const Mat> c(d.col(k).data(), n, n);  // c(q, p) = coefficient of e_p (x) e_q
    Mat left = d * c.transpose();                     // rows (p', p''), cols q
    Mat right = c.transpose() * d.transpose();        // rows p, cols (q', q'')
    Mat a1(n * n * n, 1), a2(n * n * n, 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          a1((i * n + j) * n + l, 0) = left(i * n + j, l);
          a2(i * n * n + j * n + l, 0) = right(i, j * n + l);
        }
    coassoc = std::max(coassoc, max_abs(a1 - a2));
  }
  out.push_back(residual_check(g, "coassociativity", "(Delta (x) id) Delta = (id (x) Delta) Delta",
                               coassoc, tol));

  Mat t1 = galois_map_left(p), t2 = galois_map_right(p);
  out.push_back(lower_bound_check(g, "T1_min_singular_value", "a (x) b -> Delta(a)(b (x) 1) bijective",
                                  min_singular_value(t1), tol));
  out.push_back(lower_bound_check(g, "T2_min_singular_value", "a (x) b -> Delta(a)(1 (x) b) bijective",
                                  min_singular_value(t2), tol));

  double cl = 0.0, cr = 0.0;
  for (int a = 0; a < n; ++a) {
    Vec e = basis_vector(n, a);
    cl = std::max(cl, max_abs(slice_left(p.counit, d.col(a), n) - e));
    cr = std::max(cr, max_abs(slice_right(p.counit, d.col(a), n) - e));
  }
  out.push_back(residual_check(g, "counit", "(eps (x) id) Delta = (id (x) eps) Delta = id",
                               std::max(cl, cr), tol));
  double cm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cm = std::max(cm, std::abs((p.counit * alg.mult.col(i * n + j))(0) - p.counit(i) * p.counit(j)));
  out.push_back(residual_check(g, "counit_multiplicative", "eps(xy) = eps(x) eps(y)", cm, tol));

  if (!p.antipode) {
    out.push_back(note_check(g, "antipode", "m(S (x) id)(Delta(a)(1 (x) b)) = eps(a) b",
                             "antipode not supplied; solved separately"));
    return out;
  }
  const Mat& s = *p.antipode;
  std::vector<Mat> rb(n);
  for (int b = 0; b < n; ++b) rb[b] = right_mult(alg, basis_vector(n, b));
  double al = 0.0, ar = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Vec eb = basis_vector(n, b);
      Vec x = apply_leg2(rb[b], d.col(a), n);
      Vec lhs = alg.mult * apply_leg1(s, x, n);
      al = std::max(al, max_abs(lhs - p.counit(a) * eb));
      Vec y = apply_leg1(left_mult(alg, eb), d.col(a), n);
      Vec rhs = alg.mult * apply_leg2(s, y, n);
      ar = std::max(ar, max_abs(rhs - p.counit(a) * eb));
    }
  }
  out.push_back(residual_check(g, "antipode_left", "m(S (x) id)(Delta(a)(1 (x) b)) = eps(a) b", al, tol));
  out.push_back(residual_check(g, "antipode_right", "m(id (x) S)((b (x) 1)Delta(a)) = eps(a) b", ar, tol));

  double am = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec lhs = s * alg.mult.col(i * n + j);
      Vec rhs = product(alg, s.col(j), s.col(i));
      am = std::max(am, max_abs(lhs - rhs));
    }
  out.push_back(residual_check(g, "antipode_antimultiplicative", "S(xy) = S(y) S(x)", am, tol));
  // x -> S(S(x*)*) is the linear map S I conj(S) conj(I).
  Mat ssa = s * alg.involution * s.conjugate() * alg.involution.conjugate();
  out.push_back(residual_check(g, "antipode_star", "S(S(a*)*) = a",
                               max_abs(ssa - Mat::Identity(n, n)), tol));
  Mat lhs = flip_rows(kron_apply(s, s, d), n, n);
  out.push_back(residual_check(g, "antipode_coproduct", "chi (S (x) S) Delta = Delta S",
                               max_abs(lhs - d * s), tol));
  return out;
}

}  // namespace aqg
