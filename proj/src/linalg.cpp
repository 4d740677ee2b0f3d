#include "aqg/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseLU>

namespace aqg {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NonUnique: return "NonUnique";
    case ErrorCode::NoHaar: return "NoHaar";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::NotProportional: return "NotProportional";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotPD: return "NotPD";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NotGrouplike: return "NotGrouplike";
    case ErrorCode::CGGenerationFailure: return "CGGenerationFailure";
    case ErrorCode::SupportOverflow: return "SupportOverflow";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Schema: return "SchemaError";
  }
  return "Error";
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Vec apply_leg1(const Mat& a, const Vec& v, Eigen::Index n2) {
  Eigen::Map<const Mat> m(v.data(), n2, a.cols());
  Mat r = m * a.transpose();
  return Eigen::Map<Vec>(r.data(), r.size());
}

Vec apply_leg2(const Mat& b, const Vec& v, Eigen::Index n1) {
  Eigen::Map<const Mat> m(v.data(), b.cols(), n1);
  Mat r = b * m;
  return Eigen::Map<Vec>(r.data(), r.size());
}

Mat kron_apply(const Mat& a, const Mat& b, const Mat& x) {
  Mat out(a.rows() * b.rows(), x.cols());
  Mat at = a.transpose();
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    Eigen::Map<const Mat> m(x.col(c).data(), b.cols(), a.cols());
    Mat r = b * m * at;
    out.col(c) = Eigen::Map<Vec>(r.data(), r.size());
  }
  return out;
}

Mat kron_apply_right(const Mat& x, const Mat& a, const Mat& b) {
  Mat xt = x.transpose();
  return kron_apply(a.transpose(), b.transpose(), xt).transpose();
}

Mat realign(const Mat& x, Eigen::Index n1, Eigen::Index n2) {
  Mat r(n1 * n1, n2 * n2);
  for (Eigen::Index i1 = 0; i1 < n1; ++i1)
    for (Eigen::Index j1 = 0; j1 < n1; ++j1)
      for (Eigen::Index i2 = 0; i2 < n2; ++i2)
        for (Eigen::Index j2 = 0; j2 < n2; ++j2)
          r(i1 * n1 + j1, i2 * n2 + j2) = x(i1 * n2 + i2, j1 * n2 + j2);
  return r;
}

Mat unrealign(const Mat& r, Eigen::Index n1, Eigen::Index n2) {
  Mat x(n1 * n2, n1 * n2);
  for (Eigen::Index i1 = 0; i1 < n1; ++i1)
    for (Eigen::Index j1 = 0; j1 < n1; ++j1)
      for (Eigen::Index i2 = 0; i2 < n2; ++i2)
        for (Eigen::Index j2 = 0; j2 < n2; ++j2)
          x(i1 * n2 + i2, j1 * n2 + j2) = r(i1 * n1 + j1, i2 * n2 + j2);
  return x;
}

Vec flip(const Vec& v, Eigen::Index n1, Eigen::Index n2) {
  Vec out(v.size());
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index k = 0; k < n2; ++k) out(k * n1 + i) = v(i * n2 + k);
  return out;
}

Mat flip_rows(const Mat& x, Eigen::Index n1, Eigen::Index n2) {
  Mat out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index k = 0; k < n2; ++k) out.row(k * n1 + i) = x.row(i * n2 + k);
  return out;
}

namespace {

constexpr Eigen::Index kJacobiLimit = 160;

Eigen::BDCSVD<Mat> svd_of(const Mat& m, unsigned opts) {
  Eigen::BDCSVD<Mat> svd(m, opts);
  return svd;
}

Eigen::Index rank_from_values(const RVec& s, double rel_tol) {
  double cut = rel_tol * std::max(s(0), 1e-300);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return rank;
}

}  // namespace

Mat null_space(const Mat& m, double rel_tol) {
  if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols());
  // A short matrix has a kernel even when every singular value is large.
  Mat work = m;
  if (m.rows() < m.cols()) {
    work = Mat::Zero(m.cols(), m.cols());
    work.topRows(m.rows()) = m;
  }
  auto svd = svd_of(work, Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  double cut = rel_tol * std::max(smax, 1.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return svd.matrixV().rightCols(work.cols() - rank);
}

Eigen::Index numerical_rank(const Mat& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const Eigen::Index small = std::min(m.rows(), m.cols());
  if (small <= kJacobiLimit) return rank_from_values(Eigen::JacobiSVD<Mat>(m).singularValues(), rel_tol);
  // BDCSVD in Eigen 3.4 leaves spurious values around 1e-6 on large matrices with
  // clustered spectra, so large inputs go through a random sketch m * omega first.
  Rng rng(0x5eed);
  Mat sketch = m * rng.cmat(m.cols(), kJacobiLimit);
  Eigen::Index r = rank_from_values(Eigen::JacobiSVD<Mat>(sketch).singularValues(), rel_tol);
  if (r < kJacobiLimit) return r;
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(rel_tol);
  return qr.rank();
}

double sparsity(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return static_cast<double>((m.array() != cplx(0.0)).count()) / static_cast<double>(m.size());
}

SpMat to_sparse(const Mat& m) { return m.sparseView(); }

namespace {

// Smallest singular value of a sparse square matrix by inverse iteration on (T*T)^-1.
double sparse_min_singular_value(const Mat& m) {
  SpMat t = to_sparse(m);
  SpMat ta = SpMat(t.adjoint());
  Eigen::SparseLU<SpMat> lu(t), lua(ta);
  if (lu.info() != Eigen::Success || lua.info() != Eigen::Success) return 0.0;
  Rng rng(7);
  Vec x = rng.unit_cvec(m.cols());
  double est = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vec y = lu.solve(Vec(lua.solve(x)));
    double nrm = y.norm();
    if (!std::isfinite(nrm) || nrm == 0.0) return 0.0;
    double next = 1.0 / std::sqrt(nrm);
    x = y / nrm;
    if (it > 3 && std::abs(next - est) <= 1e-14 * next) return next;
    est = next;
  }
  return est;
}

}  // namespace

double min_singular_value(const Mat& m) {
  if (m.rows() == m.cols() && m.rows() > 64 && sparsity(m) < 0.05) return sparse_min_singular_value(m);
  auto svd = svd_of(m, 0);
  return svd.singularValues().minCoeff();
}

LstsqResult lstsq(const Mat& a, const Mat& b, double rel_tol) {
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(a);
  double scale = a.size() ? a.cwiseAbs().maxCoeff() : 1.0;
  cod.setThreshold(rel_tol * std::max(1.0, scale) / std::max<double>(1.0, a.cols()));
  LstsqResult out;
  out.x = cod.solve(b);
  out.residual = (a * out.x - b).norm();
  out.rank = cod.rank();
  return out;
}

double rel_diff(const Mat& a, const Mat& b) {
  double scale = std::max({1.0, a.norm(), b.norm()});
  return (a - b).norm() / scale;
}

PositiveOp::PositiveOp(const Mat& op, double rel_tol) : op_(op) {
  Mat herm = 0.5 * (op + op.adjoint());
  if ((op - herm).norm() > 1e-8 * std::max(1.0, op.norm()))
    throw Error(ErrorCode::NotPD, "operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(herm);
  evals_ = es.eigenvalues();
  vecs_ = es.eigenvectors();
  if (evals_.size() && evals_.minCoeff() <= rel_tol * std::max(1.0, evals_.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::NotPD, "operator has a non-positive eigenvalue");
}

PositiveOp PositiveOp::from_spectrum(const Mat& vecs, const RVec& evals) {
  if (evals.size() && !(evals.minCoeff() > 0.0)) throw Error(ErrorCode::NotPD, "non-positive eigenvalue");
  PositiveOp p;
  p.vecs_ = vecs;
  p.evals_ = evals;
  p.op_ = vecs * evals.cast<cplx>().asDiagonal() * vecs.adjoint();
  return p;
}

Mat PositiveOp::pow(cplx z) const {
  Vec f(evals_.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = std::exp(z * std::log(evals_(i)));
  return vecs_ * f.asDiagonal() * vecs_.adjoint();
}

AntiPolar polar(const AntiLinOp& a) {
  Mat sq = a.m.transpose() * a.m.conjugate();
  PositiveOp p(0.5 * (sq + sq.adjoint()));
  return {compose(a, p.pow(-0.5)), p};
}

AntiPolar polar_svd(const AntiLinOp& a) {
  // C = U S V*: |A| = conj(V) S V^T and the antiunitary part has coefficient U V*.
  Eigen::JacobiSVD<Mat> svd(a.m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat& v = svd.matrixV();
  RVec s = svd.singularValues();
  AntiLinOp u{svd.matrixU() * v.adjoint()};
  return {u, PositiveOp::from_spectrum(v.conjugate(), s.cwiseProduct(s))};
}

Vec Rng::cvec(Eigen::Index n) {
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cnormal();
  return v;
}

Vec Rng::unit_cvec(Eigen::Index n) {
  Vec v = cvec(n);
  return v / v.norm();
}

Mat Rng::cmat(Eigen::Index r, Eigen::Index c) {
  Mat m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = cnormal();
  return m;
}

}  // namespace aqg
