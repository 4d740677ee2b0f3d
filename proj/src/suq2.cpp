#include "aqg/suq2.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "aqg/presentation.hpp"
#include "aqg/solvers.hpp"

namespace aqg {

namespace {

const cplx kI(0.0, 1.0);

double rel_max(const Mat& a, const Mat& b) {
  return max_abs(a - b) / std::max({1.0, max_abs(a), max_abs(b)});
}

double spectral_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

// M_d with basis E_ik at i * d + k.
AlgebraPresentation matrix_algebra(int d) {
  const int n = d * d;
  AlgebraPresentation a;
  a.dim = n;
  a.mult = Mat::Zero(n, n * n);
  a.involution = Mat::Zero(n, n);
  a.unit = Vec::Zero(n);
  for (int i = 0; i < d; ++i) {
    a.unit(i * d + i) = 1.0;
    for (int k = 0; k < d; ++k) {
      a.involution(k * d + i, i * d + k) = 1.0;
      for (int l = 0; l < d; ++l) a.mult(i * d + l, (i * d + k) * n + k * d + l) = 1.0;
    }
  }
  return a;
}

// (id (x) Tr(w .))(x) and (Tr(w .) (x) id)(x) on C^{d1} (x) C^{d2}.
Mat slice_second(const Mat& x, const Mat& w, int d1, int d2) {
  Mat out = Mat::Zero(d1, d1);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int k1 = 0; k1 < d1; ++k1)
      for (int i2 = 0; i2 < d2; ++i2)
        for (int k2 = 0; k2 < d2; ++k2) out(i1, k1) += x(i1 * d2 + i2, k1 * d2 + k2) * w(k2, i2);
  return out;
}

Mat slice_first(const Mat& x, const Mat& w, int d1, int d2) {
  Mat out = Mat::Zero(d2, d2);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int k1 = 0; k1 < d1; ++k1)
      for (int i2 = 0; i2 < d2; ++i2)
        for (int k2 = 0; k2 < d2; ++k2) out(i2, k2) += x(i1 * d2 + i2, k1 * d2 + k2) * w(k1, i1);
  return out;
}

Mat apply_block_map(const Mat& map, const Mat& a) {
  return unvec_rm(map * vec_rm(a), int(a.rows()));
}

BlockElement random_element(int cap_two_l, Rng& rng) {
  BlockElement a;
  for (int l = 0; l <= cap_two_l; ++l) a.blocks[l] = rng.cmat(block_dim(l), block_dim(l));
  return a;
}

std::vector<Eigen::Index> strides_of(const std::vector<int>& key) {
  std::vector<Eigen::Index> st(key.size(), 1);
  for (int k = int(key.size()) - 2; k >= 0; --k)
    st[k] = st[k + 1] * Eigen::Index(block_dim(key[k + 1])) * block_dim(key[k + 1]);
  return st;
}

Eigen::Index leg_dim(int two_l) { return Eigen::Index(block_dim(two_l)) * block_dim(two_l); }

void guarded(CheckList& out, const std::string& group, const std::string& name, const std::string& identity,
             const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    out.push_back(failed_check(group, name, identity, e.what()));
  }
}

}  // namespace

double q_number(double x, double q) {
  if (std::abs(q - 1.0) < 1e-14) return x;
  return (std::pow(q, x) - std::pow(q, -x)) / (q - 1.0 / q);
}

std::vector<int> fusion(int two_l1, int two_l2) {
  std::vector<int> out;
  for (int l = std::abs(two_l1 - two_l2); l <= two_l1 + two_l2; l += 2) out.push_back(l);
  return out;
}

Mat Intertwiner::rows_of(int two_l) const {
  for (std::size_t s = 0; s < spins.size(); ++s)
    if (spins[s] == two_l) return v.middleRows(offsets[s], block_dim(two_l));
  return Mat();
}

Mat q_raising(double q, int two_l) {
  const int d = block_dim(two_l);
  Mat e = Mat::Zero(d, d);
  for (int i = 1; i < d; ++i) {
    double m = 0.5 * (two_l - 2 * i);
    double l = 0.5 * two_l;
    e(i - 1, i) = std::sqrt(q_number(l - m, q) * q_number(l + m + 1, q));
  }
  return e;
}

Mat q_weight(double q, int two_l) {
  const int d = block_dim(two_l);
  Mat k = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) k(i, i) = std::pow(q, 0.5 * (two_l - 2 * i));
  return k;
}

Intertwiner q_clebsch_gordan(double q, int two_l1, int two_l2) {
  const int d1 = block_dim(two_l1), d2 = block_dim(two_l2), n = d1 * d2;
  Mat e1 = q_raising(q, two_l1), e2 = q_raising(q, two_l2);
  Mat k1 = q_weight(q, two_l1), k2 = q_weight(q, two_l2);
  Mat de = kron(e1, k2) + kron(Mat(k1.inverse()), e2);
  Mat df = de.adjoint();

  Intertwiner out;
  out.two_l1 = two_l1;
  out.two_l2 = two_l2;
  out.spins = fusion(two_l1, two_l2);
  int row = 0;
  for (int s : out.spins) {
    out.offsets.push_back(row);
    row += block_dim(s);
  }
  out.v = Mat::Zero(n, n);

  // Descending spins. Lowering amplifies components along higher spins, so every new vector is
  // projected off the rows already built at its weight before normalizing.
  std::map<int, std::vector<Vec>> by_weight;  // doubled weight -> unit vectors of higher spins
  auto orthogonalize = [&](Vec& v, int two_m) {
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& u : by_weight[two_m]) v -= u.dot(v) * u;
    v /= v.norm();
  };
  for (std::size_t si = out.spins.size(); si-- > 0;) {
    const int two_j = out.spins[si];
    // Highest weight vector: kernel of Delta(E) on the weight-J subspace.
    std::vector<int> idx;
    for (int i1 = 0; i1 < d1; ++i1)
      for (int i2 = 0; i2 < d2; ++i2)
        if ((two_l1 - 2 * i1) + (two_l2 - 2 * i2) == two_j) idx.push_back(i1 * d2 + i2);
    Mat sub(n, Eigen::Index(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) sub.col(c) = de.col(idx[c]);
    Eigen::JacobiSVD<Mat> svd(sub, Eigen::ComputeFullV);
    Vec small = svd.matrixV().col(Eigen::Index(idx.size()) - 1);
    Vec v = Vec::Zero(n);
    for (std::size_t c = 0; c < idx.size(); ++c) v(idx[c]) = small(c);
    orthogonalize(v, two_j);
    // Phase: positive coefficient at m1 = l1.
    const int i2top = (two_l2 - (two_j - two_l1)) / 2;
    cplx lead = v(i2top);
    if (std::abs(lead) < 1e-300) throw Error(ErrorCode::CGGenerationFailure, "vanishing leading coefficient");
    v *= std::conj(lead) / std::abs(lead);

    std::vector<Vec> built;
    for (int k = 0; k <= two_j; ++k) {
      out.v.row(out.offsets[si] + k) = v.adjoint();
      built.push_back(v);
      if (k == two_j) break;
      v = df * v;
      orthogonalize(v, two_j - 2 * k - 2);
    }
    for (int k = 0; k <= two_j; ++k) by_weight[two_j - 2 * k].push_back(built[k]);
  }
  out.unitarity = max_abs(out.v * out.v.adjoint() - Mat::Identity(n, n));
  if (!(out.unitarity <= 1e-12))
    throw Error(ErrorCode::CGGenerationFailure,
                "intertwiner " + std::to_string(two_l1) + "/2 (x) " + std::to_string(two_l2) +
                    "/2 not unitary: " + std::to_string(out.unitarity));
  return out;
}

std::vector<int> BlockElement::support() const {
  std::vector<int> out;
  for (const auto& [l, b] : blocks) out.push_back(l);
  return out;
}

const Mat* BlockElement::find(int two_l) const {
  auto it = blocks.find(two_l);
  return it == blocks.end() ? nullptr : &it->second;
}

BlockElement BlockElement::basis(int two_l, int index) {
  const int d = block_dim(two_l);
  BlockElement a;
  Mat b = Mat::Zero(d, d);
  b(index / d, index % d) = 1.0;
  a.blocks[two_l] = b;
  return a;
}

Vec vec_rm(const Mat& a) {
  Vec v(a.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) v(i * a.cols() + k) = a(i, k);
  return v;
}

Mat unvec_rm(const Vec& v, int d) {
  Mat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) a(i, k) = v(i * d + k);
  return a;
}

// ----------------------------------------------------------------------------

BlockQuantumGroup::BlockQuantumGroup(double q, int max_two_l) : q_(q), max_two_l_(max_two_l) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::PreconditionFailed, "q must lie in (0, 1)");
}

void BlockQuantumGroup::check_budget(int two_l) const {
  if (two_l > max_two_l_)
    throw Error(ErrorCode::SupportOverflow,
                "spin " + std::to_string(two_l) + "/2 exceeds the budget " + std::to_string(max_two_l_) + "/2");
}

const Intertwiner& BlockQuantumGroup::intertwiner(int two_l1, int two_l2) const {
  auto key = std::make_pair(two_l1, two_l2);
  auto it = cg_.find(key);
  if (it != cg_.end()) return it->second;
  check_budget(two_l1 + two_l2);
  return cg_.emplace(key, q_clebsch_gordan(q_, two_l1, two_l2)).first->second;
}

void BlockQuantumGroup::corrupt_intertwiner(int two_l1, int two_l2, int row, int col, cplx amount) {
  Intertwiner v = intertwiner(two_l1, two_l2);
  v.v(row, col) += amount;
  const Eigen::Index n = v.v.rows();
  v.unitarity = max_abs(v.v * v.v.adjoint() - Mat::Identity(n, n));
  // Everything derived from the structure maps is recomputed.
  antipode_.clear();
  antipode_inv_.clear();
  haar_.clear();
  right_haar_.clear();
  delta_.clear();
  rho_.clear();
  frame_.clear();
  frame_inv_.clear();
  antipode_res_.clear();
  w_kernel_.clear();
  cg_[{two_l1, two_l2}] = v;
}

Mat BlockQuantumGroup::coproduct(const BlockElement& a, int two_l1, int two_l2) const {
  const Intertwiner& v = intertwiner(two_l1, two_l2);
  const Eigen::Index n = v.v.cols();
  Mat out = Mat::Zero(n, n);
  for (int s : v.spins) {
    const Mat* b = a.find(s);
    if (!b) continue;
    Mat r = v.rows_of(s);
    out += r.adjoint() * (*b) * r;
  }
  return out;
}

Mat BlockQuantumGroup::coproduct_basis(int two_l, int index, int two_l1, int two_l2) const {
  const Intertwiner& v = intertwiner(two_l1, two_l2);
  const Eigen::Index n = v.v.cols();
  Mat r = v.rows_of(two_l);
  if (r.size() == 0) return Mat::Zero(n, n);
  const int d = block_dim(two_l);
  return r.row(index / d).adjoint() * r.row(index % d);
}

cplx BlockQuantumGroup::counit(const BlockElement& a) const {
  const Mat* b = a.find(0);
  return b ? (*b)(0, 0) : cplx(0.0);
}

const Mat& BlockQuantumGroup::antipode(int two_l) const {
  auto it = antipode_.find(two_l);
  if (it != antipode_.end()) return it->second;
  check_budget(two_l);
  const int d = block_dim(two_l);
  const Eigen::Index d2 = Eigen::Index(d) * d;
  // m(S (x) id)(Delta(a)(1 (x) b)) = eps(a) b restricted to block l: only blocks of l (x) l contribute.
  // Unknowns for output row r: U[(i2 d + i1) d + k1] = S[(r, i2), (i1, k1)].
  std::vector<int> blocks = fusion(two_l, two_l);
  Eigen::Index rows = 0;
  for (int b : blocks) rows += leg_dim(b) * d;
  Mat sys = Mat::Zero(rows, d2 * d);
  Mat rhs = Mat::Zero(rows, d);
  Eigen::Index row = 0;
  for (int b : blocks) {
    const int db = block_dim(b);
    for (int x = 0; x < db * db; ++x) {
      Mat xm = coproduct_basis(b, x, two_l, two_l);
      for (int k2 = 0; k2 < d; ++k2, ++row) {
        for (int i2 = 0; i2 < d; ++i2)
          for (int i1 = 0; i1 < d; ++i1)
            for (int k1 = 0; k1 < d; ++k1) sys(row, (i2 * d + i1) * d + k1) = xm(i1 * d + i2, k1 * d + k2);
        if (b == 0) rhs(row, k2) = 1.0;
      }
    }
  }
  Eigen::ColPivHouseholderQR<Mat> qr(sys);
  Mat u = qr.solve(rhs);
  antipode_res_[two_l] = max_abs(sys * u - rhs);
  if (qr.rank() < d2 * d)
    throw Error(ErrorCode::NonUnique, "antipode equation on block " + std::to_string(two_l) + "/2 is underdetermined");
  Mat s(d2, d2);
  for (int r = 0; r < d; ++r)
    for (int i2 = 0; i2 < d; ++i2)
      for (int i1 = 0; i1 < d; ++i1)
        for (int k1 = 0; k1 < d; ++k1) s(r * d + i2, i1 * d + k1) = u((i2 * d + i1) * d + k1, r);
  return antipode_.emplace(two_l, s).first->second;
}

const Mat& BlockQuantumGroup::antipode_inverse(int two_l) const {
  auto it = antipode_inv_.find(two_l);
  if (it != antipode_inv_.end()) return it->second;
  return antipode_inv_.emplace(two_l, antipode(two_l).inverse()).first->second;
}

double BlockQuantumGroup::antipode_solve_residual(int two_l) const {
  antipode(two_l);
  return antipode_res_.at(two_l);
}

const Mat& BlockQuantumGroup::haar(int two_l) const {
  auto it = haar_.find(two_l);
  if (it != haar_.end()) return it->second;
  check_budget(two_l);
  const int d = block_dim(two_l);
  // Left invariance on a = unit of block 0: (id (x) phi_l)(Delta(a)_{l,l}) = phi(a) 1 with phi(a) = 1.
  Mat x = coproduct_basis(0, 0, two_l, two_l);
  Mat sys(d * d, d * d);
  for (int i1 = 0; i1 < d; ++i1)
    for (int k1 = 0; k1 < d; ++k1)
      for (int i2 = 0; i2 < d; ++i2)
        for (int k2 = 0; k2 < d; ++k2) sys(i1 * d + k1, k2 * d + i2) = x(i1 * d + i2, k1 * d + k2);
  Vec rhs = vec_rm(Mat::Identity(d, d));
  LstsqResult r = lstsq(sys, rhs);
  if (r.rank < d * d) throw Error(ErrorCode::NonUnique, "Haar weight on block " + std::to_string(two_l) + "/2");
  return haar_.emplace(two_l, unvec_rm(r.x.col(0), d)).first->second;
}

const Mat& BlockQuantumGroup::right_haar(int two_l) const {
  auto it = right_haar_.find(two_l);
  if (it != right_haar_.end()) return it->second;
  check_budget(two_l);
  const int d = block_dim(two_l);
  Mat x = coproduct_basis(0, 0, two_l, two_l);
  Mat sys(d * d, d * d);
  for (int i2 = 0; i2 < d; ++i2)
    for (int k2 = 0; k2 < d; ++k2)
      for (int i1 = 0; i1 < d; ++i1)
        for (int k1 = 0; k1 < d; ++k1) sys(i2 * d + k2, k1 * d + i1) = x(i1 * d + i2, k1 * d + k2);
  Vec rhs = vec_rm(Mat::Identity(d, d));
  LstsqResult r = lstsq(sys, rhs);
  if (r.rank < d * d)
    throw Error(ErrorCode::NonUnique, "right Haar weight on block " + std::to_string(two_l) + "/2");
  return right_haar_.emplace(two_l, unvec_rm(r.x.col(0), d)).first->second;
}

const Mat& BlockQuantumGroup::modular_element(int two_l) const {
  auto it = delta_.find(two_l);
  if (it != delta_.end()) return it->second;
  const int d = block_dim(two_l);
  // (phi (x) id)(Delta(a)(1 (x) b)) = phi(a) delta b with a = unit of block 0.
  Mat x = coproduct_basis(0, 0, two_l, two_l);
  return delta_.emplace(two_l, slice_first(x, haar(two_l), d, d)).first->second;
}

const Mat& BlockQuantumGroup::modular_automorphism(int two_l) const {
  auto it = rho_.find(two_l);
  if (it != rho_.end()) return it->second;
  const int d = block_dim(two_l);
  const Mat& qm = haar(two_l);
  RowVec f(d * d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) f(i * d + k) = qm(k, i);
  return rho_.emplace(two_l, solve_modular_automorphism(matrix_algebra(d), f)).first->second;
}

cplx BlockQuantumGroup::phi(const BlockElement& a) const {
  cplx s = 0.0;
  for (const auto& [l, b] : a.blocks) s += (haar(l) * b).trace();
  return s;
}

cplx BlockQuantumGroup::psi(const BlockElement& a) const {
  cplx s = 0.0;
  for (const auto& [l, b] : a.blocks) s += (right_haar(l) * b).trace();
  return s;
}

const Mat& BlockQuantumGroup::frame(int two_l) const {
  auto it = frame_.find(two_l);
  if (it != frame_.end()) return it->second;
  const int d = block_dim(two_l);
  const Mat& qm = haar(two_l);
  PositiveOp p(0.5 * (qm + qm.adjoint()));
  frame_inv_[two_l] = kron(Mat::Identity(d, d), Mat(p.pow(-0.5).transpose()));
  return frame_.emplace(two_l, kron(Mat::Identity(d, d), Mat(p.pow(0.5).transpose()))).first->second;
}

const Mat& BlockQuantumGroup::frame_inverse(int two_l) const {
  frame(two_l);
  return frame_inv_.at(two_l);
}

const Mat& BlockQuantumGroup::w_kernel(int two_l1, int two_lb, int two_l2) const {
  std::vector<int> key = {two_l1, two_lb, two_l2};
  auto it = w_kernel_.find(key);
  if (it != w_kernel_.end()) return it->second;
  const int d1 = block_dim(two_l1), db = block_dim(two_lb), d2 = block_dim(two_l2);
  Mat r = intertwiner(two_l1, two_l2).rows_of(two_lb);
  if (r.size() == 0)
    throw Error(ErrorCode::PreconditionFailed, "spin " + std::to_string(two_lb) + "/2 does not occur in " +
                                                   std::to_string(two_l1) + "/2 (x) " + std::to_string(two_l2) + "/2");
  const Mat& s_inv = antipode_inverse(two_l1);
  Mat zs(Eigen::Index(d1) * d2 * d2, Eigen::Index(d1) * db * db);
  for (int xb = 0; xb < db * db; ++xb) {
    Mat y = r.row(xb / db).adjoint() * r.row(xb % db);
    Mat z = unrealign(s_inv * realign(y, d1, d2), d1, d2);
    for (int i1 = 0; i1 < d1; ++i1)
      for (int i2 = 0; i2 < d2; ++i2)
        for (int k2 = 0; k2 < d2; ++k2)
          for (int rr = 0; rr < d1; ++rr)
            zs((i1 * d2 + i2) * d2 + k2, rr * db * db + xb) = z(i1 * d2 + i2, rr * d2 + k2);
  }
  return w_kernel_.emplace(key, zs).first->second;
}

// ----------------------------------------------------------------------------

double BlockVector::norm() const {
  double s = 0.0;
  for (const auto& [k, v] : parts) s += v.squaredNorm();
  return std::sqrt(s);
}

cplx BlockVector::dot(const BlockVector& other) const {
  cplx s = 0.0;
  for (const auto& [k, v] : parts) {
    auto it = other.parts.find(k);
    if (it != other.parts.end()) s += it->second.dot(v);
  }
  return s;
}

void BlockVector::add(const std::vector<int>& key, const Vec& v) {
  auto it = parts.find(key);
  if (it == parts.end())
    parts.emplace(key, v);
  else
    it->second += v;
}

BlockVector operator-(const BlockVector& a, const BlockVector& b) {
  BlockVector out = a;
  for (const auto& [k, v] : b.parts) out.add(k, -v);
  return out;
}

BlockVector operator*(cplx s, const BlockVector& a) {
  BlockVector out = a;
  for (auto& [k, v] : out.parts) v *= s;
  return out;
}

BlockVector random_block_vector(int legs, int cap_two_l, Rng& rng) {
  BlockVector out;
  out.legs = legs;
  std::vector<int> key(legs, 0);
  while (true) {
    Eigen::Index n = 1;
    for (int l : key) n *= leg_dim(l);
    out.parts[key] = rng.cvec(n);
    int k = legs - 1;
    while (k >= 0 && key[k] == cap_two_l) key[k--] = 0;
    if (k < 0) break;
    ++key[k];
  }
  double nrm = out.norm();
  for (auto& [k, v] : out.parts) v /= nrm;
  return out;
}

namespace {

// W on H_l1 (x) H_lb in frame coordinates, columns are independent batches.
std::vector<std::pair<int, Mat>> w_pair(const BlockQuantumGroup& g, int two_l1, int two_lb, const Mat& x) {
  const int d1 = block_dim(two_l1);
  const Eigen::Index db2 = leg_dim(two_lb), batch = x.cols();
  Mat c = kron_apply(g.frame_inverse(two_l1), g.frame_inverse(two_lb), x);
  Mat cs(d1 * db2, d1 * batch);
  for (int r = 0; r < d1; ++r)
    for (int s = 0; s < d1; ++s)
      for (Eigen::Index xb = 0; xb < db2; ++xb)
        for (Eigen::Index t = 0; t < batch; ++t) cs(r * db2 + xb, s * batch + t) = c((r * d1 + s) * db2 + xb, t);
  std::vector<std::pair<int, Mat>> out;
  for (int two_l2 : fusion(two_l1, two_lb)) {
    const int d2 = block_dim(two_l2);
    const Eigen::Index dd2 = leg_dim(two_l2);
    Mat o = g.w_kernel(two_l1, two_lb, two_l2) * cs;
    Mat y(d1 * d1 * dd2, batch);
    for (int i1 = 0; i1 < d1; ++i1)
      for (int s = 0; s < d1; ++s)
        for (Eigen::Index j = 0; j < dd2; ++j)
          for (Eigen::Index t = 0; t < batch; ++t)
            y((i1 * d1 + s) * dd2 + j, t) = o(i1 * dd2 + j, s * batch + t);
    (void)d2;
    out.emplace_back(two_l2, kron_apply(g.frame(two_l1), g.frame(two_l2), y));
  }
  return out;
}

}  // namespace

BlockVector apply_w(const BlockQuantumGroup& g, const BlockVector& x, int first, int second) {
  BlockVector out;
  out.legs = x.legs;
  int other = -1;
  for (int k = 0; k < x.legs; ++k)
    if (k != first && k != second) other = k;
  for (const auto& [key, v] : x.parts) {
    auto st = strides_of(key);
    const Eigen::Index dp = leg_dim(key[first]), dr = leg_dim(key[second]);
    const Eigen::Index dother = other >= 0 ? leg_dim(key[other]) : 1;
    const Eigen::Index so = other >= 0 ? st[other] : 0;
    Mat xm(dp * dr, dother);
    for (Eigen::Index ip = 0; ip < dp; ++ip)
      for (Eigen::Index ir = 0; ir < dr; ++ir)
        for (Eigen::Index io = 0; io < dother; ++io)
          xm(ip * dr + ir, io) = v(ip * st[first] + ir * st[second] + io * so);
    for (auto& [two_l2, y] : w_pair(g, key[first], key[second], xm)) {
      std::vector<int> nk = key;
      nk[second] = two_l2;
      auto nst = strides_of(nk);
      const Eigen::Index d2 = leg_dim(two_l2);
      const Eigen::Index nso = other >= 0 ? nst[other] : 0;
      auto it = out.parts.find(nk);
      if (it == out.parts.end()) {
        Eigen::Index n = 1;
        for (int l : nk) n *= leg_dim(l);
        it = out.parts.emplace(nk, Vec::Zero(n)).first;
      }
      Vec& target = it->second;
      for (Eigen::Index ip = 0; ip < dp; ++ip)
        for (Eigen::Index i2 = 0; i2 < d2; ++i2)
          for (Eigen::Index io = 0; io < dother; ++io)
            target(ip * nst[first] + i2 * nst[second] + io * nso) += y(ip * d2 + i2, io);
    }
  }
  return out;
}

double block_relative_residual(const BlockVector& lhs, const BlockVector& rhs) {
  return (lhs - rhs).norm() / std::max({1.0, lhs.norm(), rhs.norm()});
}

BlockModularOps block_modular_ops(const BlockQuantumGroup& g, int two_l) {
  const int d = block_dim(two_l);
  const int n = d * d;
  const Mat& qm = g.haar(two_l);
  PositiveOp qp(0.5 * (qm + qm.adjoint()));
  Mat qh = qp.pow(0.5), qhi = qp.pow(-0.5);
  const Mat& s = g.antipode(two_l);
  BlockModularOps ops;
  ops.t.m = Mat(n, n);
  ops.g.m = Mat(n, n);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      Mat e = Mat::Zero(d, d);
      e(i, k) = 1.0;
      // Frame vector E_ik is Lambda(E_ik haar^{-1/2}).
      Mat a = e * qhi;
      ops.t.m.col(i * d + k) = vec_rm(Mat(a.adjoint() * qh));
      Mat sa = apply_block_map(s, a);
      ops.g.m.col(i * d + k) = vec_rm(Mat(sa.adjoint() * qh));
    }
  ops.nabla = ops.t.m.transpose() * ops.t.m.conjugate();
  AntiPolar pol = polar_svd(ops.g);
  ops.m = pol.square;
  ops.i = pol.unitary;
  // Gram of phi(b* delta a) in the basis, moved to the frame.
  const Mat& delta = g.modular_element(two_l);
  Mat gram(n, n);
  for (int p = 0; p < d; ++p)
    for (int qq = 0; qq < d; ++qq)
      for (int r = 0; r < d; ++r)
        for (int t = 0; t < d; ++t) gram(p * d + qq, r * d + t) = delta(p, r) * qm(t, qq);
  const Mat& bi = g.frame_inverse(two_l);
  ops.delta_op = bi.adjoint() * gram * bi;
  return ops;
}

// ----------------------------------------------------------------------------

CheckList check_block_structure(const BlockQuantumGroup& g, int cap, const BlockOptions& opt) {
  const std::string grp = "block_structure";
  const double tol = opt.tol;
  CheckList out;
  Rng rng(opt.seed + 31);

  guarded(out, grp, "cg_unitarity", "V_{l1 l2} V_{l1 l2}* = 1", [&] {
    double worst = 0.0;
    for (int a = 0; a <= 2 * cap; ++a)
      for (int b = 0; b <= 3 * cap; ++b) worst = std::max(worst, g.intertwiner(a, b).unitarity);
    out.push_back(residual_check(grp, "cg_unitarity", "V_{l1 l2} V_{l1 l2}* = 1", worst, 1e-12));
  });

  guarded(out, grp, "fusion_multiplicity_free", "l1 (x) l2 = sum of l, each once", [&] {
    long ok = 0, total = 0;
    for (int a = 0; a <= cap; ++a)
      for (int b = 0; b <= cap; ++b) {
        ++total;
        const auto& v = g.intertwiner(a, b);
        int dim = 0;
        for (int s : v.spins) dim += block_dim(s);
        if (dim == block_dim(a) * block_dim(b) && std::adjacent_find(v.spins.begin(), v.spins.end()) == v.spins.end())
          ++ok;
      }
    out.push_back(dimension_check(grp, "fusion_multiplicity_free", "l1 (x) l2 = sum of l, each once", ok, total));
  });

  guarded(out, grp, "coproduct_homomorphism", "Delta(ab) = Delta(a) Delta(b), Delta(a*) = Delta(a)*", [&] {
    BlockElement a = random_element(2 * cap, rng), b = random_element(2 * cap, rng), ab, as;
    for (const auto& [l, m] : a.blocks) {
      ab.blocks[l] = m * b.blocks.at(l);
      as.blocks[l] = m.adjoint();
    }
    double mult = 0.0, inv = 0.0;
    for (int l1 = 0; l1 <= cap; ++l1)
      for (int l2 = 0; l2 <= cap; ++l2) {
        Mat da = g.coproduct(a, l1, l2);
        mult = std::max(mult, rel_max(g.coproduct(ab, l1, l2), da * g.coproduct(b, l1, l2)));
        inv = std::max(inv, rel_max(g.coproduct(as, l1, l2), da.adjoint()));
      }
    out.push_back(residual_check(grp, "coproduct_multiplicative", "Delta(ab) = Delta(a) Delta(b)", mult, tol));
    out.push_back(residual_check(grp, "coproduct_star", "Delta(a*) = Delta(a)*", inv, tol));
  });

  guarded(out, grp, "coassociativity", "(Delta (x) id) Delta = (id (x) Delta) Delta", [&] {
    BlockElement a = random_element(3 * cap, rng);
    double worst = 0.0;
    for (int l1 = 0; l1 <= cap; ++l1)
      for (int l2 = 0; l2 <= cap; ++l2)
        for (int l3 = 0; l3 <= cap; ++l3) {
          const int d1 = block_dim(l1), d2 = block_dim(l2), d3 = block_dim(l3);
          Mat lhs = Mat::Zero(d1 * d2 * d3, d1 * d2 * d3), rhs = lhs;
          const auto& v12 = g.intertwiner(l1, l2);
          for (int j : v12.spins) {
            Mat e = kron(Mat(v12.rows_of(j)), Mat::Identity(d3, d3));
            lhs += e.adjoint() * g.coproduct(a, j, l3) * e;
          }
          const auto& v23 = g.intertwiner(l2, l3);
          for (int k : v23.spins) {
            Mat e = kron(Mat::Identity(d1, d1), Mat(v23.rows_of(k)));
            rhs += e.adjoint() * g.coproduct(a, l1, k) * e;
          }
          worst = std::max(worst, rel_max(lhs, rhs));
        }
    out.push_back(residual_check(grp, "coassociativity", "(Delta (x) id) Delta = (id (x) Delta) Delta", worst, tol));
  });

  guarded(out, grp, "counit", "(eps (x) id) Delta(a) = a = (id (x) eps) Delta(a)", [&] {
    BlockElement a = random_element(cap, rng);
    double worst = std::abs(g.counit(BlockElement::basis(0, 0)) - cplx(1.0));
    for (int l = 0; l <= cap; ++l) {
      const Mat& al = a.blocks.at(l);
      worst = std::max({worst, rel_max(g.coproduct(a, 0, l), al), rel_max(g.coproduct(a, l, 0), al)});
    }
    out.push_back(residual_check(grp, "counit", "(eps (x) id) Delta(a) = a = (id (x) eps) Delta(a)", worst, tol));
  });

  guarded(out, grp, "antipode", "m(S (x) id)(Delta(a)(1 (x) b)) = eps(a) b", [&] {
    double solve = 0.0, right = 0.0, anti = 0.0, star_inv = 0.0, inv = 0.0;
    for (int l = 0; l <= 2 * cap; ++l) {
      solve = std::max(solve, g.antipode_solve_residual(l));
      const Mat& s = g.antipode(l);
      inv = std::max(inv, max_abs(s * g.antipode_inverse(l) - Mat::Identity(s.rows(), s.cols())));
    }
    for (int l = 0; l <= cap; ++l) {
      const int d = block_dim(l);
      const Mat& s = g.antipode(l);
      for (int b : fusion(l, l)) {
        const int db = block_dim(b);
        for (int x = 0; x < db * db; ++x) {
          Mat xm = g.coproduct_basis(b, x, l, l);
          Mat res = Mat::Zero(d, d);
          for (int i1 = 0; i1 < d; ++i1)
            for (int ss = 0; ss < d; ++ss)
              for (int k1 = 0; k1 < d; ++k1)
                for (int i2 = 0; i2 < d; ++i2)
                  for (int k2 = 0; k2 < d; ++k2)
                    res(i1, ss) += xm(i1 * d + i2, k1 * d + k2) * s(k1 * d + ss, i2 * d + k2);
          Mat expected = b == 0 ? Mat(Mat::Identity(d, d)) : Mat(Mat::Zero(d, d));
          right = std::max(right, max_abs(res - expected));
        }
      }
      Mat x = rng.cmat(d, d), y = rng.cmat(d, d);
      anti = std::max(anti, rel_max(apply_block_map(s, Mat(x * y)), apply_block_map(s, y) * apply_block_map(s, x)));
      Mat sx = apply_block_map(s, x);
      star_inv = std::max(star_inv, rel_max(Mat(apply_block_map(s, Mat(sx.adjoint())).adjoint()), x));
    }
    out.push_back(residual_check(grp, "antipode_left_solve", "m(S (x) id)(Delta(a)(1 (x) b)) = eps(a) b", solve, tol));
    out.push_back(residual_check(grp, "antipode_right", "m(id (x) S)((b (x) 1) Delta(a)) = eps(a) b", right, tol));
    out.push_back(residual_check(grp, "antipode_invertible", "S S^-1 = 1", inv, tol));
    out.push_back(residual_check(grp, "antipode_antimultiplicative", "S(xy) = S(y) S(x)", anti, tol));
    out.push_back(residual_check(grp, "antipode_star", "S(S(a)*)* = a", star_inv, tol));
  });

  guarded(out, grp, "galois_maps_surjective", "T1, T2 onto each block pair", [&] {
    long full = 0, total = 0;
    for (int l1 = 0; l1 <= cap; ++l1)
      for (int l2 = 0; l2 <= cap; ++l2) {
        const int d1 = block_dim(l1), d2 = block_dim(l2);
        const Eigen::Index target = leg_dim(l1) * leg_dim(l2);
        std::vector<Vec> t1, t2;
        for (int b : fusion(l1, l2)) {
          const int db = block_dim(b);
          for (int x = 0; x < db * db; ++x) {
            Mat dx = g.coproduct_basis(b, x, l1, l2);
            for (int y = 0; y < d2 * d2; ++y) {
              Mat e = Mat::Zero(d2, d2);
              e(y / d2, y % d2) = 1.0;
              Mat prod = dx * kron(Mat::Identity(d1, d1), e);
              t1.push_back(Eigen::Map<Vec>(prod.data(), prod.size()));
            }
            for (int y = 0; y < d1 * d1; ++y) {
              Mat e = Mat::Zero(d1, d1);
              e(y / d1, y % d1) = 1.0;
              Mat prod = kron(e, Mat::Identity(d2, d2)) * dx;
              t2.push_back(Eigen::Map<Vec>(prod.data(), prod.size()));
            }
          }
        }
        for (const auto* cols : {&t1, &t2}) {
          Mat m(target, Eigen::Index(cols->size()));
          for (std::size_t c = 0; c < cols->size(); ++c) m.col(c) = (*cols)[c];
          ++total;
          if (numerical_rank(m, 1e-10) == target) ++full;
        }
      }
    out.push_back(dimension_check(grp, "galois_maps_surjective",
                                  "T1 = Delta(a)(1 (x) b), T2 = (a (x) 1)Delta(b) onto each block pair", full, total));
  });


  guarded(out, grp, "antipode_square_inner", "S^2 = Ad(D), D positive diagonal", [&] {
    double res = 0.0, positivity = 1e300;
    for (int l = 0; l <= cap; ++l) {
      const int d = block_dim(l);
      Mat s2 = g.antipode(l) * g.antipode(l);
      // S^2(E_ik) = (D_i / D_k) E_ik with D_0 = 1.
      Vec dg(d);
      for (int i = 0; i < d; ++i) dg(i) = s2(i * d, i * d);
      Mat expected = Mat::Zero(d * d, d * d);
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) expected(i * d + k, i * d + k) = dg(i) / dg(k);
      res = std::max(res, rel_max(s2, expected));
      for (int i = 0; i < d; ++i) positivity = std::min(positivity, dg(i).real() - std::abs(dg(i).imag()));
    }
    out.push_back(residual_check(grp, "antipode_square_inner", "S^2 = Ad(D), D diagonal", res, tol));
    out.push_back(lower_bound_check(grp, "antipode_square_positive", "min D_i (D positive)", positivity, tol));
  });
  return out;
}

CheckList check_block_haar(const BlockQuantumGroup& g, int cap, const BlockOptions& opt) {
  const std::string grp = "block_haar";
  const double tol = opt.tol;
  CheckList out;

  guarded(out, grp, "haar_left_invariance", "(id (x) phi)(Delta(a)(b (x) 1)) = phi(a) b", [&] {
    double left = 0.0, dcons = 0.0, right = 0.0;
    for (int l = 0; l <= cap; ++l) {
      const int d = block_dim(l);
      for (int x = 0; x < d * d; ++x) {
        BlockElement e = BlockElement::basis(l, x);
        const cplx fe = g.phi(e), pe = g.psi(e);
        for (int l1 = 0; l1 <= cap; ++l1) {
          const int d1 = block_dim(l1);
          Mat sum = Mat::Zero(d1, d1);
          for (int l2 : fusion(l1, l)) sum += slice_second(g.coproduct_basis(l, x, l1, l2), g.haar(l2), d1, block_dim(l2));
          left = std::max(left, max_abs(sum - fe * Mat::Identity(d1, d1)));
        }
        for (int l2 = 0; l2 <= cap; ++l2) {
          const int d2 = block_dim(l2);
          Mat sd = Mat::Zero(d2, d2), sr = Mat::Zero(d2, d2);
          for (int l1 : fusion(l, l2)) {
            Mat xm = g.coproduct_basis(l, x, l1, l2);
            sd += slice_first(xm, g.haar(l1), block_dim(l1), d2);
            sr += slice_first(xm, g.right_haar(l1), block_dim(l1), d2);
          }
          dcons = std::max(dcons, max_abs(sd - fe * g.modular_element(l2)));
          right = std::max(right, max_abs(sr - pe * Mat::Identity(d2, d2)));
        }
      }
    }
    out.push_back(residual_check(grp, "haar_left_invariance", "(id (x) phi)(Delta(a)(b (x) 1)) = phi(a) b", left, tol));
    out.push_back(residual_check(grp, "modular_element_consistency", "(phi (x) id)(Delta(a)(1 (x) b)) = phi(a) delta b",
                                 dcons, tol));
    out.push_back(residual_check(grp, "psi_right_invariance", "(psi (x) id)(Delta(a)(1 (x) b)) = psi(a) b", right, tol));
  });

  guarded(out, grp, "haar_positive", "phi and psi blocks positive definite", [&] {
    double mq = 1e300, mp = 1e300, qdim = 0.0;
    for (int l = 0; l <= 3 * cap; ++l) {
      const Mat& qm = g.haar(l);
      const Mat& pm = g.right_haar(l);
      Eigen::SelfAdjointEigenSolver<Mat> eq(0.5 * (qm + qm.adjoint())), ep(0.5 * (pm + pm.adjoint()));
      mq = std::min(mq, eq.eigenvalues().minCoeff() - max_abs(qm - qm.adjoint()));
      mp = std::min(mp, ep.eigenvalues().minCoeff() - max_abs(pm - pm.adjoint()));
      const double dq = q_number(block_dim(l), g.q());
      qdim = std::max(qdim, std::abs(qm.trace() / (dq * dq) - cplx(1.0)));
    }
    out.push_back(lower_bound_check(grp, "haar_positive", "min eigenvalue of the phi blocks", mq, 0.0));
    out.push_back(lower_bound_check(grp, "psi_positive", "min eigenvalue of the psi blocks", mp, 0.0));
    out.push_back(residual_check(grp, "quantum_dimension", "phi(1_l) = Tr(phi_l) = [2l+1]_q^2", qdim, tol));
  });

  guarded(out, grp, "modular_element", "Delta(delta) = delta (x) delta, eps(delta) = 1, S(delta) = delta^-1", [&] {
    BlockElement delta;
    for (int l = 0; l <= 2 * cap; ++l) delta.blocks[l] = g.modular_element(l);
    double grouplike = 0.0, anti = 0.0, pos = 1e300;
    for (int l1 = 0; l1 <= cap; ++l1)
      for (int l2 = 0; l2 <= cap; ++l2)
        grouplike = std::max(grouplike, rel_max(g.coproduct(delta, l1, l2),
                                                kron(delta.blocks.at(l1), delta.blocks.at(l2))));
    for (int l = 0; l <= cap; ++l) {
      const Mat& dl = delta.blocks.at(l);
      const int d = block_dim(l);
      anti = std::max(anti, max_abs(apply_block_map(g.antipode(l), dl) * dl - Mat::Identity(d, d)));
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (dl + dl.adjoint()));
      pos = std::min(pos, es.eigenvalues().minCoeff() - max_abs(dl - dl.adjoint()));
    }
    out.push_back(residual_check(grp, "delta_grouplike", "Delta(delta)(1 (x) b) = (delta (x) delta)(1 (x) b)", grouplike, tol));
    out.push_back(residual_check(grp, "delta_counit", "eps(delta) = 1", std::abs(g.counit(delta) - cplx(1.0)), tol));
    out.push_back(residual_check(grp, "delta_antipode", "S(delta) = delta^-1", anti, tol));
    out.push_back(lower_bound_check(grp, "delta_positive", "min eigenvalue of the delta blocks", pos, 0.0));
  });

  guarded(out, grp, "phi_antipode", "phi(S(a)) = phi(a delta)", [&] {
    double ps = 0.0, kms = 0.0, psi_form = 0.0;
    std::vector<cplx> f, h;
    for (int l = 0; l <= cap; ++l) {
      const int d = block_dim(l);
      const Mat& qm = g.haar(l);
      const Mat& dl = g.modular_element(l);
      const Mat& s = g.antipode(l);
      const Mat& rho = g.modular_automorphism(l);
      Mat s2 = s * s;
      for (int x = 0; x < d * d; ++x) {
        Mat e = Mat::Zero(d, d);
        e(x / d, x % d) = 1.0;
        ps = std::max(ps, std::abs((qm * apply_block_map(s, e)).trace() - (qm * e * dl).trace()));
        f.push_back((qm * e).trace());
        h.push_back((qm * apply_block_map(s2, e)).trace());
        Mat re = apply_block_map(rho, e);
        for (int y = 0; y < d * d; ++y) {
          Mat b = Mat::Zero(d, d);
          b(y / d, y % d) = 1.0;
          kms = std::max(kms, std::abs((qm * e * b).trace() - (qm * b * re).trace()));
        }
      }
      PositiveOp dp(0.5 * (dl + dl.adjoint()));
      Mat dh = dp.pow(0.5);
      psi_form = std::max(psi_form, rel_max(g.right_haar(l), dh * qm * dh));
    }
    Eigen::Map<Vec> fv(f.data(), Eigen::Index(f.size())), hv(h.data(), Eigen::Index(h.size()));
    cplx mu = fv.dot(hv) / fv.squaredNorm();
    out.push_back(residual_check(grp, "phi_S_delta", "phi(S(a)) = phi(a delta)", ps, tol));
    out.push_back(residual_check(grp, "rho_kms", "phi(ab) = phi(b rho(a))", kms, tol));
    out.push_back(residual_check(grp, "psi_phi_delta_half", "psi = phi(delta^{1/2} . delta^{1/2})", psi_form,
                                 std::min(tol, 1e-9)));
    out.push_back(residual_check(grp, "mu_proportional", "phi S^2 = mu phi", max_abs(Vec(hv - mu * fv)), tol));
  });
  return out;
}

namespace {

// Block-diagonal operator cache for the sampled suite.
struct OpCache {
  const BlockQuantumGroup& g;
  std::map<int, BlockModularOps> ops;

  const BlockModularOps& at(int l) {
    auto it = ops.find(l);
    if (it == ops.end()) it = ops.emplace(l, block_modular_ops(g, l)).first;
    return it->second;
  }
};

Mat pi_block(const Mat& a) {
  const Eigen::Index d = a.rows();
  return kron(a, Mat::Identity(d, d));
}

}  // namespace

CheckList block_gns_suite(const BlockQuantumGroup& g, int cap, const BlockOptions& opt, BlockScalars* scalars) {
  const std::string grp = "block_gns";
  const double tol = opt.tol;
  const int n_samples = opt.samples;
  CheckList out;
  OpCache cache{g, {}};
  Rng rng(opt.seed + 41);

  guarded(out, grp, "w_unit_vector", "<W x, W x> = <x, x> for x = Lambda(1_0) (x) Lambda(1_0)", [&] {
    BlockVector x;
    x.legs = 2;
    x.parts[{0, 0}] = Vec::Ones(1) * g.frame(0)(0, 0);
    BlockVector wx = apply_w(g, x, 0, 1);
    out.push_back(residual_check(grp, "w_unit_vector", "<W x, W x> = <x, x> for x = Lambda(1_0) (x) Lambda(1_0)",
                                 std::abs(wx.dot(wx) - x.dot(x)), 1e-14));
  });

  guarded(out, grp, "w_isometry", "<W x, W y> = <x, y>", [&] {
    double worst = 0.0;
    for (int s = 0; s < n_samples; ++s) {
      BlockVector x = random_block_vector(2, cap, rng), y = random_block_vector(2, cap, rng);
      BlockVector wx = apply_w(g, x, 0, 1), wy = apply_w(g, y, 0, 1);
      worst = std::max(worst, std::abs(wx.dot(wy) - x.dot(y)));
      worst = std::max(worst, std::abs(wx.dot(wx) - x.dot(x)));
    }
    out.push_back(residual_check(grp, "w_isometry", "<W x, W y> = <x, y>", worst, tol));
  });

  guarded(out, grp, "pentagon", "W12 W13 W23 = W23 W12", [&] {
    double worst = 0.0;
    for (int s = 0; s < n_samples; ++s) {
      BlockVector x = random_block_vector(3, cap, rng);
      BlockVector lhs = apply_w(g, apply_w(g, apply_w(g, x, 1, 2), 0, 2), 0, 1);
      BlockVector rhs = apply_w(g, apply_w(g, x, 0, 1), 1, 2);
      worst = std::max(worst, block_relative_residual(lhs, rhs));
    }
    out.push_back(residual_check(grp, "pentagon", "W12 W13 W23 = W23 W12", worst, tol));
  });

  guarded(out, grp, "nabla_rho", "nabla Lambda(a) = Lambda(rho(a))", [&] {
    double nr = 0.0, dop = 0.0;
    for (int s = 0; s < n_samples; ++s) {
      BlockVector v = random_block_vector(1, cap, rng);
      BlockVector lhs = apply_on_leg(v, 0, [&](int l) { return cache.at(l).nabla; });
      BlockVector rhs = apply_on_leg(v, 0, [&](int l) {
        return Mat(g.frame(l) * g.modular_automorphism(l) * g.frame_inverse(l));
      });
      nr = std::max(nr, block_relative_residual(lhs, rhs));
      BlockVector dl = apply_on_leg(v, 0, [&](int l) { return cache.at(l).delta_op; });
      BlockVector dr = apply_on_leg(v, 0, [&](int l) {
        return Mat(g.frame(l) * pi_block(g.modular_element(l)) * g.frame_inverse(l));
      });
      dop = std::max(dop, block_relative_residual(dl, dr));
    }
    out.push_back(residual_check(grp, "nabla_rho", "nabla Lambda(a) = Lambda(rho(a))", nr, tol));
    out.push_back(residual_check(grp, "delta_op_definition", "delta_op Lambda(a) = Lambda(delta a)", dop, tol));
  });

  guarded(out, grp, "delta_W", "(1 (x) delta) W = W (delta (x) delta)", [&] {
    auto pd = [&](int l) { return pi_block(g.modular_element(l)); };
    double worst = 0.0;
    for (int s = 0; s < n_samples; ++s) {
      BlockVector x = random_block_vector(2, cap, rng);
      BlockVector lhs = apply_on_leg(apply_w(g, x, 0, 1), 1, pd);
      BlockVector rhs = apply_w(g, apply_on_leg(apply_on_leg(x, 0, pd), 1, pd), 0, 1);
      worst = std::max(worst, block_relative_residual(lhs, rhs));
    }
    out.push_back(residual_check(grp, "delta_W", "(1 (x) delta) W = W (delta (x) delta)", worst, tol));
  });

  // Polar decomposition of G Lambda(a) = Lambda(S(a)*) and the polar form of the antipode.
  cplx mu(1.0, 0.0);
  guarded(out, grp, "polar_antipode", "pi(S(a)) = R(tau_{-i/2}(pi(a)))", [&] {
    double pre = 0.0, polar_res = 0.0, unit = 0.0, tau_res = 0.0;
    std::vector<cplx> f, h;
    for (int l = 0; l <= cap; ++l) {
      const int d = block_dim(l);
      const Mat& qm = g.haar(l);
      const Mat& s = g.antipode(l);
      for (int x = 0; x < d * d; ++x) {
        Mat e = Mat::Zero(d, d);
        e(x / d, x % d) = 1.0;
        f.push_back((qm * e).trace());
        h.push_back((qm * apply_block_map(Mat(s * s), e)).trace());
      }
    }
    Eigen::Map<Vec> fv(f.data(), Eigen::Index(f.size())), hv(h.data(), Eigen::Index(h.size()));
    mu = fv.dot(hv) / fv.squaredNorm();
    for (int l = 0; l <= cap; ++l) {
      const int d = block_dim(l);
      const auto& o = cache.at(l);
      const Mat& qm = g.haar(l);
      const Mat& s = g.antipode(l);
      const Mat& dl = g.modular_element(l);
      const Mat s2inv = g.antipode_inverse(l) * g.antipode_inverse(l);
      polar_res = std::max(polar_res, rel_max(compose(o.i, o.m.pow(0.5)).m, o.g.m));
      unit = std::max(unit, max_abs(o.i.m.adjoint() * o.i.m - Mat::Identity(d * d, d * d)));
      for (int x = 0; x < d * d; ++x) {
        Mat e = Mat::Zero(d, d);
        e(x / d, x % d) = 1.0;
        pre = std::max(pre, std::abs((qm * apply_block_map(s, e) * dl).trace() / mu - (qm * e).trace()));
        // tau_{-ki}(pi(a)) = pi(S^{2k}(a)) multiplied out: M^k pi(a) = pi(S^{2k}(a)) M^k.
        for (int k = -2; k <= 2; ++k) {
          Mat sk = Mat::Identity(d * d, d * d);
          for (int r = 0; r < std::abs(k); ++r) sk = sk * (k > 0 ? Mat(s * s) : s2inv);
          Mat mk = o.m.pow(double(k));
          tau_res = std::max(tau_res, rel_max(mk * pi_block(e), pi_block(apply_block_map(sk, e)) * mk));
        }
      }
    }
    out.push_back(residual_check(grp, "polar_precondition", "phi(S(a) delta / mu) = phi(a)", pre, tol));
    out.push_back(residual_check(grp, "G_polar", "G = I M^{1/2}, I*I = 1", std::max(polar_res, unit), tol));
    out.push_back(residual_check(grp, "tau_analytic", "M^k pi(a) = pi(S^{2k}(a)) M^k, k = -2..2", tau_res, tol));

    double thm = 0.0;
    for (int smp = 0; smp < n_samples; ++smp) {
      BlockElement a = random_element(cap, rng);
      BlockVector v = random_block_vector(1, cap, rng);
      BlockVector lhs = apply_on_leg(v, 0, [&](int l) {
        return pi_block(apply_block_map(g.antipode(l), a.blocks.at(l)));
      });
      BlockVector rhs = apply_on_leg(v, 0, [&](int l) {
        const auto& o = cache.at(l);
        Mat x = o.m.pow(0.5) * pi_block(a.blocks.at(l)) * o.m.pow(-0.5);
        return Mat(o.i.m * x.transpose() * o.i.m.conjugate());
      });
      thm = std::max(thm, block_relative_residual(lhs, rhs));
    }
    out.push_back(residual_check(grp, "polar_antipode", "pi(S(a)) = R(tau_{-i/2}(pi(a)))", thm, tol));
  });

  guarded(out, grp, "scalars", "mu = nu^{-i}, gamma nu = 1", [&] {
    std::vector<cplx> f, h;
    double membership = 0.0;
    cplx num = 0.0;
    double den = 0.0;
    for (int l = 0; l <= cap; ++l) {
      const int d = block_dim(l);
      const auto& o = cache.at(l);
      const Mat& qm = g.haar(l);
      Mat mi = o.m.pow(kI), mmi = o.m.pow(-kI);
      Vec one = g.frame(l) * vec_rm(Mat::Identity(d, d));
      for (int x = 0; x < d * d; ++x) {
        Mat e = Mat::Zero(d, d);
        e(x / d, x % d) = 1.0;
        Mat t = mi * pi_block(e) * mmi;
        Mat c = unvec_rm(g.frame_inverse(l) * (t * one), d);
        membership = std::max(membership, rel_max(t, pi_block(c)));
        f.push_back((qm * e).trace());
        h.push_back((qm * c).trace());
      }
      PositiveOp nab(0.5 * (o.nabla + o.nabla.adjoint()));
      Mat sd = nab.pow(kI) * o.delta_op * nab.pow(-kI);
      num += (o.delta_op.adjoint() * sd).trace();
      den += o.delta_op.squaredNorm();
    }
    Eigen::Map<Vec> fv(f.data(), Eigen::Index(f.size())), hv(h.data(), Eigen::Index(h.size()));
    cplx nu = fv.dot(hv) / fv.squaredNorm();
    BlockScalars sc;
    sc.mu = mu;
    sc.nu = nu.real();
    sc.nu_residual = std::max({max_abs(Vec(hv - nu * fv)), std::abs(nu.imag()), membership});
    sc.gamma = num.real() / den;
    if (scalars) *scalars = sc;
    cplx mu_from_nu = std::exp(-kI * std::log(std::max(sc.nu, 1e-300)));
    out.push_back(residual_check(grp, "nu_proportional", "phi(tau_1(a)) = nu phi(a)", sc.nu_residual, tol));
    out.push_back(value_report(grp, "nu", "relative invariance scalar", sc.nu));
    out.push_back(value_report(grp, "gamma", "<sigma_1(delta), delta> / |delta|^2", sc.gamma));
    out.push_back(value_report(grp, "mu_real", "phi S^2 = mu phi", sc.mu.real()));
    out.push_back(value_report(grp, "mu_imag", "phi S^2 = mu phi", sc.mu.imag()));
    out.push_back(residual_check(grp, "mu_nu", "mu = nu^{-i}", std::abs(sc.mu - mu_from_nu), tol));
    out.push_back(residual_check(grp, "gamma_nu", "gamma nu = 1", std::abs(sc.gamma * sc.nu - 1.0), tol));
  });
  return out;
}

CheckList check_block_nondegeneracy(const BlockQuantumGroup& g, const BlockOptions& opt) {
  const std::string grp = "block_nondegeneracy";
  CheckList out;
  (void)opt;
  guarded(out, grp, "delta_nontrivial", "|delta_{1/2} - 1|", [&] {
    const int l = 1, d = 2;
    const Mat id = Mat::Identity(d, d), id2 = Mat::Identity(d * d, d * d);
    auto o = block_modular_ops(g, l);
    const Mat& s = g.antipode(l);
    double tau_gap = 0.0;
    Mat mi = o.m.pow(kI), mmi = o.m.pow(-kI);
    for (int x = 0; x < d * d; ++x) {
      Mat e = Mat::Zero(d, d);
      e(x / d, x % d) = 1.0;
      tau_gap = std::max(tau_gap, spectral_norm(mi * pi_block(e) * mmi - pi_block(e)));
    }
    out.push_back(lower_bound_check(grp, "delta_nontrivial", "|delta_{1/2} - 1|", spectral_norm(g.modular_element(l) - id), 0.1));
    out.push_back(lower_bound_check(grp, "S2_nontrivial", "|S^2 - id| on block 1/2", spectral_norm(s * s - id2), 0.1));
    out.push_back(lower_bound_check(grp, "rho_nontrivial", "|rho - id| on block 1/2",
                                    spectral_norm(g.modular_automorphism(l) - id2), 0.1));
    out.push_back(lower_bound_check(grp, "nabla_nontrivial", "|nabla - 1| on block 1/2", spectral_norm(o.nabla - id2), 0.1));
    out.push_back(lower_bound_check(grp, "tau_nontrivial", "max_a |tau_1(pi(a)) - pi(a)| on block 1/2", tau_gap, 0.1));
    out.push_back(lower_bound_check(grp, "delta_op_nontrivial", "|delta_op - 1| on block 1/2",
                                    spectral_norm(o.delta_op - id2), 0.1));
    out.push_back(lower_bound_check(grp, "psi_ne_phi", "|psi_{1/2} - phi_{1/2}|",
                                    spectral_norm(g.right_haar(l) - g.haar(l)), 0.1));
  });
  return out;
}

CheckList run_block_checks(const BlockQuantumGroup& g, int cap, const BlockOptions& opt, BlockScalars* scalars) {
  CheckList out = check_block_structure(g, cap, opt);
  append(out, check_block_haar(g, cap, opt));
  append(out, block_gns_suite(g, cap, opt, scalars));
  append(out, check_block_nondegeneracy(g, opt));
  return out;
}

}  // namespace aqg
