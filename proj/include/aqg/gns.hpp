#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "aqg/solvers.hpp"

namespace aqg {

// Operator on C^dim, either dense or given by appliers acting column-wise.
struct LinOp {
  Eigen::Index dim = 0;
  std::optional<Mat> dense;
  std::shared_ptr<const SpMat> sparse;  // copy of a mostly-zero dense matrix, used for products
  std::function<Mat(const Mat&)> forward;
  std::function<Mat(const Mat&)> backward;  // adjoint

  Mat apply(const Mat& x) const {
    if (sparse) return *sparse * x;
    return dense ? Mat(*dense * x) : forward(x);
  }
  Mat apply_adjoint(const Mat& x) const {
    if (sparse) return sparse->adjoint() * x;
    return dense ? Mat(dense->adjoint() * x) : backward(x);
  }
  bool is_dense() const { return dense.has_value(); }
};

LinOp dense_op(Mat m);

// Coordinates of Lambda(e_i) in an orthonormal frame of the GNS space of f:
// returns B with <B x, B y> = f(y* x).
Mat gns_frame(const AlgebraPresentation& alg, const RowVec& f);
// Same for the form <x, y> = f(y* w x).
Mat gns_frame(const AlgebraPresentation& alg, const RowVec& f, const Vec& weight);

struct GnsSpace {
  int dim = 0;
  Mat gram;       // gram(a, b) = phi(e_b* e_a)
  Mat ortho;      // Lambda(x) = ortho * x
  Mat ortho_inv;
  std::vector<Mat> pi;  // pi(e_i) in the orthonormal frame
  double faithfulness = 0.0;  // smallest singular value of a -> pi(a)

  Vec lambda(const Vec& x) const { return ortho * x; }
  Mat rep(const Vec& a) const;
  // Element c with X Lambda(1) = Lambda(c), plus relative distance of X from pi(c).
  Vec pullback(const AlgebraPresentation& alg, const Mat& x, double* residual = nullptr) const;
  // Antilinear operator with coordinate matrix c (x -> c conj(x)) moved to the frame.
  AntiLinOp frame_antilinear(const Mat& c) const { return {ortho * c * ortho_inv.conjugate()}; }
  Mat frame_linear(const Mat& l) const { return ortho * l * ortho_inv; }
};

GnsSpace build_gns(const QuantumGroupPresentation& p, const HaarData& haar);

// Unitary on K (x) H with U (Gamma (x) Lambda)(Delta(b)(a (x) 1)) = Gamma(a) (x) Lambda(b),
// where Gamma(x) = gamma_frame * x and Lambda(x) = frame * x.
struct MultiplicativeUnitary {
  int dim = 0;
  LinOp op;
  Mat leg1_frame;
  Mat leg2_frame;
};

// Coordinate form a (x) b -> (S^{-1} (x) id)(Delta(b))(a (x) 1).
Mat inverse_antipode_shift(const QuantumGroupPresentation& p, const Mat& s_inv);
SpMat inverse_antipode_shift_sparse(const QuantumGroupPresentation& p, const Mat& s_inv);

MultiplicativeUnitary build_W(const QuantumGroupPresentation& p, const Mat& leg1_frame,
                              const Mat& leg2_frame, int dense_threshold = 128);

// Probe vectors on C^dim: all basis vectors when dim <= exhaustive_limit, else seeded random.
Mat probe_vectors(Eigen::Index dim, int count, std::uint64_t seed, Eigen::Index exhaustive_limit = 64);

// max_v |(L - R) v| / max(1, |Lv|, |Rv|) over the columns of the two images.
double relative_residual(const Mat& lhs, const Mat& rhs);

// (A (x) B) x, conjugating x first for antilinear pairs.
Mat tensor_apply(const Mat& a, const Mat& b, const Mat& x, bool antilinear = false);

double unitarity_residual(const LinOp& w, const Mat& probes);
// W (Lambda (x) Lambda)(Delta(b)(a (x) 1)) = Lambda(a) (x) Lambda(b) on random coefficients.
double definition_residual(const QuantumGroupPresentation& p, const MultiplicativeUnitary& w,
                           int samples, std::uint64_t seed);
// Closed-form comparison helper: dense matrix of W (forms it column by column if needed).
Mat materialize(const LinOp& op);

// W12 W13 W23 = W23 W12 on three-leg vectors.
Mat apply_w12(const LinOp& w, const Mat& x, Eigen::Index n);
Mat apply_w23(const LinOp& w, const Mat& x, Eigen::Index n);
Mat apply_w13(const LinOp& w, const Mat& x, Eigen::Index n);
double pentagon_residual(const LinOp& w, Eigen::Index n, int samples, std::uint64_t seed,
                         Eigen::Index exhaustive_limit = 1000);

// Delta_r(x) = W* (1 (x) x) W applied to vectors.
Mat reduced_comul_apply(const LinOp& w, const Mat& x_op, const Mat& v);
// (pi (x) pi)(X) applied to vectors, for X in A (x) A.
Mat pi_pair_apply(const QuantumGroupPresentation& p, const GnsSpace& gns, const Vec& x2,
                  const Mat& v);
double reduced_comul_agreement(const QuantumGroupPresentation& p, const GnsSpace& gns,
                               const LinOp& w, const Mat& probes);

// Slices of W by the vector functional omega_{xi,eta}(y) = <y xi, eta>.
Mat slice_leg2(const LinOp& w, const Vec& xi, const Vec& eta);  // (id (x) omega)(W)
Mat slice_leg1(const LinOp& w, const Vec& xi, const Vec& eta);  // (omega (x) id)(W)

// Dimension of the span of a family of operators, as vectors.
Eigen::Index operator_span_rank(const std::vector<Mat>& ops, double rel_tol);
Eigen::Index joint_span_rank(const std::vector<Mat>& a, const std::vector<Mat>& b, double rel_tol);

struct GnsOptions {
  double tol = kDefaultTol;
  std::uint64_t seed = 42;
  int dense_threshold = 128;
  int probes = 16;
  int pentagon_samples = 50;
};

// GNS construction, W, pentagon, Delta_r agreement and slice identities.
CheckList check_gns(const QuantumGroupPresentation& p, const HaarData& haar, const GnsSpace& gns,
                    const MultiplicativeUnitary& w, const GnsOptions& opt);

}  // namespace aqg
