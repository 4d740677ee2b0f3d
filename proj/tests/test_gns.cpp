#include <doctest.h>

#include "aqg/constructors.hpp"
#include "aqg/modular.hpp"

using namespace aqg;

namespace {

QuantumGroupModel model_of(const QuantumGroupPresentation& p, int dense_threshold = 128) {
  GnsOptions opt;
  opt.dense_threshold = dense_threshold;
  return build_model(p, opt);
}

void require_all_pass(const CheckList& checks) {
  for (const auto& c : checks) {
    INFO(c.group << " / " << c.name << " value " << c.value << " " << c.note);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("GNS space of C[Z2] is C^2 with permutation representation") {
  auto m = model_of(group_algebra(cyclic_group(2)));
  CHECK(max_abs(m.gns.ortho - Mat::Identity(2, 2)) < 1e-12);
  Mat swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(max_abs(m.gns.pi[1] - swap) < 1e-12);
}

TEST_CASE("F(S3) representation is diagonal") {
  auto m = model_of(function_algebra(symmetric_group(3)));
  for (int g = 0; g < 6; ++g) {
    Mat off = m.gns.pi[g];
    off.diagonal().setZero();
    CHECK(max_abs(off) < 1e-12);
  }
}

TEST_CASE("W on F(G) matches the closed form delta_a (x) delta_b -> delta_a (x) delta_ab") {
  auto g = symmetric_group(3);
  auto m = model_of(function_algebra(g));
  Mat oracle = Mat::Zero(36, 36);
  // Lambda(delta_g) is a multiple of the frame vector e_g, the same multiple for every g.
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) oracle(a * 6 + g.mul(a, b), a * 6 + b) = 1.0;
  CHECK(max_abs(*m.w.op.dense - oracle) <= 1e-12);
}

TEST_CASE("W on C[G] shifts lambda_a (x) lambda_b to lambda_{b^-1 a} (x) lambda_b") {
  auto g = symmetric_group(3);
  auto m = model_of(group_algebra(g));
  Mat oracle = Mat::Zero(36, 36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) oracle(g.mul(g.inverse[b], a) * 6 + b, a * 6 + b) = 1.0;
  CHECK(max_abs(*m.w.op.dense - oracle) <= 1e-12);
}

TEST_CASE("matrix-free W agrees with the dense one") {
  auto p = drinfeld_double(cyclic_group(2));
  auto dense = model_of(p);
  auto lazy = model_of(p, 0);
  REQUIRE(!lazy.w.op.is_dense());
  Mat probes = probe_vectors(16, 5, 7, 0);
  CHECK(relative_residual(lazy.w.op.apply(probes), dense.w.op.apply(probes)) < 1e-12);
  CHECK(relative_residual(lazy.w.op.apply_adjoint(probes), dense.w.op.apply_adjoint(probes)) < 1e-12);
  CHECK(unitarity_residual(lazy.w.op, probes) < 1e-12);
  CHECK(pentagon_residual(lazy.w.op, 4, 8, 3, 0) < 1e-12);
}

TEST_CASE("pentagon holds densely on F(S3) and fails for a corrupted coproduct") {
  auto p = function_algebra(symmetric_group(3));
  auto m = model_of(p);
  CHECK(pentagon_residual(m.w.op, 6, 50, 1) <= 1e-11);
  auto bad = p;
  bad.comul(0, 1) += 0.1;
  auto w = build_W(bad, m.gns.ortho, m.gns.ortho);
  CHECK(pentagon_residual(w.op, 6, 50, 1) >= 1e-3);
}

TEST_CASE("reduced comultiplication of the identity is the identity") {
  auto m = model_of(group_algebra(symmetric_group(3)));
  Mat v = probe_vectors(36, 4, 9, 0);
  CHECK(relative_residual(reduced_comul_apply(m.w.op, Mat::Identity(6, 6), v), v) < 1e-12);
}

TEST_CASE("slice of W by the zero functional vanishes") {
  auto m = model_of(function_algebra(symmetric_group(3)));
  Vec zero = Vec::Zero(6);
  CHECK(max_abs(slice_leg2(m.w.op, zero, m.gns.lambda(basis_vector(6, 1)))) == 0.0);
}

TEST_CASE("F(S3) slices are diagonal translation components") {
  auto g = symmetric_group(3);
  auto m = model_of(function_algebra(g));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      Mat s = slice_leg2(m.w.op, m.gns.lambda(basis_vector(6, a)), m.gns.lambda(basis_vector(6, b)));
      // W(e_c (x) e_a) = e_c (x) e_{ca}: the slice is diagonal with entry |Lambda|^2 [ca = b].
      Mat oracle = Mat::Zero(6, 6);
      for (int c = 0; c < 6; ++c)
        if (g.mul(c, a) == b) oracle(c, c) = 1.0 / 6.0;
      CHECK(max_abs(s - oracle) < 1e-12);
    }
}

TEST_CASE("all engine checks pass on the finite examples") {
  std::vector<QuantumGroupPresentation> examples = {group_algebra(cyclic_group(2)), group_algebra(symmetric_group(3)),
                                                    function_algebra(symmetric_group(3)),
                                                    drinfeld_double(symmetric_group(3))};
  for (const auto& p : examples) {
    auto m = model_of(p);
    auto s = build_modular_suite(m);
    require_all_pass(check_gns(m.pres, m.haar, m.gns, m.w, m.options));
    require_all_pass(run_modular_checks(m, s));
    CHECK(std::abs(s.nu - 1.0) < 1e-10);
    CHECK(std::abs(s.mu - cplx(1.0)) < 1e-10);
  }
}

TEST_CASE("tracial cases collapse the modular operators") {
  auto m = model_of(group_algebra(symmetric_group(3)));
  auto s = build_modular_suite(m);
  Mat id = Mat::Identity(6, 6);
  CHECK(max_abs(s.nabla.matrix() - id) < 1e-12);
  CHECK(max_abs(s.m_op().matrix() - id) < 1e-12);
  CHECK(max_abs(s.dual_hilbert.positive.matrix() - id) < 1e-12);
  CHECK(max_abs(s.delta_op.matrix() - id) < 1e-12);
  for (int a = 0; a < 6; ++a) {
    CHECK(max_abs(unitary_antipode(s.i_op(), m.gns.pi[a]) - m.gns.rep(m.s.col(a))) < 1e-12);
    CHECK(max_abs(s.j(m.gns.lambda(basis_vector(6, a))) - m.gns.lambda(star(m.pres.algebra, basis_vector(6, a)))) < 1e-12);
  }
}

TEST_CASE("polar machinery rejects a functional of the wrong form") {
  auto m = model_of(function_algebra(symmetric_group(3)));
  RowVec eta = m.haar.phi;
  eta(2) += 0.1;
  CHECK_THROWS_AS(polar_machinery(m, eta, m.pres.algebra.unit, m.pres.algebra.unit, m.gns.ortho, 1e-9), Error);
}

TEST_CASE("manageability pairing: diagonal tuples and sesquilinearity") {
  auto m = model_of(group_algebra(symmetric_group(3)));
  auto s = build_modular_suite(m);
  Rng rng(5);
  Vec u = rng.unit_cvec(6), v = rng.unit_cvec(6);
  const Mat& q = s.right_haar.positive.matrix();
  CHECK(max_abs(q - Mat::Identity(6, 6)) < 1e-12);
  auto pairing = [&](const Vec& u1, const Vec& v1, const Vec& u2, const Vec& v2) {
    Vec left = m.w.op.apply_adjoint(kron(Vec(s.right_haar.positive.pow(0.5) * u1), s.j(v1)));
    return kron(Vec(s.right_haar.positive.pow(-0.5) * u2), s.j(v2)).dot(left);
  };
  Vec wuv = m.w.op.apply(kron(u, v));
  cplx expected = kron(u, v).dot(wuv);
  CHECK(std::abs(pairing(u, v, u, v) - expected) < 1e-12);
  CHECK(std::abs(pairing(Vec(2.0 * u), v, u, v) - 2.0 * expected) < 1e-12);
}

TEST_CASE("groups are trivial at t = 0 and nu is one on F(S3)") {
  auto m = model_of(function_algebra(symmetric_group(3)));
  auto s = build_modular_suite(m);
  CHECK(compute_nu(m, s, 1e-10) == doctest::Approx(1.0).epsilon(1e-12));
  for (int a = 0; a < 6; ++a) CHECK(max_abs(sigma(s, 0.0, m.gns.pi[a]) - m.gns.pi[a]) < 1e-12);
}
