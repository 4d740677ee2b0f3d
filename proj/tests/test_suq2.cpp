#include <doctest.h>

#include "aqg/presentation.hpp"
#include "aqg/suq2.hpp"
#include "oracles.hpp"

using namespace aqg;

namespace {

Mat classical_intertwiner(int l1, int l2) {
  const int d1 = l1 + 1, d2 = l2 + 1;
  Mat v = Mat::Zero(d1 * d2, d1 * d2);
  int row = 0;
  for (int j : fusion(l1, l2))
    for (int k = 0; k <= j; ++k, ++row)
      for (int i1 = 0; i1 < d1; ++i1)
        for (int i2 = 0; i2 < d2; ++i2)
          v(row, i1 * d2 + i2) = oracle::classical_cg(l1, l1 - 2 * i1, l2, l2 - 2 * i2, j, j - 2 * k);
  return v;
}

double worst_cg_deviation(double q, int cap) {
  BlockQuantumGroup g(q);
  double worst = 0.0;
  for (int a = 0; a <= cap; ++a)
    for (int b = 0; b <= cap; ++b) worst = std::max(worst, max_abs(g.intertwiner(a, b).v - classical_intertwiner(a, b)));
  return worst;
}

Mat direct_sum_raising(double q, const std::vector<int>& spins) {
  int n = 0;
  for (int s : spins) n += s + 1;
  Mat out = Mat::Zero(n, n);
  int off = 0;
  for (int s : spins) {
    out.block(off, off, s + 1, s + 1) = q_raising(q, s);
    off += s + 1;
  }
  return out;
}

double op_norm(const Mat& m) { return Eigen::JacobiSVD<Mat>(m).singularValues()(0); }

void require_all_pass(const CheckList& checks) {
  for (const auto& c : checks) {
    INFO(c.group << " / " << c.name << " value " << c.value << " " << c.note);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("q-numbers and fusion rules") {
  CHECK(q_number(2, 0.5) == doctest::Approx(2.5));
  CHECK(q_number(3, 0.5) == doctest::Approx(0.25 + 1.0 + 4.0));
  CHECK(fusion(1, 1) == std::vector<int>{0, 2});
  CHECK(fusion(3, 2) == std::vector<int>{1, 3, 5});
}

TEST_CASE("q-CG intertwiners are unitary and intertwine the coproduct of E") {
  for (double q : {0.3, 0.5, 0.9}) {
    BlockQuantumGroup g(q);
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; b <= 6; ++b) {
        const auto& v = g.intertwiner(a, b);
        CHECK(v.unitarity <= 1e-12);
        Mat de = kron(q_raising(q, a), q_weight(q, b)) + kron(Mat(q_weight(q, a).inverse()), q_raising(q, b));
        Mat blocks = direct_sum_raising(q, v.spins);
        CHECK(rel_diff(v.v * de * v.v.adjoint(), blocks) < 1e-12);
      }
  }
}

TEST_CASE("spin 1/2 singlet has the closed form (q^1/2 |+-> - q^-1/2 |-+>) / sqrt([2]_q)") {
  const double q = 0.5;
  BlockQuantumGroup g(q);
  Mat singlet = g.intertwiner(1, 1).rows_of(0);
  const double n = std::sqrt(q_number(2, q));
  Mat expected = Mat::Zero(1, 4);
  expected(0, 1) = std::sqrt(q) / n;
  expected(0, 2) = -1.0 / (std::sqrt(q) * n);
  CHECK(max_abs(singlet - expected) < 1e-14);

  // Haar weight and modular element from the singlet by hand.
  Mat qm = Mat::Zero(2, 2), dm = Mat::Zero(2, 2);
  qm(0, 0) = q * q_number(2, q);
  qm(1, 1) = q_number(2, q) / q;
  dm(0, 0) = 1.0 / (q * q);
  dm(1, 1) = q * q;
  CHECK(max_abs(g.haar(1) - qm) < 1e-13);
  CHECK(max_abs(g.modular_element(1) - dm) < 1e-13);
}

TEST_CASE("q-CG reduce to the classical CG coefficients as q -> 1") {
  CHECK(worst_cg_deviation(1.0 - 1e-7, 3) < 1e-6);
  // The deviation is first order in 1 - q; the slope grows with the spins.
  CHECK(worst_cg_deviation(0.999, 1) <= 1e-3);
  double d999 = worst_cg_deviation(0.999, 3), d9999 = worst_cg_deviation(0.9999, 3);
  INFO("max deviation at q = 0.999: " << d999);
  CHECK(d999 / d9999 == doctest::Approx(10.0).epsilon(0.01));
  CHECK(d999 == doctest::Approx(2.4507e-3).epsilon(1e-3));
}

TEST_CASE("counit of the block-0 unit is one") {
  BlockQuantumGroup g(0.5);
  CHECK(g.counit(BlockElement::basis(0, 0)) == cplx(1.0));
  CHECK(g.counit(BlockElement::basis(1, 0)) == cplx(0.0));
}

TEST_CASE("q = 1/2: S^2 and delta are far from trivial on block 1/2") {
  BlockQuantumGroup g(0.5);
  const Mat& s = g.antipode(1);
  CHECK(op_norm(s * s - Mat::Identity(4, 4)) >= 0.5);
  CHECK(op_norm(g.modular_element(1) - Mat::Identity(2, 2)) >= 0.5);
}

TEST_CASE("Haar weights are positive with trace [2l+1]_q^2") {
  BlockQuantumGroup g(0.5);
  for (int l = 0; l <= 6; ++l) {
    const Mat& qm = g.haar(l);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (qm + qm.adjoint()));
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    const double dq = q_number(l + 1, 0.5);
    CHECK(std::abs(qm.trace() - dq * dq) < 1e-10 * dq * dq);
  }
}

TEST_CASE("W preserves the norm of Lambda(1_0) (x) Lambda(1_0)") {
  BlockQuantumGroup g(0.5);
  BlockVector x;
  x.legs = 2;
  x.parts[{0, 0}] = Vec::Ones(1);
  BlockVector wx = apply_w(g, x, 0, 1);
  CHECK(std::abs(wx.dot(wx) - x.dot(x)) <= 1e-15);
}

TEST_CASE("block checks all pass at q = 0.3, 0.5, 0.9 with spin cap 3/2") {
  for (double q : {0.3, 0.5, 0.9}) {
    BlockQuantumGroup g(q);
    BlockOptions opt;
    BlockScalars sc;
    CheckList checks = run_block_checks(g, 3, opt, &sc);
    INFO("q = " << q);
    require_all_pass(checks);
    CHECK(std::abs(sc.nu - 1.0) <= 1e-8);
    CHECK(std::abs(sc.mu - cplx(1.0)) <= 1e-8);
    CHECK(std::abs(sc.gamma - 1.0) <= 1e-8);
  }
}

TEST_CASE("corrupted intertwiner breaks the pentagon without aborting the report") {
  BlockQuantumGroup g(0.5);
  g.corrupt_intertwiner(1, 1, 0, 1, 0.1);
  BlockOptions opt;
  CheckList checks;
  REQUIRE_NOTHROW(checks = run_block_checks(g, 3, opt));
  const Check* pent = find_check(checks, "pentagon");
  REQUIRE(pent != nullptr);
  CHECK(!pent->pass);
  CHECK(pent->value >= 1e-2);
  const Check* cg = find_check(checks, "cg_unitarity");
  REQUIRE(cg != nullptr);
  CHECK(!cg->pass);
}

TEST_CASE("near q = 1 the modular data become trivial") {
  BlockQuantumGroup g(0.9999);
  for (int l = 0; l <= 3; ++l) {
    const int d = l + 1;
    CHECK(max_abs(g.modular_element(l) - Mat::Identity(d, d)) <= 1e-3);
    CHECK(max_abs(g.modular_automorphism(l) - Mat::Identity(d * d, d * d)) <= 1e-3);
  }
}

TEST_CASE("spins beyond the budget raise SupportOverflow") {
  BlockQuantumGroup g(0.5, 4);
  CHECK_THROWS_AS(g.intertwiner(3, 3), Error);
  auto code = [&] {
    try {
      g.haar(5);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Schema;
  }();
  CHECK(code == ErrorCode::SupportOverflow);
}
