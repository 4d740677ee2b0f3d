#include <doctest.h>

#include "aqg/constructors.hpp"
#include "aqg/solvers.hpp"
#include "oracles.hpp"

using namespace aqg;

namespace {

QuantumGroupPresentation without_antipode(QuantumGroupPresentation p) {
  p.antipode.reset();
  return p;
}

double check_value(const CheckList& c, const std::string& name) {
  const Check* x = find_check(c, name);
  REQUIRE(x != nullptr);
  return x->value;
}

}  // namespace

TEST_CASE("C[Z2] passes the axioms with unit singular values") {
  auto p = group_algebra(cyclic_group(2));
  auto rep = check_axioms(p, 1e-12);
  CHECK(all_pass(rep));
  CHECK(check_value(rep, "T1_min_singular_value") == doctest::Approx(1.0));
  CHECK(check_value(rep, "T2_min_singular_value") == doctest::Approx(1.0));
}

TEST_CASE("F(S3) and D(S3) pass the axioms") {
  CHECK(all_pass(check_axioms(function_algebra(symmetric_group(3)), 1e-12)));
  CHECK(all_pass(check_axioms(drinfeld_double(symmetric_group(3)), 1e-12)));
}

TEST_CASE("corrupted multiplication breaks associativity") {
  auto p = function_algebra(symmetric_group(3));
  p.algebra.mult(0, 1 * 6 + 1) += 0.1;
  double oracle_res = oracle::assoc_residual(p.algebra);
  CHECK(oracle_res >= 0.05);
  auto rep = check_axioms(p, 1e-9);
  CHECK_FALSE(all_pass(rep));
  CHECK(check_value(rep, "associativity") >= 0.05);
  CHECK(check_value(rep, "associativity") == doctest::Approx(oracle_res));
}

TEST_CASE("dimension mismatch is reported") {
  auto p = group_algebra(cyclic_group(2));
  p.counit = RowVec::Zero(3);
  CHECK_THROWS_AS(check_axioms(p, 1e-9), Error);
}

TEST_CASE("antipode solver recovers inversion on group algebras and function algebras") {
  auto g3 = cyclic_group(3);
  Mat s = solve_antipode(without_antipode(group_algebra(g3)));
  for (int a = 0; a < 3; ++a) CHECK((s.col(a) - Vec::Unit(3, g3.inverse[a])).norm() < 1e-12);
  auto s3 = symmetric_group(3);
  Mat sf = solve_antipode(without_antipode(function_algebra(s3)));
  for (int a = 0; a < 6; ++a) CHECK((sf.col(a) - Vec::Unit(6, s3.inverse[a])).norm() < 1e-12);
}

TEST_CASE("antipode solver on D(S3) matches the double antipode") {
  auto g = symmetric_group(3);
  const int n = g.order;
  Mat s = solve_antipode(without_antipode(drinfeld_double(g)));
  double worst = 0.0;
  for (int x = 0; x < n; ++x)
    for (int h = 0; h < n; ++h) {
      int hi = g.inverse[h];
      int target = g.mul(g.mul(hi, g.inverse[x]), h) * n + hi;
      worst = std::max(worst, (s.col(x * n + h) - Vec::Unit(n * n, target)).norm());
    }
  CHECK(worst < 1e-10);
}

TEST_CASE("degenerate comultiplication leaves the antipode undetermined") {
  auto p = without_antipode(group_algebra(cyclic_group(2)));
  p.comul.setZero();
  CHECK_THROWS_AS(solve_antipode(p), Error);
}

TEST_CASE("Haar functional on group and function algebras") {
  auto ca = group_algebra(cyclic_group(2));
  HaarData h = solve_haar(ca);
  CHECK(std::abs(h.phi(0) - 1.0) < 1e-12);
  CHECK(std::abs(h.phi(1)) < 1e-12);
  CHECK((h.gram - Mat::Identity(2, 2)).norm() < 1e-12);

  auto f = function_algebra(symmetric_group(3));
  HaarData hf = solve_haar(f);
  for (int g = 0; g < 6; ++g) CHECK(std::abs(hf.phi(g) - 1.0 / 6.0) < 1e-12);
}

TEST_CASE("Haar functional on D(S3) is unique, faithful and invariant") {
  auto g = symmetric_group(3);
  auto p = drinfeld_double(g);
  HaarData h = solve_haar(p);
  CHECK(h.null_dim == 1);
  CHECK(h.min_eig > 0.0);
  CHECK(oracle::left_invariance(p, h.phi) < 1e-10);
  for (int x = 0; x < 6; ++x)
    for (int k = 0; k < 6; ++k) {
      double expect = (k == g.identity) ? 1.0 / 6.0 : 0.0;
      CHECK(std::abs(h.phi(x * 6 + k) - expect) < 1e-12);
    }
}

TEST_CASE("perturbing phi off the invariant line breaks invariance") {
  auto p = drinfeld_double(symmetric_group(3));
  HaarData h = solve_haar(p);
  RowVec bad = h.phi;
  bad(7) += 1e-6;
  CHECK(left_invariance_residual(p, bad) >= 10 * 1e-9);
  CHECK(oracle::left_invariance(p, bad) >= 10 * 1e-9);
}

TEST_CASE("modular data is trivial for the finite examples") {
  for (auto p : {group_algebra(symmetric_group(3)), function_algebra(symmetric_group(3)),
                 drinfeld_double(symmetric_group(3))}) {
    HaarData h = solve_haar(p);
    auto m = solve_modular(p, h);
    const int n = p.dim();
    CHECK((m.rho - Mat::Identity(n, n)).norm() < 1e-12);
    CHECK((m.delta - p.algebra.unit).norm() < 1e-12);
    CHECK(std::abs(m.mu - 1.0) < 1e-12);
    CHECK((m.psi - h.phi).norm() < 1e-12);
    auto rep = check_modular_relations(p, h, m, 1e-10);
    for (const auto& c : rep) CHECK_MESSAGE(c.pass, c.name);
  }
}

TEST_CASE("solve_rho is the identity for a commutative algebra") {
  auto p = function_algebra(symmetric_group(3));
  HaarData h = solve_haar(p);
  CHECK((solve_rho(p.algebra, h) - Mat::Identity(6, 6)).norm() < 1e-12);
}
