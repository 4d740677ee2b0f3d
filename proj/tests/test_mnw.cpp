#include <doctest.h>

#include <set>

#include "aqg/constructors.hpp"
#include "aqg/mnw.hpp"

using namespace aqg;

namespace {

std::set<std::string> names_of(const CheckList& checks) {
  std::set<std::string> out;
  for (const auto& c : checks) out.insert(c.name);
  return out;
}

void require_all_pass(const CheckList& checks) {
  for (const auto& c : checks) {
    INFO(c.group << " / " << c.name << " value " << c.value << " " << c.note);
    CHECK(c.pass);
  }
}

// Permutation matrix of h -> g h g^-1 on C[G].
Mat conjugation(const FiniteGroupTable& g, int x) {
  Mat a = Mat::Zero(g.order, g.order);
  for (int h = 0; h < g.order; ++h) a(g.mul(g.mul(x, h), g.inverse[x]), h) = 1.0;
  return a;
}

struct Built {
  QuantumGroupModel m;
  ModularSuite s;
};

Built build(const QuantumGroupPresentation& p) {
  Built b{build_model(p), {}};
  b.s = build_modular_suite(b.m);
  return b;
}

}  // namespace

TEST_CASE("catalogue has the fixed entry list") {
  const auto& names = mnw_catalogue();
  CHECK(names.size() == 17);
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
  CHECK(names.front() == "coassociativity");
}

TEST_CASE("C[S3]: complete report, everything passes, mu = nu = 1") {
  MnwReport r = run_mnw(group_algebra(symmetric_group(3)));
  REQUIRE(r.axioms.size() == mnw_catalogue().size());
  for (size_t i = 0; i < r.axioms.size(); ++i) CHECK(r.axioms[i].name == mnw_catalogue()[i]);
  require_all_pass(r.axioms);
  require_all_pass(r.suites);
  CHECK(r.pass());
  CHECK(std::abs(r.mu - cplx(1.0)) <= 1e-10);
  CHECK(std::abs(r.nu - 1.0) <= 1e-10);
  REQUIRE(r.grouplikes.size() == 1);
  CHECK(r.grouplikes[0].lambda == doctest::Approx(1.0));
  const Check* cav = find_check(r.axioms, "tau_invariance_caveat");
  REQUIRE(cav != nullptr);
  CHECK(!cav->note.empty());
}

TEST_CASE("D(S3): all axiom entries pass") {
  MnwOptions opt;
  opt.engine_suites = false;
  MnwReport r = run_mnw(drinfeld_double(symmetric_group(3)), opt);
  require_all_pass(r.axioms);
}

TEST_CASE("corrupted involution: KMS entry fails and the report is still emitted") {
  auto p = group_algebra(symmetric_group(3));
  p.algebra.involution(0, 1) += 0.1;
  MnwReport r;
  REQUIRE_NOTHROW(r = run_mnw(p));
  REQUIRE(r.axioms.size() == mnw_catalogue().size());
  const Check* kms = find_check(r.axioms, "kms_condition");
  REQUIRE(kms != nullptr);
  CHECK(!kms->pass);
  CHECK(!r.pass());
}

TEST_CASE("automorphism analysis on C[S3]") {
  auto g = symmetric_group(3);
  Built b = build(group_algebra(g));
  Mat id = Mat::Identity(6, 6);
  AutomorphismResult triv = automorphism_analysis(b.m, b.s, id, id);
  CHECK(triv.r == doctest::Approx(1.0));
  require_all_pass(triv.checks);

  Mat ad = conjugation(g, 1);
  AutomorphismResult inner = automorphism_analysis(b.m, b.s, ad, ad);
  CHECK(inner.r == doctest::Approx(1.0));
  require_all_pass(inner.checks);

  // Inner automorphism by a random unitary element (Cayley transform of a self-adjoint one).
  const auto& alg = b.m.pres.algebra;
  Rng rng(5);
  Vec x = rng.cvec(6);
  Vec h = x + star(alg, x);
  Vec w = product(alg, h - cplx(0.0, 1.0) * alg.unit, inverse(alg, h + cplx(0.0, 1.0) * alg.unit));
  Mat random(6, 6);
  for (int j = 0; j < 6; ++j) random.col(j) = product(alg, product(alg, w, basis_vector(6, j)), star(alg, w));
  auto code = [&] {
    try {
      automorphism_analysis(b.m, b.s, random, random);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Schema;
  }();
  CHECK(code == ErrorCode::PreconditionFailed);
}

TEST_CASE("grouplike analysis on C[S3]") {
  Built b = build(group_algebra(symmetric_group(3)));
  GrouplikeResult one = grouplike_analysis(b.m, b.s, basis_vector(6, 0));
  CHECK(one.exact);
  CHECK(one.lambda == doctest::Approx(1.0));
  require_all_pass(one.checks);

  GrouplikeResult g = grouplike_analysis(b.m, b.s, basis_vector(6, 3));
  CHECK(g.exact);
  CHECK(g.lambda == doctest::Approx(1.0));
  CHECK(find_check(g.checks, "R_u") != nullptr);
  require_all_pass(g.checks);

  Vec mix = (basis_vector(6, 1) + basis_vector(6, 2)) / std::sqrt(2.0);
  CHECK_THROWS_AS(grouplike_analysis(b.m, b.s, mix), Error);
}

TEST_CASE("grouplike analysis on F(S3): characters are not grouplike, 1 is") {
  Built b = build(function_algebra(symmetric_group(3)));
  Vec one = b.m.pres.algebra.unit;
  GrouplikeResult r = grouplike_analysis(b.m, b.s, one);
  CHECK(r.lambda == doctest::Approx(1.0));
  CHECK_THROWS_AS(grouplike_analysis(b.m, b.s, basis_vector(6, 0)), Error);
}

TEST_CASE("block engine: axiom report and u = delta^{i} at q = 1/2") {
  BlockQuantumGroup g(0.5);
  BlockOptions opt;
  opt.samples = 10;
  MnwReport r = run_mnw_blocks(g, 2, opt);
  REQUIRE(r.axioms.size() == mnw_catalogue().size());
  require_all_pass(r.axioms);
  REQUIRE(r.grouplikes.size() == 1);
  const auto& u = r.grouplikes[0];
  CHECK(u.exact);
  CHECK(std::abs(u.lambda - 1.0 / r.nu) <= 1e-8);
  require_all_pass(u.checks);
  CHECK(names_of(r.suites).count("delta_nontrivial") == 1);
}
