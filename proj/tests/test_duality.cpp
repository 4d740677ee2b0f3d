#include <doctest.h>

#include "aqg/constructors.hpp"
#include "aqg/duality.hpp"

using namespace aqg;

namespace {

Mat identity_pairing(int n) { return Mat::Identity(n, n); }

}  // namespace

TEST_CASE("dual of C[G] is F(G) and dual of F(G) is C[G] under the canonical pairing") {
  auto g = symmetric_group(3);
  auto cg = with_antipode(group_algebra(g));
  auto fg = with_antipode(function_algebra(g));

  auto dc = build_dual(cg, solve_haar(cg));
  CHECK(is_commutative(dc.pres.algebra, 1e-12));
  CHECK(!is_cocommutative(dc.pres, 1e-6));
  CHECK(hopf_morphism_residual(dc.pres, fg, pairing_isomorphism(dc, identity_pairing(6))) <= 1e-12);

  auto df = build_dual(fg, solve_haar(fg));
  CHECK(is_cocommutative(df.pres, 1e-12));
  CHECK(!is_commutative(df.pres.algebra, 1e-6));
  CHECK(hopf_morphism_residual(df.pres, cg, pairing_isomorphism(df, identity_pairing(6))) <= 1e-12);

  // The identity coordinate map is not a morphism C[S3] -> F(S3).
  CHECK(hopf_morphism_residual(cg, fg, Mat::Identity(6, 6)) >= 0.1);
}

TEST_CASE("basis of the dual of C[G] is e_g phi = delta_{g^-1}") {
  auto g = symmetric_group(3);
  auto cg = with_antipode(group_algebra(g));
  auto d = build_dual(cg, solve_haar(cg));
  for (int a = 0; a < 6; ++a) {
    RowVec expected = RowVec::Zero(6);
    expected(g.inverse[a]) = 1.0;
    CHECK(max_abs(d.functional(basis_vector(6, a)) - expected) < 1e-12);
  }
}

TEST_CASE("dual structure passes the axiom checks with a positive right Haar functional") {
  for (const auto& p : {group_algebra(symmetric_group(3)), drinfeld_double(symmetric_group(3))}) {
    auto q = with_antipode(p);
    auto d = build_dual(q, solve_haar(q));
    for (const auto& c : check_axioms(d.pres, 1e-9)) {
      INFO(c.name << " " << c.value);
      CHECK(c.pass);
    }
    CHECK(right_invariance_residual(d.pres, d.psi_hat) < 1e-10);
  }
}

TEST_CASE("biduality on D(S3)") {
  auto p = with_antipode(drinfeld_double(symmetric_group(3)));
  auto b = check_biduality(p, solve_haar(p), 1e-9);
  CHECK(b.residual <= 1e-9);
  CHECK(min_singular_value(b.evaluation) > 1e-6);
}

TEST_CASE("Plancherel identity") {
  auto p = with_antipode(function_algebra(symmetric_group(3)));
  auto h = solve_haar(p);
  auto d = build_dual(p, h);
  CHECK(plancherel_basis_residual(p, h, d) <= 1e-11);
  CHECK(plancherel_random_residual(p, h, d, 100, 3) <= 1e-10);
  Vec one = p.algebra.unit;
  const auto& da = d.pres.algebra;
  CHECK(std::abs((d.psi_hat * product(da, star(da, one), one))(0) - cplx(1.0)) < 1e-14);
}

TEST_CASE("C[Z2]: pi_hat is diagonal in the Lambda basis") {
  auto m = build_model(group_algebra(cyclic_group(2)));
  auto d = build_dual(m.pres, m.haar);
  auto r = build_dual_rep(m.gns, d);
  for (int g = 0; g < 2; ++g) {
    Mat expected = Mat::Zero(2, 2);
    expected(g, g) = 1.0;
    CHECK(max_abs(r.pi_hat[g] - expected) < 1e-12);
  }
}

TEST_CASE("triviality dimensions are one on the finite examples") {
  for (const auto& p : {group_algebra(cyclic_group(2)), group_algebra(symmetric_group(3)),
                        function_algebra(symmetric_group(3)), drinfeld_double(symmetric_group(3))}) {
    auto m = build_model(p);
    auto d = build_dual(m.pres, m.haar);
    auto t = triviality_dims(m, build_dual_rep(m.gns, d), 3, 11);
    CHECK(t.invariant_dim == 1);
    CHECK(t.intersection_dim == 1);
    CHECK(t.invariant_gap > 1e-6);
  }
}

TEST_CASE("C[Z2] has a four-dimensional operator space with one invariant direction") {
  auto m = build_model(group_algebra(cyclic_group(2)));
  auto d = build_dual(m.pres, m.haar);
  auto t = triviality_dims(m, build_dual_rep(m.gns, d), 3, 11);
  CHECK(t.invariant_dim == 1);
}

TEST_CASE("all duality checks pass, dense and matrix-free") {
  for (int threshold : {128, 0}) {
    for (const auto& p : {group_algebra(symmetric_group(3)), function_algebra(symmetric_group(3)),
                          drinfeld_double(cyclic_group(2))}) {
      GnsOptions opt;
      opt.dense_threshold = threshold;
      auto m = build_model(p, opt);
      for (const auto& c : check_duality(m, opt)) {
        INFO(threshold << " " << c.group << " / " << c.name << " " << c.value << " " << c.note);
        CHECK(c.pass);
      }
    }
  }
}
