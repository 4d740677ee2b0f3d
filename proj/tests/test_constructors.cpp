#include <doctest.h>

#include "aqg/constructors.hpp"
#include "aqg/solvers.hpp"

using namespace aqg;

TEST_CASE("group tables") {
  auto s3 = symmetric_group(3);
  CHECK(s3.order == 6);
  CHECK_NOTHROW(validate_group(s3));
  CHECK_THROWS_AS(group_from_cayley({{0, 1}, {0, 1}}), Error);
  CHECK(direct_product(cyclic_group(2), cyclic_group(3)).order == 6);
}

TEST_CASE("constructor outputs pass the axioms at 1e-12") {
  for (const char* name : {"Z2", "Z3", "S3"}) {
    auto g = named_group(name);
    CHECK(all_pass(check_axioms(group_algebra(g), 1e-12)));
    CHECK(all_pass(check_axioms(function_algebra(g), 1e-12)));
    CHECK(all_pass(check_axioms(drinfeld_double(g), 1e-12)));
  }
}

TEST_CASE("commutativity flags") {
  auto s3 = symmetric_group(3);
  CHECK(is_cocommutative(group_algebra(s3), 0.0));
  CHECK_FALSE(is_commutative(group_algebra(s3).algebra, 0.0));
  CHECK(is_commutative(function_algebra(s3).algebra, 0.0));
  CHECK_FALSE(is_cocommutative(function_algebra(s3), 0.0));
  auto d = drinfeld_double(s3);
  CHECK_FALSE(is_commutative(d.algebra, 1e-12));
  CHECK_FALSE(is_cocommutative(d, 1e-12));
  auto d2 = drinfeld_double(cyclic_group(2));
  CHECK(d2.dim() == 4);
  CHECK(is_commutative(d2.algebra, 0.0));
  CHECK(is_cocommutative(d2, 0.0));
}

TEST_CASE("F(Z2) comultiplication") {
  auto p = function_algebra(cyclic_group(2));
  Vec expect = Vec::Zero(4);
  expect(0) = 1.0;  // d0 (x) d0
  expect(3) = 1.0;  // d1 (x) d1
  CHECK((p.comul.col(0) - expect).norm() == 0.0);
}

TEST_CASE("C[Z6] and C[Z2 x Z3] have matching Haar data under the canonical isomorphism") {
  auto z6 = cyclic_group(6);
  auto z23 = direct_product(cyclic_group(2), cyclic_group(3));
  HaarData h6 = solve_haar(group_algebra(z6));
  HaarData h23 = solve_haar(group_algebra(z23));
  // k in Z6 corresponds to (k mod 2, k mod 3), stored at (k % 2) * 3 + k % 3.
  for (int k = 0; k < 6; ++k) CHECK(std::abs(h6.phi(k) - h23.phi((k % 2) * 3 + k % 3)) < 1e-12);
}
