#include <doctest.h>

#include "aqg/linalg.hpp"

using namespace aqg;

TEST_CASE("kron helpers agree with the explicit Kronecker product") {
  Rng rng(1);
  Mat a = rng.cmat(3, 3), b = rng.cmat(4, 4), x = rng.cmat(12, 5);
  Mat k = kron(a, b);
  CHECK((kron_apply(a, b, x) - k * x).norm() < 1e-12);
  Mat y = rng.cmat(5, 12);
  CHECK((kron_apply_right(y, a, b) - y * k).norm() < 1e-12);
  Vec v = rng.cvec(12);
  CHECK((apply_leg1(a, v, 4) - kron(a, Mat(Mat::Identity(4, 4))) * v).norm() < 1e-12);
  CHECK((apply_leg2(b, v, 3) - kron(Mat(Mat::Identity(3, 3)), b) * v).norm() < 1e-12);
}

TEST_CASE("realign sends a (x) b to vec(a) vec(b)^T") {
  Rng rng(2);
  Mat a = rng.cmat(2, 2), b = rng.cmat(3, 3);
  Mat r = realign(kron(a, b), 2, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) CHECK(std::abs(r(i * 2 + j, k * 3 + l) - a(i, j) * b(k, l)) < 1e-14);
  CHECK((unrealign(r, 2, 3) - kron(a, b)).norm() < 1e-14);
}

TEST_CASE("flip swaps tensor legs") {
  Rng rng(3);
  Vec a = rng.cvec(2), b = rng.cvec(3);
  CHECK((flip(kron(a, b), 2, 3) - kron(b, a)).norm() < 1e-14);
}

TEST_CASE("antilinear composition bookkeeping") {
  Rng rng(4);
  AntiLinOp a{rng.cmat(4, 4)}, b{rng.cmat(4, 4)};
  Vec v = rng.cvec(4), w = rng.cvec(4);
  CHECK((compose(a, b) * v - a(b(v))).norm() < 1e-12);
  CHECK((compose(a, a) * v - a(a(v))).norm() < 1e-12);
  Mat l = rng.cmat(4, 4);
  CHECK((compose(a, l)(v) - a(l * v)).norm() < 1e-12);
  CHECK((compose(l, a)(v) - l * a(v)).norm() < 1e-12);
  // <A v, w> = <A* w, v>
  cplx lhs = w.dot(a(v));
  cplx rhs = v.dot(a.adjoint()(w));
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("antilinear polar decomposition") {
  Rng rng(5);
  AntiLinOp g{rng.cmat(5, 5)};
  AntiPolar pd = polar(g);
  Mat root = pd.square.pow(0.5);
  CHECK((compose(pd.unitary, root).m - g.m).norm() < 1e-10);
  Mat uu = compose(pd.unitary.adjoint(), pd.unitary);
  CHECK((uu - Mat::Identity(5, 5)).norm() < 1e-10);
}

TEST_CASE("functional calculus group law") {
  Rng rng(6);
  Mat x = rng.cmat(6, 6);
  Mat pd = x * x.adjoint() + Mat::Identity(6, 6);
  PositiveOp op(pd);
  CHECK((op.pow(0.0) - Mat::Identity(6, 6)).norm() < 1e-12);
  Mat half = op.pow(0.5);
  CHECK((half * half - pd).norm() < 1e-10);
  const cplx exps[] = {-1.0, -0.5, 0.5, 1.0, cplx(0.0, 1.0)};
  for (cplx s : exps)
    for (cplx t : exps) CHECK((op.pow(s) * op.pow(t) - op.pow(s + t)).norm() < 1e-9);
  Mat u = op.it(0.7);
  CHECK((u * u.adjoint() - Mat::Identity(6, 6)).norm() < 1e-12);
  PositiveOp one(Mat::Identity(3, 3));
  CHECK((one.it(2.5) - Mat::Identity(3, 3)).norm() < 1e-14);
  Mat neg = -pd;
  CHECK_THROWS_AS(PositiveOp{neg}, Error);
}

TEST_CASE("null space and rank") {
  Mat m(2, 3);
  m << 1, 0, 0, 0, 1, 0;
  Mat ns = null_space(m, 1e-12);
  REQUIRE(ns.cols() == 1);
  CHECK(std::abs(std::abs(ns(2, 0)) - 1.0) < 1e-12);
  CHECK(numerical_rank(m, 1e-12) == 2);
}
