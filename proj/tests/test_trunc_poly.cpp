#include "doctest.h"
#include "helpers.hpp"
#include "rqa/trunc_poly.hpp"

using namespace rqa;

TEST_CASE("truncated ring arithmetic") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1", "x2"});
  TruncPoly x1 = TruncPoly::variable(B, 0);
  TruncPoly x2 = TruncPoly::variable(B, 1);

  CHECK((x1 * x1 * x1).is_zero());
  CHECK(x1 * x2 == x2 * x1);
  TruncPoly f = (TruncPoly::constant(B, 1) + x1) * (TruncPoly::constant(B, 1) - x1);
  CHECK(f == TruncPoly::constant(B, 1) - x1 * x1);
  CHECK(f.derivative(0) == x1.scaled(Gf(-2, p)));
}

TEST_CASE("localized window arithmetic") {
  const int p = 3, N = 5;
  auto R = RingDesc::windowed(p, N, {"x1"}, 6)->localized({0}, 3);
  TruncPoly xinv = TruncPoly::monomial(R, {-1}, hs_const(1, p, N));
  TruncPoly x = TruncPoly::variable(R, 0);
  CHECK(x * xinv == TruncPoly::constant(R, 1));
  CHECK(xinv.derivative(0) == TruncPoly::monomial(R, {-2}, hs_const(-1, p, N)));
  CHECK_THROWS_AS(xinv * xinv * xinv * xinv, Error);  // escapes the pole window
}

TEST_CASE("pth_power is the freshman's dream") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1", "x2"});
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    TruncPoly f = testing::rand_poly(rng, B, 2);
    TruncPoly g = testing::rand_poly(rng, B, 2);
    CHECK((f + g).pth_power() == f.pth_power() + g.pth_power());
    CHECK(f.pth_power() == f * f * f);
  }
}

TEST_CASE("unit inversion") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1"});
  TruncPoly one = TruncPoly::constant(B, 1);
  TruncPoly x = TruncPoly::variable(B, 0);

  TruncPoly u = one + x + x * x.scaled(Gf(2, p));
  CHECK(u * u.invert_unit() == one);
  CHECK_THROWS_WITH_AS(x.invert_unit(), doctest::Contains("NotUnit"), Error);

  // h is nilpotent: 1 - h is a unit, h alone is not.
  TruncPoly h = TruncPoly::constant(B, hs_h(p, N));
  CHECK((one - h) * (one - h).invert_unit() == one);
  CHECK_THROWS_AS(h.invert_unit(), Error);

  // Laurent monomials invert in a localized window.
  auto L = RingDesc::windowed(p, N, {"x1"}, 3)->localized({0}, 3);
  TruncPoly xm = TruncPoly::variable(L, 0, 2);
  CHECK(xm * xm.invert_unit() == TruncPoly::constant(L, 1));
  // x + x^2 = x(1 + x): tail not nilpotent in a window ring
  TruncPoly v = TruncPoly::variable(L, 0) + TruncPoly::variable(L, 0, 2);
  CHECK_THROWS_WITH_AS(v.invert_unit(), doctest::Contains("NotUnit"), Error);
}

TEST_CASE("frobenius embedding and p-th root extraction") {
  const int p = 3, N = 5;
  auto W = RingDesc::windowed(p, N, {"x1", "x2"}, 9);
  auto T = W->twisted();
  CHECK(T->vars[0].name == "x1'");
  TruncPoly f = TruncPoly::monomial(W, {6, 3}, hs_const(2, p, N)) +
                TruncPoly::monomial(W, {3, 0}, hs_const(1, p, N));
  TruncPoly r = f.untwist_root(T);
  CHECK(r == TruncPoly::monomial(T, {2, 1}, hs_const(2, p, N)) +
                 TruncPoly::monomial(T, {1, 0}, hs_const(1, p, N)));
  CHECK(r.frobenius_embed_into(W) == f);
  TruncPoly bad = TruncPoly::monomial(W, {4, 3}, hs_const(1, p, N));
  CHECK_THROWS_WITH_AS(bad.untwist_root(T), doctest::Contains("NotPthPower"), Error);
}

TEST_CASE("substitution") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1", "x2"});
  auto C = RingDesc::truncated(p, N, {"z1"});
  TruncPoly z = TruncPoly::variable(C, 0);
  TruncPoly f = TruncPoly::variable(B, 0) * TruncPoly::variable(B, 1) +
                TruncPoly::variable(B, 0);
  TruncPoly g = f.substitute({z, z + TruncPoly::constant(C, 1)}, C);
  CHECK(g == z * z + z + z);  // z(z+1) + z
}
