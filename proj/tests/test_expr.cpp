#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "rqa/expr.hpp"

using namespace rqa;

TEST_CASE("polynomial parsing") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1", "x2"});
  TruncPoly x1 = TruncPoly::variable(B, 0), x2 = TruncPoly::variable(B, 1);

  CHECK(parse_poly("x1*x2 + 2", B) == x1 * x2 + TruncPoly::constant(B, 2));
  CHECK(parse_poly("x1^2 - x2", B) == x1 * x1 - x2);
  CHECK(parse_poly("(1 + x1)^2", B) ==
        (TruncPoly::constant(B, 1) + x1) * (TruncPoly::constant(B, 1) + x1));
  CHECK(parse_poly("h^2*x1", B) == x1.scaled(hs_h(p, N, 2)));
  CHECK(parse_poly("2x1", B) == x1.scaled(Gf(2, p)));  // juxtaposition

  CHECK_THROWS_WITH_AS(parse_poly("x1 + q", B), doctest::Contains("position"), Error);
  CHECK_THROWS_WITH_AS(parse_poly("x1 + ", B), doctest::Contains("ParseError"), Error);

  auto L = RingDesc::windowed(p, N, {"x1"}, 3)->localized({0}, 2);
  CHECK(parse_poly("x1^-1", L) == TruncPoly::monomial(L, {-1}, hs_const(1, p, N)));
}

TEST_CASE("form parsing") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1", "x2"});
  DiffForm a = parse_form("x1^2*x2^2 dx2", B);
  CHECK(a.degree() == 1);
  CHECK(a.comp({1}) == TruncPoly::monomial(B, {2, 2}, hs_const(1, p, N)));

  DiffForm ex = parse_form("d(x1*x2)", B);
  CHECK(ex == d(DiffForm::function(B, TruncPoly::variable(B, 0) * TruncPoly::variable(B, 1))));

  DiffForm w = parse_form("dx1^dx2", B);
  CHECK(w.degree() == 2);
  CHECK(w == wedge(DiffForm::d_coordinate(B, 0), DiffForm::d_coordinate(B, 1)));

  CHECK(parse_form("x2 dx1 + x1 dx2", B) ==
        parse_form("d(x1*x2)", B));
}

TEST_CASE("weyl parsing keeps the written order") {
  auto W = std::make_shared<WeylRing>(WeylRing{3, 1, 5});
  WeylElement yx = parse_weyl("y1*x1", W);
  CHECK(yx == WeylElement::y(W, 0) * WeylElement::x(W, 0));
  CHECK(parse_weyl("x1*y1 + h", W) == yx);  // the normal-ordered rewriting
  CHECK(parse_weyl("h", W) == WeylElement::h(W));
  CHECK(parse_weyl("(x1 + y1)^3", W) == (WeylElement::x(W, 0) + WeylElement::y(W, 0)).pow(3));
}

TEST_CASE("print/parse round trip is the identity") {
  const int p = 3, N = 5;
  Rng rng(314);
  auto B = RingDesc::truncated(p, N, {"x1", "x2"});
  for (int t = 0; t < 30; ++t) {
    TruncPoly f = rqa::testing::rand_poly(rng, B, 3);
    CHECK(parse_poly(f.str(), B) == f);
    DiffForm a = rqa::testing::rand_one_form(rng, B, 2);
    CHECK(parse_form(a.str(), B) == a);
  }
  auto W = std::make_shared<WeylRing>(WeylRing{3, 2, 5});
  for (int t = 0; t < 30; ++t) {
    WeylElement e = rqa::testing::rand_weyl(rng, W);
    CHECK(parse_weyl(e.str(), W) == e);
  }
  // localized coefficients and wedges
  auto L = RingDesc::windowed(p, N, {"x1"}, 3)->localized({0}, 2);
  DiffForm dl(L, 1);
  dl.set_comp({0}, TruncPoly::monomial(L, {-1}, hs_const(2, p, N)));
  CHECK(parse_form(dl.str(), L) == dl);
}
