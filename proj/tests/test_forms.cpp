#include "doctest.h"
#include "helpers.hpp"
#include "rqa/cartier.hpp"

using namespace rqa;
using rqa::testing::all_hfree_polys;
using rqa::testing::all_hfree_units;
using rqa::testing::rand_closed_one_form;
using rqa::testing::rand_one_form;
using rqa::testing::rand_poly;

namespace {

DiffForm dx(const RingPtr& R, int i) { return DiffForm::d_coordinate(R, i); }

}  // namespace

TEST_CASE("exterior derivative") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1", "x2"});
  TruncPoly x1 = TruncPoly::variable(B, 0), x2 = TruncPoly::variable(B, 1);

  SUBCASE("Leibniz on x1*x2") {
    DiffForm df = d(DiffForm::function(B, x1 * x2));
    DiffForm expect = dx(B, 0).scaled(Gf(1, p));
    expect.set_comp({0}, x2);
    expect.set_comp({1}, x1);
    CHECK(df == expect);
  }
  SUBCASE("top degree in one variable dies") {
    auto B1 = RingDesc::truncated(p, N, {"x1"});
    DiffForm a(B1, 1);
    a.set_comp({0}, TruncPoly::variable(B1, 0, p - 1));
    CHECK(d(a).is_zero());
  }
  SUBCASE("d(sum y_i dx_i) = sum dy_i ^ dx_i over A0, n = 2") {
    auto A0 = RingDesc::truncated(p, N, {"x1", "x2", "y1", "y2"});
    DiffForm eta(A0, 1);
    eta.set_comp({0}, TruncPoly::variable(A0, 2));
    eta.set_comp({1}, TruncPoly::variable(A0, 3));
    DiffForm omega(A0, 2);
    omega.accumulate({2, 0}, TruncPoly::constant(A0, 1));
    omega.accumulate({3, 1}, TruncPoly::constant(A0, 1));
    CHECK(d(eta) == omega);
  }
}

TEST_CASE("contraction") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1", "x2"});
  TruncPoly x1 = TruncPoly::variable(B, 0), x2 = TruncPoly::variable(B, 1);

  CHECK(contract(Derivation::coordinate(B, 0), dx(B, 0)).scalar() ==
        TruncPoly::constant(B, 1));
  DiffForm vol = wedge(dx(B, 0), dx(B, 1));
  DiffForm c = contract(Derivation::coordinate(B, 1), vol);
  CHECK(c == -dx(B, 0));

  Derivation x1d1 = Derivation::zero(B);
  x1d1.comps[0] = x1;
  DiffForm a(B, 1);
  a.set_comp({0}, x2);
  a.set_comp({1}, x1);
  CHECK(contract(x1d1, a).scalar() == x1 * x2);
}

TEST_CASE("lie derivative") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1", "x2"});
  TruncPoly x1 = TruncPoly::variable(B, 0);

  DiffForm x1dx1(B, 1);
  x1dx1.set_comp({0}, x1);
  CHECK(lie_derivative(Derivation::coordinate(B, 0), x1dx1) == dx(B, 0));
  CHECK(lie_derivative(Derivation::coordinate(B, 0), dx(B, 1)).is_zero());

  Derivation x1d1 = Derivation::zero(B);
  x1d1.comps[0] = x1;
  CHECK(lie_derivative(x1d1, x1dx1) == x1dx1.scaled(Gf(2, p)));
}

TEST_CASE("d o d = 0 and Cartan formula, sampled") {
  for (int p : {3, 5}) {
    const int N = p + 2;
    Rng rng(42 + p);
    for (int n : {1, 2}) {
      std::vector<std::string> names;
      for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
      auto B = RingDesc::truncated(p, N, names);
      for (int t = 0; t < 100; ++t) {
        TruncPoly f = rand_poly(rng, B, 2);
        CHECK(d(d(DiffForm::function(B, f))).is_zero());
        DiffForm a = rand_one_form(rng, B, 2);
        Derivation D = Derivation::zero(B);
        for (int i = 0; i < n; ++i) D.comps[i] = rand_poly(rng, B, 1, 1);
        DiffForm lhs = lie_derivative(D, a);
        DiffForm rhs = contract(D, d(a)) + d(contract(D, a));
        CHECK(lhs == rhs);
        TruncPoly g = rand_poly(rng, B, 2);
        CHECK(lie_derivative(D, DiffForm::function(B, g)) ==
              contract(D, d(DiffForm::function(B, g))));
      }
    }
  }
}

TEST_CASE("restricted contraction") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1"});
  Derivation d1 = Derivation::coordinate(B, 0);
  Derivation zero = Derivation::zero(B);

  CHECK(restricted_contract(d1, dx(B, 0), zero).scalar().is_zero());

  DiffForm a(B, 1);
  a.set_comp({0}, TruncPoly::variable(B, 0, p - 1));
  CHECK(restricted_contract(d1, a, zero).scalar() == TruncPoly::constant(B, 1));

  // Euler field on the localization, with its own p-th operator power.
  auto L = RingDesc::windowed(p, N, {"x1"}, 3)->localized({0}, 3);
  Derivation euler = Derivation::zero(L);
  euler.comps[0] = TruncPoly::variable(L, 0);
  CHECK(euler.operator_pth_power().comps[0] == euler.comps[0]);
  DiffForm dlogx(L, 1);
  dlogx.set_comp({0}, TruncPoly::monomial(L, {-1}, hs_const(1, p, N)));
  CHECK(restricted_contract(euler, dlogx, euler).scalar() == TruncPoly::constant(L, 1));
}

TEST_CASE("cartier on closed forms") {
  const int p = 3, N = 5;
  SUBCASE("C(x^(p-1) dx) = dx'") {
    auto B = RingDesc::truncated(p, N, {"x1"});
    DiffForm a(B, 1);
    a.set_comp({0}, TruncPoly::variable(B, 0, p - 1));
    DiffForm c = cartier(a);
    CHECK(c == dx(B->twisted(), 0));
  }
  SUBCASE("exact forms die") {
    auto B = RingDesc::truncated(p, N, {"x1", "x2"});
    CHECK(cartier(dx(B, 0)).is_zero());
    Rng rng(7);
    CHECK(cartier(d(DiffForm::function(B, rand_poly(rng, B)))).is_zero());
  }
  SUBCASE("C(dx/x) = dx'/x' on the localization") {
    auto L = RingDesc::windowed(p, N, {"x1"}, 3)->localized({0}, 3);
    DiffForm a(L, 1);
    a.set_comp({0}, TruncPoly::monomial(L, {-1}, hs_const(1, p, N)));
    DiffForm c = cartier(a);
    auto Lt = L->twisted();
    DiffForm expect(Lt, 1);
    expect.set_comp({0}, TruncPoly::monomial(Lt, {-1}, hs_const(1, p, N)));
    CHECK(c == expect);
  }
  SUBCASE("non-closed input is rejected") {
    auto B = RingDesc::truncated(p, N, {"x1", "x2"});
    DiffForm a(B, 1);
    a.set_comp({0}, TruncPoly::variable(B, 1));
    CHECK_THROWS_WITH_AS(cartier(a), doctest::Contains("NotClosed"), Error);
  }
}

TEST_CASE("solve_primitive") {
  const int p = 3, N = 5;
  auto B2 = RingDesc::truncated(p, N, {"x1", "x2"});
  SUBCASE("dx1 integrates to x1 up to a constant") {
    auto f = solve_primitive(dx(B2, 0));
    REQUIRE(f.has_value());
    CHECK(d(DiffForm::function(B2, *f)) == dx(B2, 0));
  }
  SUBCASE("x^(p-1) dx has no primitive") {
    auto B = RingDesc::truncated(p, N, {"x1"});
    DiffForm a(B, 1);
    a.set_comp({0}, TruncPoly::variable(B, 0, p - 1));
    CHECK(!solve_primitive(a).has_value());
  }
  SUBCASE("symmetric form") {
    DiffForm a(B2, 1);
    a.set_comp({0}, TruncPoly::variable(B2, 1));
    a.set_comp({1}, TruncPoly::variable(B2, 0));
    auto f = solve_primitive(a);
    REQUIRE(f.has_value());
    CHECK(d(DiffForm::function(B2, *f)) == a);
  }
}

TEST_CASE("solve_dlog") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1"});
  TruncPoly one = TruncPoly::constant(B, 1);
  TruncPoly x = TruncPoly::variable(B, 0);

  SUBCASE("alpha = 0 gives a constant") {
    DiffForm zero(B, 1);
    auto g = solve_dlog(zero);
    REQUIRE(g.has_value());
    CHECK(d(DiffForm::function(B, *g)).is_zero());
    g->invert_unit();  // must be a unit
  }
  SUBCASE("dlog(1+x) pulls back to 1+x up to scalar") {
    TruncPoly u = one + x;
    DiffForm a(B, 1);
    a.set_comp({0}, dlog_components(u)[0]);
    auto g = solve_dlog(a);
    REQUIRE(g.has_value());
    CHECK(d(DiffForm::function(B, *g)) == a.scaled(*g));  // dg = g*alpha
    // up to a series scalar the witness is 1+x
    TruncPoly ratio = *g * u.invert_unit();
    for (const auto& [m, c] : ratio.terms())
      CHECK(m == Mono{0});
  }
  SUBCASE("dx1 is not logarithmic over B: exhaustive unit scan") {
    CHECK(!solve_dlog(dx(B, 0)).has_value());
    for (const auto& u : all_hfree_units(B)) {
      auto dl = dlog_components(u);
      CHECK(!(dl[0] == one));  // no unit has dlog = dx1
    }
  }
}

TEST_CASE("log_defect") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1"});
  auto wide = B->widened(p);
  TruncPoly one = TruncPoly::constant(B, 1);
  TruncPoly x = TruncPoly::variable(B, 0);

  DiffForm dlog1px(B, 1);
  dlog1px.set_comp({0}, dlog_components(one + x)[0]);
  CHECK(log_defect(dlog1px)[0].is_zero());

  CHECK(log_defect(dx(B, 0))[0] == TruncPoly::constant(wide, 1));

  DiffForm top(B, 1);
  top.set_comp({0}, TruncPoly::variable(B, 0, p - 1));
  CHECK(log_defect(top)[0] == TruncPoly::constant(wide, -1 + p));
}

TEST_CASE("primitive solvability matches Cartier vanishing, exhaustive p=3 n=1") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1"});
  int solvable = 0;
  for (const auto& f : all_hfree_polys(B)) {  // all 27 one-forms f dx, all closed
    DiffForm a(B, 1);
    a.set_comp({0}, f);
    bool prim = solve_primitive(a).has_value();
    bool cz = cartier(a).is_zero();
    CHECK(prim == cz);
    if (prim) ++solvable;
  }
  CHECK(solvable == 9);  // the exact forms
}

TEST_CASE("dlog solvability matches vanishing log defect and the unit dlog image") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1"});
  // brute-force dlog image of the unit group
  std::vector<TruncPoly> image;
  for (const auto& u : all_hfree_units(B)) image.push_back(dlog_components(u)[0]);
  int hits = 0;
  for (const auto& f : all_hfree_polys(B)) {
    DiffForm a(B, 1);
    a.set_comp({0}, f);
    bool ok = solve_dlog(a).has_value();
    bool defect_zero = true;
    for (const auto& t : log_defect(a))
      if (!t.is_zero()) defect_zero = false;
    CHECK(ok == defect_zero);
    bool in_image = false;
    for (const auto& g : image)
      if (g == f) in_image = true;
    CHECK(ok == in_image);
    if (ok) ++hits;
  }
  CHECK(hits == 9);
}

TEST_CASE("Cartier commutes with restricted contraction by the Euler field") {
  // On the localized line the Euler field x d/dx is its own p-th operator
  // power, so both sides of the commutation law are computable for every
  // closed form in the window.
  const int p = 3, N = 5;
  auto L = RingDesc::windowed(p, N, {"x1"}, 3)->localized({0}, 3);
  // scratch ring with one extra order of window: the contraction i_euler
  // multiplies by x before the p-th root is taken
  auto S = RingDesc::windowed(p, N, {"x1"}, 4)->localized({0}, 4);
  auto St = S->twisted();
  auto Lt = L->twisted();
  Derivation euler = Derivation::zero(S);
  euler.comps[0] = TruncPoly::variable(S, 0);
  Derivation euler_t = Derivation::zero(St);
  euler_t.comps[0] = TruncPoly::variable(St, 0);
  REQUIRE(euler.operator_pth_power().comps[0] == euler.comps[0]);

  RingBasis basis(L);
  for (const auto& m : basis.monos) {
    DiffForm a(L, 1);
    a.set_comp({0}, TruncPoly::monomial(L, m, hs_const(1, p, N)));
    if (!closed_in_widened(a)) continue;
    DiffForm ca = cartier(a);
    TruncPoly lhs0 = restricted_contract(euler, a.reinterpret(S), euler).scalar();
    bool lhs_defined = true, rhs_defined = true;
    TruncPoly lhs, rhs;
    try {
      lhs = lhs0.untwist_root(St);
    } catch (const Error&) {
      lhs_defined = false;
    }
    try {
      rhs = contract(euler_t, ca.reinterpret(St)).scalar();
    } catch (const Error&) {
      rhs_defined = false;
    }
    CHECK(lhs_defined == rhs_defined);
    if (lhs_defined) CHECK(lhs == rhs);
  }
}

TEST_CASE("Cartier commutes with restricted contraction by coordinate fields") {
  for (int p : {3, 5}) {
    const int N = p + 2;
    Rng rng(101 + p);
    auto B = RingDesc::truncated(p, N, {"x1", "x2"});
    auto Bt = B->twisted();
    Derivation zero = Derivation::zero(B);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
      DiffForm a = rand_closed_one_form(rng, B);
      DiffForm ca = cartier(a);
      for (int i = 0; i < 2; ++i) {
        // lhs: p-th root of the 0-form i^[p]_d alpha; rhs: i_{d'} C(alpha)
        TruncPoly lhs0 = restricted_contract(Derivation::coordinate(B, i), a, zero).scalar();
        TruncPoly lhs = lhs0.untwist_root(Bt);
        TruncPoly rhs = contract(Derivation::coordinate(Bt, i), ca).scalar();
        CHECK(lhs == rhs);
        ++checked;
      }
    }
    CHECK(checked >= 100);
  }
}

