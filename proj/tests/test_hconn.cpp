#include "doctest.h"
#include "helpers.hpp"
#include "rqa/hconn.hpp"

using namespace rqa;
using rqa::testing::all_hfree_polys;
using rqa::testing::all_hfree_units;
using rqa::testing::rand_closed_one_form;

namespace {

HConnection running_example(int N = 5) {
  // alpha = x1^3 x2^2 dx2 at p = 3
  auto B = HConnection::curvature_base(3, N, {"x1", "x2"}, 5);
  DiffForm alpha(B, 1);
  alpha.set_comp({1}, TruncPoly::monomial(B, {3, 2}, hs_const(1, 3, N)));
  return HConnection(B, alpha);
}

}  // namespace

TEST_CASE("p-curvature") {
  const int p = 3, N = 5;
  SUBCASE("flat trivial connection") {
    auto B = RingDesc::truncated(p, N, {"x1"});
    HConnection conn(B, DiffForm(B, 1));
    CHECK(p_curvature(conn, 0).is_zero());
  }
  SUBCASE("the running example") {
    HConnection conn = running_example();
    TruncPoly curv = p_curvature(conn, 1);
    RingPtr wide = curv.ring();
    TruncPoly expect = (TruncPoly::monomial(wide, {9, 6}, hs_const(1, p, N)) -
                        TruncPoly::monomial(wide, {3, 0}, hs_const(1, p, N)))
                           .scaled(hs_h(p, N, p));
    CHECK(curv == expect);
    CHECK(p_curvature(conn, 0).is_zero());
  }
  SUBCASE("logarithmic forms are flat") {
    auto B = RingDesc::truncated(p, N, {"x1"});
    TruncPoly u = TruncPoly::constant(B, 1) + TruncPoly::variable(B, 0);
    DiffForm alpha(B, 1);
    alpha.set_comp({0}, dlog_components(u)[0]);
    HConnection conn(B, alpha);
    CHECK(p_curvature(conn, 0).is_zero());
  }
  SUBCASE("Euler field with its supplied operator power: dlog x is flat") {
    auto L = RingDesc::windowed(p, N, {"x1"}, 3)->localized({0}, 1);
    DiffForm alpha(L, 1);
    alpha.set_comp({0}, TruncPoly::monomial(L, {-1}, hs_const(1, p, N)));
    HConnection conn(L, alpha);
    Derivation euler = Derivation::zero(L);
    euler.comps[0] = TruncPoly::variable(L, 0);
    // alpha(euler)^p + euler^(p-1) alpha(euler) - alpha(euler^[p]) = 1 + 0 - 1
    TruncPoly curv = p_curvature(conn, euler, euler);
    CHECK(curv.vanishes());
  }
  SUBCASE("two-route agreement on random closed connections") {
    for (int p2 : {3, 5}) {
      const int N2 = p2 + 2;
      Rng rng(500 + p2);
      for (int n : {1, 2}) {
        std::vector<std::string> names;
        for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
        auto B = RingDesc::truncated(p2, N2, names);
        for (int t = 0; t < 10; ++t) {
          HConnection conn(B, rand_closed_one_form(rng, B, 2));
          for (int i = 0; i < n; ++i) p_curvature(conn, i);  // asserts internally
        }
      }
    }
  }
}

TEST_CASE("p-support") {
  const int p = 3;
  SUBCASE("zero section") {
    auto B = RingDesc::truncated(p, 5, {"x1"});
    HConnection conn(B, DiffForm(B, 1));
    PSupportIdeal s = p_support(conn);
    REQUIRE(s.generators.size() == 1);
    CHECK(s.generators[0] == TruncPoly::variable(s.chart, 1));
    CHECK(s.trivial_mod_hp);
  }
  SUBCASE("the running example reproduces the known support") {
    PSupportIdeal s = p_support(running_example());
    REQUIRE(s.generators.size() == 2);
    CHECK(s.generators[0] == TruncPoly::variable(s.chart, 2));  // xi1'
    // xi2' - h^3((x1')^3 (x2')^2 - x1')
    TruncPoly kappa = TruncPoly::monomial(s.chart, {3, 2, 0, 0}, hs_const(1, p, 5)) -
                      TruncPoly::variable(s.chart, 0);
    TruncPoly expect = TruncPoly::variable(s.chart, 3) - kappa.scaled(hs_h(p, 5, p));
    CHECK(s.generators[1] == expect);
  }
  SUBCASE("h-weight bookkeeping for alpha = h dx1") {
    const int N = 8;
    auto B = RingDesc::truncated(p, N, {"x1"});
    DiffForm alpha(B, 1);
    alpha.set_comp({0}, TruncPoly::constant(B, hs_h(p, N)));
    HConnection conn(B, alpha);
    PSupportIdeal s = p_support(conn);
    // curvature = h^p ((h)^p + 0) = h^(2p); kappa = h^p
    TruncPoly expect = TruncPoly::variable(s.chart, 1) -
                       TruncPoly::constant(s.chart, hs_h(p, N, p)).scaled(hs_h(p, N, p));
    CHECK(s.generators[0] == expect);
  }
  SUBCASE("deformation terms are divisible by h^p on sampled connections") {
    Rng rng(40);
    for (int p2 : {3, 5}) {
      auto B = RingDesc::truncated(p2, p2 + 2, {"x1", "x2"});
      for (int t = 0; t < 8; ++t) {
        HConnection conn(B, rand_closed_one_form(rng, B, 2));
        PSupportIdeal s = p_support(conn);  // divide_exact_h(p) inside
        CHECK(s.trivial_mod_hp);
      }
    }
  }
  SUBCASE("isomorphic connections share their p-support") {
    auto B = RingDesc::truncated(p, 5, {"x1", "x2"});
    Rng rng(41);
    DiffForm alpha = rand_closed_one_form(rng, B);
    TruncPoly u = TruncPoly::constant(B, 1) + TruncPoly::variable(B, 0) +
                  TruncPoly::variable(B, 1).scaled(Gf(2, p));
    DiffForm dlogu(B, 1);
    auto dl = dlog_components(u);
    for (int i = 0; i < 2; ++i) dlogu.set_comp({i}, dl[i]);
    PSupportIdeal s1 = p_support(HConnection(B, alpha));
    PSupportIdeal s2 = p_support(HConnection(B, alpha + dlogu));
    for (size_t i = 0; i < s1.generators.size(); ++i)
      CHECK(s1.generators[i] == s2.generators[i]);
  }
}

TEST_CASE("theta extraction") {
  const int p = 3;
  SUBCASE("zero section gives zero") {
    auto B = RingDesc::truncated(p, 5, {"x1"});
    HConnection conn(B, DiffForm(B, 1));
    CHECK(extract_theta(p_support(conn)).is_zero());
  }
  SUBCASE("the running example") {
    PSupportIdeal s = p_support(running_example());
    DiffForm theta = extract_theta(s);
    const RingPtr& T = theta.ring();
    TruncPoly expect = TruncPoly::monomial(T, {3, 2}, hs_const(1, p, 5)) -
                       TruncPoly::variable(T, 0);
    CHECK(theta.comp({1}) == expect);
    CHECK(theta.comp({0}).is_zero());
  }
}

TEST_CASE("classification of local quantizations") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1"});
  TruncPoly one = TruncPoly::constant(B, 1);
  TruncPoly x = TruncPoly::variable(B, 0);

  SUBCASE("trivial connection is standard") {
    QuantizationClass c = classify_quantization(HConnection(B, DiffForm(B, 1)));
    CHECK(c.logarithmic);
    REQUIRE(c.witness.has_value());
    CHECK(d(DiffForm::function(B, *c.witness)).is_zero());
  }
  SUBCASE("dlog(1+x) is isomorphic to the standard module") {
    DiffForm alpha(B, 1);
    alpha.set_comp({0}, dlog_components(one + x)[0]);
    QuantizationClass c = classify_quantization(HConnection(B, alpha));
    CHECK(c.logarithmic);
    REQUIRE(c.witness.has_value());
    // round trip dg = g alpha
    CHECK(d(DiffForm::function(B, *c.witness)) == alpha.scaled(*c.witness));
    REQUIRE(c.isomorphism_to_standard.has_value());
    CHECK(*c.witness * *c.isomorphism_to_standard == one);
  }
  SUBCASE("dx1 is a distinct class") {
    QuantizationClass c = classify_quantization(HConnection(B, DiffForm::d_coordinate(B, 0)));
    CHECK(!c.logarithmic);
    CHECK(!c.witness.has_value());
  }
  SUBCASE("the isomorphism partition matches the dlog orbit partition") {
    // light version of the full enumeration: spot-check orbit membership
    auto units = all_hfree_units(B);
    Rng rng(90);
    auto polys = all_hfree_polys(B);
    for (int t = 0; t < 8; ++t) {
      DiffForm a(B, 1), b(B, 1);
      a.set_comp({0}, polys[rng.uniform(0, 26)]);
      b.set_comp({0}, polys[rng.uniform(0, 26)]);
      bool iso = isomorphic_connections(HConnection(B, a), HConnection(B, b));
      bool orbit = false;
      for (const auto& u : units) {
        DiffForm shift(B, 1);
        shift.set_comp({0}, dlog_components(u)[0]);
        if (a + shift == b || (a + shift).agrees_with(b)) orbit = true;
      }
      CHECK(iso == orbit);
    }
  }
}
