#include "doctest.h"
#include "rqa/gf.hpp"
#include "rqa/hseries.hpp"
#include "rqa/trunc_poly.hpp"

using namespace rqa;

namespace {

Gf naive_pow(Gf a, int e) {
  Gf r(1, a.p);
  for (int k = 0; k < e; ++k) r *= a;
  return r;
}

}  // namespace

TEST_CASE("gf_pow basics and Fermat") {
  CHECK(gf_pow(Gf(2, 3), 3) == Gf(2, 3));
  CHECK(gf_pow(Gf(0, 5), 5) == Gf(0, 5));
  CHECK(gf_pow(Gf(2, 5), 4) == naive_pow(Gf(2, 5), 4));
  CHECK(gf_pow(Gf(2, 5), 4) == Gf(1, 5));
  for (int p : {3, 5})
    for (int a = 0; a < p; ++a)
      for (int e = 0; e <= 2 * p; ++e) CHECK(gf_pow(Gf(a, p), e) == naive_pow(Gf(a, p), e));
}

TEST_CASE("GF(p) field axioms, exhaustive for p in {3,5}") {
  for (int p : {3, 5}) {
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) {
        Gf x(a, p), y(b, p);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK(x + (-x) == Gf(0, p));
        if (!y.is_zero()) CHECK(y * gf_inv(y) == Gf(1, p));
        for (int c = 0; c < p; ++c) {
          Gf z(c, p);
          CHECK((x + y) + z == x + (y + z));
          CHECK((x * y) * z == x * (y * z));
          CHECK(x * (y + z) == x * y + x * z);
        }
      }
  }
}

TEST_CASE("hseries divide_exact") {
  const int p = 3, N = 5;
  SUBCASE("h^2 / h^2 = 1 at truncation N-2") {
    HS a = hs_h(p, N, 2);
    HS b = a.divide_exact(2);
    CHECK(b.trunc() == N - 2);
    CHECK(b == hs_const(1, p, N - 2));
  }
  SUBCASE("nonzero constant term refuses division") {
    HS a = hs_const(1, p, N) + hs_h(p, N);
    CHECK_THROWS_WITH_AS(a.divide_exact(1), doctest::Contains("NotDivisible"), Error);
  }
  SUBCASE("3h^3 + h^4 over GF(5), k = 3") {
    const int q = 5, M = 8;
    HS a({Gf(0, q), Gf(0, q), Gf(0, q), Gf(3, q), Gf(1, q)}, M);
    HS b = a.divide_exact(3);
    CHECK(b == HS({Gf(3, q), Gf(1, q)}, M - 3));
    // multiply-back oracle
    CHECK(b.shifted(3) == a);
  }
}

TEST_CASE("hseries shift/divide round trip for all k < N") {
  const int p = 5, N = 7;
  HS a = hs_const(2, p, N) + hs_h(p, N) + hs_h(p, N, 3).truncated(N);
  for (int k = 0; k < N; ++k) {
    HS shifted = a.shifted(k).truncated(a.trunc());
    CHECK(shifted.divide_exact(k) == a.truncated(N - k));
  }
}

TEST_CASE("frobenius_coefficientwise") {
  const int p = 3, N = 5;
  SUBCASE("GF(p) scalars are fixed") {
    HS s({Gf(1, p), Gf(2, p)}, N);  // 1 + 2h
    CHECK(s.frobenius_coefficientwise() == s);
  }
  SUBCASE("truncated-polynomial coefficients get their ring p-th power") {
    auto B = RingDesc::truncated(p, N, {"x1"});
    TruncPoly x = TruncPoly::variable(B, 0);
    TruncPoly one = TruncPoly::constant(B, 1);
    using HSB = HSeries<TruncPoly>;
    HSB xs(x, N);
    CHECK(xs.frobenius_coefficientwise().is_zero());  // x^p = 0
    HSB us(one + x, N);
    HSB expect(one, N);
    // oracle: expand (1+x)^3 in k[x]/(x^3)
    TruncPoly cube = (one + x) * (one + x) * (one + x);
    CHECK(cube == one);
    CHECK(us.frobenius_coefficientwise() == expect);
  }
}

TEST_CASE("frobenius is additive on B = k[x]/(x^3), exhaustive") {
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1"});
  std::vector<TruncPoly> all;
  for (int c0 = 0; c0 < p; ++c0)
    for (int c1 = 0; c1 < p; ++c1)
      for (int c2 = 0; c2 < p; ++c2) {
        TruncPoly f = TruncPoly::constant(B, c0);
        f += TruncPoly::variable(B, 0).scaled(Gf(c1, p));
        f += TruncPoly::monomial(B, {2}, hs_const(c2, p, N));
        all.push_back(f);
      }
  for (const auto& f : all)
    for (const auto& g : all) {
      CHECK((f + g).pth_power() == f.pth_power() + g.pth_power());
      CHECK((f * g).pth_power() == f.pth_power() * g.pth_power());
    }
}
