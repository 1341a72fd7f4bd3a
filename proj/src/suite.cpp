#include "rqa/suite.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <sstream>

#include "rqa/atiyah.hpp"
#include "rqa/expr.hpp"
#include "rqa/hconn.hpp"
#include "rqa/ideal.hpp"
#include "rqa/sympgeo.hpp"
#include "rqa/weyl.hpp"

namespace rqa::suite {

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
  bool ok = true;
  std::ostringstream log;
  int checks = 0;

  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond) {
      ok = false;
      log << "FAILED: " << what << "; ";
    }
  }
};

TruncPoly rand_poly(Rng& rng, const RingPtr& R, int hdepth, int density) {
  RingBasis basis(R);
  TruncPoly f(R);
  for (int t = 0; t < density; ++t) {
    const Mono& m = basis.monos[rng.uniform(0, basis.dim() - 1)];
    std::vector<Gf> c(rng.uniform(1, hdepth));
    for (auto& g : c) g = Gf(rng.uniform(0, R->p - 1), R->p);
    f.add_term(m, HS(std::move(c), R->htrunc));
  }
  return f;
}

DiffForm rand_closed_one_form(Rng& rng, const RingPtr& R, int hdepth = 1) {
  DiffForm a = d(DiffForm::function(R, rand_poly(rng, R, hdepth, 3)));
  const int p = R->p;
  for (int i = 0; i < R->nvars(); ++i) {
    if (rng.uniform(0, 1) == 0) continue;
    Mono m(R->nvars(), 0);
    bool valid = true;
    for (int j = 0; j < R->nvars(); ++j) {
      const VarInfo& v = R->vars[j];
      int mult = rng.uniform(0, std::max(0, v.hi / p));
      m[j] = (j == i) ? p * std::min(mult, std::max(0, (v.hi - (p - 1)) / p)) + (p - 1)
                      : p * mult;
      if (m[j] > v.hi || m[j] < v.lo) valid = false;
    }
    if (!valid) continue;
    std::vector<Gf> c(rng.uniform(1, hdepth));
    for (auto& g : c) g = Gf(rng.uniform(0, p - 1), p);
    DiffForm piece(R, 1);
    piece.set_comp({i}, TruncPoly::monomial(R, m, HS(std::move(c), R->htrunc)));
    a += piece;
  }
  return a;
}

WeylElement rand_weyl(Rng& rng, const WeylPtr& W, int density = 3, int hdepth = 2) {
  WeylElement e(W);
  for (int t = 0; t < density; ++t) {
    Mono m(2 * W->n);
    for (auto& v : m) v = rng.uniform(0, W->p - 1);
    std::vector<Gf> c(rng.uniform(1, hdepth));
    for (auto& g : c) g = Gf(rng.uniform(0, W->p - 1), W->p);
    e.add_term(std::move(m), HS(std::move(c), W->N));
  }
  return e;
}

std::vector<TruncPoly> all_hfree_polys(const RingPtr& R) {
  RingBasis basis(R);
  std::vector<TruncPoly> out;
  long total = 1;
  for (int k = 0; k < basis.dim(); ++k) total *= R->p;
  for (long code = 0; code < total; ++code) {
    TruncPoly f(R);
    long c = code;
    for (int k = 0; k < basis.dim(); ++k) {
      int digit = static_cast<int>(c % R->p);
      c /= R->p;
      if (digit) f.add_term(basis.monos[k], hs_const(digit, R->p, R->htrunc));
    }
    out.push_back(f);
  }
  return out;
}

std::vector<TruncPoly> all_hfree_units(const RingPtr& R) {
  std::vector<TruncPoly> out;
  for (const auto& f : all_hfree_polys(R)) {
    try {
      f.invert_unit();
      out.push_back(f);
    } catch (const Error&) {
    }
  }
  return out;
}

// ---- criterion 1: the p-support of alpha = x1^p x2^(p-1) dx2 at p = 3 ----

CriterionResult c1(std::uint64_t) {
  Checker ck;
  const int p = 3, N = 5;
  RingPtr B = HConnection::curvature_base(p, N, {"x1", "x2"}, 5);
  DiffForm alpha = parse_form("x1^3*x2^2 dx2", B);
  HConnection conn(B, alpha);
  PSupportIdeal s = p_support(conn);

  ck.expect(s.generators.size() == 2, "two generators");
  ck.expect(s.trivial_mod_hp, "deformation trivial mod h^p");
  const RingPtr& chart = s.chart;
  TruncPoly kappa = parse_poly("x1'^3*x2'^2 - x1'", chart);
  TruncPoly expect0 = parse_poly("xi1'", chart);
  TruncPoly expect1 = parse_poly("xi2'", chart) - kappa.scaled(hs_h(p, N, p));
  ck.expect(s.generators[0] == expect0, "generator 1 is xi1'");
  ck.expect(s.generators[1] == expect1, "generator 2 is xi2' - h^3(x1'^3 x2'^2 - x1')");
  return {1, "p-support of the running example, exact", ck.ok, ck.log.str(), 0};
}

// ---- criterion 2: that support is not coisotropic, witness a unit * h^p ----

CriterionResult c2(std::uint64_t) {
  Checker ck;
  const int p = 3, N = 5;
  RingPtr B = HConnection::curvature_base(p, N, {"x1", "x2"}, 5);
  HConnection conn(B, parse_form("x1^3*x2^2 dx2", B));
  PSupportIdeal s = p_support(conn);

  IdealPresentation I(s.chart, s.generators);
  PoissonPairs pp{{{0, 2}, {1, 3}}};
  CoisotropyResult r = is_coisotropic_ideal(I, pp);
  ck.expect(!r.coisotropic, "the support is not coisotropic");
  ck.expect(r.offender_i == 0 && r.offender_j == 1, "the generator pair is the witness");
  // the bracket must be a unit multiple of h^p: a constant monomial whose
  // scalar is h^p times an invertible constant
  TruncPoly br = r.offending_bracket;
  ck.expect(!br.vanishes(), "bracket nonzero");
  bool unit_hp = br.terms().size() == 1;
  if (unit_hp) {
    const auto& [m, c] = *br.terms().begin();
    for (int e : m) unit_hp = unit_hp && e == 0;
    unit_hp = unit_hp && c.valuation() == p && !c.coeff(p).is_zero();
  }
  ck.expect(unit_hp, "bracket is a unit multiple of h^p");
  return {2, "non-coisotropy witness for the running example", ck.ok, ck.log.str(), 0};
}

// ---- criterion 3: two-route p-curvature on random integrable connections ----

CriterionResult c3(std::uint64_t seed) {
  Checker ck;
  Rng rng(seed ^ 0xc3);
  int connections = 0;
  for (int p : {3, 5}) {
    const int N = p + 2;
    for (int n : {1, 2}) {
      std::vector<std::string> names;
      for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
      auto B = RingDesc::truncated(p, N, names);
      auto Wnd = RingDesc::windowed(p, N, names, p + 1);
      for (int t = 0; t < 25; ++t) {
        for (const RingPtr& base : {B, Wnd}) {
          try {
            HConnection conn(base, rand_closed_one_form(rng, base, 2));
            for (int i = 0; i < n; ++i) p_curvature(conn, i);  // two routes + centrality
            ++connections;
          } catch (const Error& e) {
            ck.expect(false, std::string("route disagreement: ") + e.what());
          }
        }
      }
    }
  }
  ck.expect(connections >= 200, "at least 200 connections checked");
  return {3, "p-curvature: closed formula = operator composition (" +
                 std::to_string(connections) + " connections)",
          ck.ok, ck.log.str(), 0};
}

// ---- criterion 4: restricted-structure axioms on A_h ----

CriterionResult c4(std::uint64_t seed) {
  Checker ck;
  Rng rng(seed ^ 0xc4);
  const int p = 3;
  int count = 0;
  for (int n : {1, 2}) {
    auto W = std::make_shared<WeylRing>(WeylRing{p, n, p + 2});
    ck.expect(p_operation(WeylElement::h(W)).agrees_with(WeylElement::h(W)), "h^[p] = h");
    for (int t = 0; t < 50; ++t) {
      WeylElement a = rand_weyl(rng, W), b = rand_weyl(rng, W);
      // multiplicativity with the universal polynomial
      WeylElement lhs = p_operation(a * b);
      WeylElement rhs = a.pow(p) * p_operation(b) + p_operation(a) * b.pow(p) -
                        (p_operation(a) * p_operation(b)).scaled(hs_h(p, W->N, p - 1)) +
                        universal_P(a, b);
      ck.expect(lhs.agrees_with(rhs, 2), "multiplicativity axiom");
      // ad(a^[p]) = ad(a)^p on a sample element
      WeylElement ad1 = poisson_bracket(p_operation(a), b);
      WeylElement adp = b;
      for (int k = 0; k < p; ++k) adp = poisson_bracket(a, adp);
      ck.expect(ad1.agrees_with(adp, 2), "restricted adjoint axiom");
      // divisibility a^p = c^p mod h^(p-1)
      WeylElement ap = a.pow(p);
      Gf c = a.scalar_part();
      ck.expect((ap - WeylElement::constant(W, HS(c, ap.prec())))
                    .agrees_with(WeylElement(W), p - 1),
                "Frobenius-constancy divisibility");
      ++count;
    }
  }
  ck.expect(count >= 100, "at least 100 samples");
  return {4, "restricted-structure axioms on A_h (" + std::to_string(count) + " samples)",
          ck.ok, ck.log.str(), 0};
}

// ---- criterion 5: Cartier vs restricted contraction ----

CriterionResult c5(std::uint64_t seed) {
  Checker ck;
  int checked = 0;
  for (int p : {3, 5}) {
    const int N = p + 2;
    Rng rng(seed ^ (0xc5 + p));
    auto B = RingDesc::truncated(p, N, {"x1", "x2"});
    auto Bt = B->twisted();
    Derivation zero = Derivation::zero(B);
    for (int t = 0; t < 30; ++t) {
      DiffForm a = rand_closed_one_form(rng, B);
      DiffForm ca = cartier(a);
      for (int i = 0; i < 2; ++i) {
        TruncPoly lhs0 = restricted_contract(Derivation::coordinate(B, i), a, zero).scalar();
        TruncPoly lhs = lhs0.untwist_root(Bt);
        TruncPoly rhs = contract(Derivation::coordinate(Bt, i), ca).scalar();
        ck.expect(lhs == rhs, "C(i^[p] alpha) = i' C(alpha)");
        ++checked;
      }
    }
  }
  ck.expect(checked >= 100, "at least 100 samples");
  return {5, "Cartier commutes with restricted contraction (" + std::to_string(checked) +
                 " samples)",
          ck.ok, ck.log.str(), 0};
}

// ---- criterion 6: classification = dlog-orbit partition, exhaustive ----

CriterionResult c6(std::uint64_t) {
  Checker ck;
  const int p = 3, N = 5;
  auto B = RingDesc::truncated(p, N, {"x1"});
  auto polys = all_hfree_polys(B);  // 27 closed 1-forms f dx
  auto units = all_hfree_units(B);
  ck.expect(units.size() == 18, "18 units in B");

  std::vector<DiffForm> forms;
  for (const auto& f : polys) {
    DiffForm a(B, 1);
    a.set_comp({0}, f);
    forms.push_back(a);
  }
  // independent orbit oracle: translation by the dlog image
  std::vector<TruncPoly> image;
  for (const auto& u : units) image.push_back(dlog_components(u)[0]);
  auto same_orbit = [&](int i, int j) {
    for (const auto& g : image) {
      DiffForm shifted = forms[i];
      DiffForm dl(B, 1);
      dl.set_comp({0}, g);
      shifted += dl;
      if (shifted.agrees_with(forms[j]) && forms[j].agrees_with(shifted)) return true;
    }
    return false;
  };
  int iso_pairs = 0;
  for (size_t i = 0; i < forms.size(); ++i)
    for (size_t j = 0; j < forms.size(); ++j) {
      bool via_solver =
          isomorphic_connections(HConnection(B, forms[i]), HConnection(B, forms[j]));
      bool via_orbit = same_orbit(static_cast<int>(i), static_cast<int>(j));
      if (via_solver != via_orbit) ck.expect(false, "partition mismatch at a pair");
      if (via_solver) ++iso_pairs;
    }
  // 3 classes of 9 forms each: 3 * 81 ordered pairs
  ck.expect(iso_pairs == 243, "orbit sizes match (3 classes of 9)");
  // classify_quantization consistency on every form
  for (size_t i = 0; i < forms.size(); ++i) {
    QuantizationClass q = classify_quantization(HConnection(B, forms[i]));
    bool standard = same_orbit(static_cast<int>(i), 0);  // forms[0] = 0
    ck.expect(q.logarithmic == standard, "logarithmic iff in the orbit of 0");
  }
  return {6, "unique local quantization: classification matches the dlog orbits", ck.ok,
          ck.log.str(), 0};
}

// ---- criterion 7: restricted-Lagrangian equivalence, exhaustive ----

CriterionResult c7(std::uint64_t) {
  Checker ck;
  const int p = 3, N = 5;
  auto m = RestrictedSymplecticModel::standard(p, 1, N);
  auto Bx = RingDesc::truncated(p, N, {"x1"});
  int restricted = 0, nonempty_restricted = 0;
  for (const auto& phi : all_hfree_polys(Bx)) {
    auto r = is_restricted_subvariety(SubvarietyPresentation::graph(Bx, {phi}), m);
    ck.expect(r.via_membership == r.via_exactness, "routes agree");
    if (r.restricted) ++restricted;
    if (r.restricted && !r.empty_graph) ++nonempty_restricted;
  }
  ck.expect(restricted == 21, "18 empty graphs + 3 exact graphs are restricted");
  ck.expect(nonempty_restricted == 3, "through the origin, exactly the exact graphs");
  return {7, "restricted-Lagrangian equivalence on all 27 graphs", ck.ok, ck.log.str(), 0};
}

// ---- criterion 8: normal form on generated surjections ----

CriterionResult c8(std::uint64_t seed) {
  Checker ck;
  Rng rng(seed ^ 0xc8);
  int normalized = 0, rejected = 0;
  for (int p : {3, 5}) {
    const int N = p + 2;
    auto W = std::make_shared<WeylRing>(WeylRing{p, 1, N});
    auto B = RingDesc::truncated(p, N, {"z1"});
    TruncPoly z = TruncPoly::variable(B, 0);

    auto random_twist = [&]() {
      // random SL2 from elementary factors, then a Hamiltonian exponential
      WeylAutomorphism g = WeylAutomorphism::identity(W);
      for (int rounds = rng.uniform(1, 3); rounds > 0; --rounds) {
        int t = rng.uniform(0, p - 1);
        WeylElement x = WeylElement::x(W, 0), y = WeylElement::y(W, 0);
        WeylAutomorphism e =
            rng.uniform(0, 1) == 0
                ? WeylAutomorphism::make_verified(
                      W, {x + y.scaled(Gf(t, p))}, {y})
                : WeylAutomorphism::make_verified(
                      W, {x}, {y + x.scaled(Gf(t, p))});
        g = g.compose(e);
      }
      // f in (x)^2, x-only
      TruncPoly fb(RingDesc::truncated(p, N, {"x1"}));
      auto Bx = fb.ring();
      for (int d = 2; d < p; ++d)
        fb += TruncPoly::variable(Bx, 0, d).scaled(Gf(rng.uniform(0, p - 1), p));
      if (!fb.vanishes()) g = g.compose(hamiltonian_exponential(WeylElement::lift_x(W, fb)));
      return g;
    };

    auto build_psi = [&](const TruncPoly& gbar) {
      WeylSurjection psi0{W, B, {z}, {gbar}};
      WeylAutomorphism tw = random_twist();
      WeylSurjection psi{W, B, {}, {}};
      psi.x_images.push_back(psi0.eval(tw.x_images()[0]));
      psi.y_images.push_back(psi0.eval(tw.y_images()[0]));
      return psi;
    };

    for (int t = 0; t < 25; ++t) {
      // graph of an exact form: gbar = d(fbar)/dz with no z^(p-1) term
      TruncPoly fbar(B);
      for (int d2 = 2; d2 <= p - 1; ++d2)
        fbar += TruncPoly::variable(B, 0, d2).scaled(Gf(rng.uniform(0, p - 1), p));
      TruncPoly gbar = fbar.derivative(0);
      WeylSurjection psi = build_psi(gbar);
      NormalFormResult r = normal_form(psi);
      ck.expect(r.kernel_is_standard, "kernel equals J after the chain");
      for (const auto& g : r.chain) ck.expect(g.certified(), "chain automorphism verified");
      ++normalized;
    }
    for (int t = 0; t < 6; ++t) {
      // non-exact closed graph: nonzero top coefficient
      TruncPoly gbar = TruncPoly::variable(B, 0, p - 1).scaled(Gf(rng.uniform(1, p - 1), p));
      if (rng.uniform(0, 1)) gbar += z.scaled(Gf(rng.uniform(0, p - 1), p));
      WeylSurjection psi = build_psi(gbar);
      try {
        normal_form(psi);
        ck.expect(false, "non-exact graph must not normalize");
      } catch (const Error& e) {
        ck.expect(e.kind() == std::string(errs::NotExact), "fails with NotExact");
        ++rejected;
      }
    }
  }
  ck.expect(normalized >= 50, "at least 50 surjections normalized");
  ck.expect(rejected == 12, "all non-exact graphs rejected");
  return {8, "normal form: " + std::to_string(normalized) + " surjections normalized, " +
                 std::to_string(rejected) + " non-exact graphs rejected",
          ck.ok, ck.log.str(), 0};
}

// ---- criterion 9: Atiyah classification vs exhaustive enumeration ----

bool coboundary_oracle(const CechClass& cls) {
  const CechCover& cv = *cls.cover;
  std::vector<std::vector<DiffForm>> candidates;
  for (int i = 0; i < cv.size(); ++i) {
    std::vector<DiffForm> forms;
    RingBasis basis(cv.open(i));
    const int n = cv.open(i)->nvars();
    long total = 1;
    for (int k = 0; k < n * basis.dim(); ++k) total *= cv.base()->p;
    for (long code = 0; code < total; ++code) {
      DiffForm f(cv.open(i), 1);
      long c = code;
      for (int comp = 0; comp < n; ++comp) {
        TruncPoly t(cv.open(i));
        for (int k = 0; k < basis.dim(); ++k) {
          int digit = static_cast<int>(c % cv.base()->p);
          c /= cv.base()->p;
          if (digit)
            t.add_term(basis.monos[k], hs_const(digit, cv.base()->p, cv.base()->htrunc));
        }
        f.set_comp({comp}, t);
      }
      if (closed_in_widened(f)) forms.push_back(f);
    }
    candidates.push_back(std::move(forms));
  }
  std::vector<size_t> pick(cv.size(), 0);
  while (true) {
    bool good = true;
    for (int i = 0; i < cv.size() && good; ++i)
      for (int j = i + 1; j < cv.size() && good; ++j) {
        RingPtr ov = cv.overlap(i, j);
        DiffForm lhs = candidates[i][pick[i]].reinterpret(ov) -
                       candidates[j][pick[j]].reinterpret(ov);
        if (!lhs.agrees_with(cls.alpha_at(i, j)) || !cls.alpha_at(i, j).agrees_with(lhs))
          good = false;
      }
    for (int i = 0; i < cv.size() && good; ++i) {
      const DiffForm& b = candidates[i][pick[i]];
      DiffForm img = twist_rename_form(b, cv.twisted_open(i)) -
                     cartier(b).reinterpret(cv.twisted_open(i));
      if (!img.agrees_with(cls.gamma_at(i)) || !cls.gamma_at(i).agrees_with(img)) good = false;
    }
    if (good) return true;
    int k = cv.size() - 1;
    for (; k >= 0; --k) {
      if (++pick[k] < candidates[k].size()) break;
      pick[k] = 0;
    }
    if (k < 0) return false;
  }
}

CriterionResult c9(std::uint64_t seed) {
  Checker ck;
  const int p = 3, N = 5;
  Rng rng(seed ^ 0xc9);

  // (a) solver vs oracle, truncated one-open chart: all 27 gamma classes
  {
    auto B = RingDesc::truncated(p, N, {"x1"});
    auto cover = std::make_shared<CechCover>(B, std::vector<std::vector<int>>{{}}, 1);
    for (const auto& g : all_hfree_polys(cover->twisted_open(0))) {
      CechClass cls = CechClass::zero(cover);
      DiffForm gamma(cover->twisted_open(0), 1);
      gamma.set_comp({0}, g);
      cls.gamma[0] = gamma;
      ck.expect(is_coboundary(cls).has_value() == coboundary_oracle(cls),
                "solver = oracle on the truncated chart");
    }
  }
  // (a') localized one-open chart, including the logarithmic class
  {
    auto B = RingDesc::windowed(p, N, {"x1"}, 2);
    auto cover = std::make_shared<CechCover>(B, std::vector<std::vector<int>>{{0}}, 1);
    const RingPtr& T = cover->twisted_open(0);
    RingBasis tb(T);
    for (int t = 0; t < 12; ++t) {
      CechClass cls = CechClass::zero(cover);
      DiffForm gamma(T, 1);
      TruncPoly g(T);
      for (int k = 0; k < tb.dim(); ++k)
        if (rng.uniform(0, 2) == 0)
          g.add_term(tb.monos[k], hs_const(rng.uniform(0, p - 1), p, N));
      gamma.set_comp({0}, g);
      cls.gamma[0] = gamma;
      ck.expect(is_coboundary(cls).has_value() == coboundary_oracle(cls),
                "solver = oracle on the localized chart");
    }
    CechClass logcls = CechClass::zero(cover);
    DiffForm gamma(T, 1);
    gamma.set_comp({0}, TruncPoly::monomial(T, {-1}, hs_const(1, p, N)));
    logcls.gamma[0] = gamma;
    ck.expect(!is_coboundary(logcls).has_value(), "dlog class is not a coboundary");
    ck.expect(!coboundary_oracle(logcls), "oracle agrees on the dlog class");
  }
  // (b) chern additivity on the two-open cover, exhaustive on window units
  auto B = RingDesc::windowed(p, N, {"x1"}, 2);
  auto cover = std::make_shared<CechCover>(B, std::vector<std::vector<int>>{{}, {0}}, 2);
  RingPtr ov = cover->overlap(0, 1);
  std::vector<TruncPoly> units;
  for (int c = 1; c < p; ++c)
    for (int k = -1; k <= 1; ++k)
      units.push_back(TruncPoly::monomial(ov, {k}, hs_const(c, p, N)));
  for (const auto& u : units)
    for (const auto& v : units) {
      CechClass cu = restricted_chern(cover, {{{0, 1}, u}});
      CechClass cv2 = restricted_chern(cover, {{{0, 1}, v}});
      CechClass cuv = restricted_chern(cover, {{{0, 1}, u * v}});
      CechClass sum = cu + cv2;
      ck.expect(cuv.alpha_at(0, 1).agrees_with(sum.alpha_at(0, 1)) &&
                    sum.alpha_at(0, 1).agrees_with(cuv.alpha_at(0, 1)),
                "chern additivity");
    }
  // (b') dual involution and [A] + [A^op] = c_r(K) on the trivial-K cover
  {
    CechClass cK = CechClass::zero(cover);
    CechClass cL = restricted_chern(cover, {{{0, 1}, TruncPoly::variable(ov, 0)}});
    CechClass dd = dual_class(dual_class(cL, cK), cK);
    ck.expect(dd.alpha_at(0, 1) == cL.alpha_at(0, 1), "dual involution");
    RestrictedAtiyahLocalData data;
    data.cover = cover;
    data.transitions[{0, 1}] = cL.alpha_at(0, 1);
    data.curvature = {DiffForm(cover->open(0), 2), DiffForm(cover->open(1), 2)};
    data.p_defect = {DiffForm(cover->twisted_open(0), 1),
                     DiffForm(cover->twisted_open(1), 1)};
    CechClass A = cech_class(data);
    RestrictedAtiyahLocalData opp = data;
    opp.transitions[{0, 1}] = -data.transitions[{0, 1}];
    CechClass Aop = cech_class(opp);
    ck.expect(is_coboundary((A + Aop) - cK).has_value(), "[A] + [A^op] = c_r(K_Z)");
  }
  return {9, "Atiyah classification agrees with exhaustive enumeration", ck.ok, ck.log.str(),
          0};
}

// ---- criterion 10: chern-condition coherence on the standard model ----

CriterionResult c10(std::uint64_t) {
  Checker ck;
  const int p = 3, N = 5;
  // standard local model: trivial quantization, zero section, trivial L
  auto B = RingDesc::truncated(p, N, {"x1"});
  auto cover = std::make_shared<CechCover>(B, std::vector<std::vector<int>>{{}}, 1);

  CechClass cL = restricted_chern(cover, {});  // trivial bundle, computed
  CechClass cK = restricted_chern(cover, {});  // trivial canonical bundle, computed
  ck.expect(cL.is_zero_cochain() && cK.is_zero_cochain(), "c_r classes vanish");
  HConnection triv(B, DiffForm(B, 1));
  DiffForm theta = extract_theta(p_support(triv));  // computed through hconn
  ck.expect(theta.is_zero(), "normal field of the trivial deformation vanishes");
  CechClass rho = CechClass::zero(cover);  // input datum of the trivial quantization
  ck.expect(chern_condition(cL, rho, cK, theta, -1), "condition holds (minus sign)");
  ck.expect(chern_condition(cL, rho, cK, theta, +1), "condition holds (plus sign)");

  // sign switch on a nonzero normal field over the localized chart
  auto Bl = RingDesc::windowed(p, N, {"x1"}, 2);
  auto lcover = std::make_shared<CechCover>(Bl, std::vector<std::vector<int>>{{0}}, 1);
  const RingPtr& T = lcover->twisted_open(0);
  DiffForm theta2(T, 1);
  theta2.set_comp({0}, TruncPoly::monomial(T, {-1}, hs_const(1, p, N)));
  CechClass cL2 = CechClass::zero(lcover);
  cL2.gamma[0] = theta2;
  CechClass z = CechClass::zero(lcover);
  ck.expect(chern_condition(cL2, z, z, theta2, +1), "plus sign accepts");
  ck.expect(!chern_condition(cL2, z, z, theta2, -1), "minus sign rejects");
  return {10, "chern-condition coherence and the sign switch", ck.ok, ck.log.str(), 0};
}

using Fn = std::function<CriterionResult(std::uint64_t)>;
const std::vector<Fn>& table() {
  static const std::vector<Fn> fns = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  return fns;
}

CriterionResult timed(const Fn& f, std::uint64_t seed) {
  auto t0 = Clock::now();
  CriterionResult r = f(seed);
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (const auto& f : table()) out.push_back(timed(f, seed));
  return out;
}

CriterionResult run_one(int id, std::uint64_t seed) {
  require(id >= 1 && id <= static_cast<int>(table().size()), errs::BadInput,
          "no such criterion");
  return timed(table()[id - 1], seed);
}

}  // namespace rqa::suite
