#include "rqa/hconn.hpp"

namespace rqa {

HConnection::HConnection(RingPtr base_, DiffForm alpha_)
    : base(std::move(base_)), alpha(std::move(alpha_)) {
  require(alpha.degree() == 1, errs::BadInput, "connection form must have degree 1");
  require(same_ring(alpha.ring(), base) || alpha.is_zero(), errs::MixedSession,
          "connection form lives over a different base");
  if (alpha.is_zero()) alpha = DiffForm(base, 1);
  require(closed_in_widened(alpha), errs::NotClosed,
          "connection is not integrable: d(alpha) != 0");
}

RingPtr HConnection::curvature_base(int p, int N, const std::vector<std::string>& names,
                                    int maxdeg) {
  return RingDesc::windowed(p, N, names, maxdeg + 1);
}

namespace {

// Pad an n-variable twisted polynomial into the 2n-variable chart.
TruncPoly into_chart(const TruncPoly& f, const RingPtr& chart) {
  TruncPoly out(chart, f.background());
  const int n = f.ring()->nvars();
  for (const auto& [m, c] : f.terms()) {
    Mono mm(chart->nvars(), 0);
    for (int i = 0; i < n; ++i) mm[i] = m[i];
    out.add_term(std::move(mm), c);
  }
  return out;
}

}  // namespace

TruncPoly p_curvature(const HConnection& conn, const Derivation& field,
                      const Derivation& field_p) {
  const RingPtr& B = conn.base;
  const int p = B->p;
  // p-fold products plus one coordinate factor for the centrality check
  RingPtr wide;
  {
    auto w = std::make_shared<RingDesc>(*B->widened(p));
    for (auto& v : w->vars)
      if (!v.nilpotent) {
        v.hi += 1;
        v.lo -= 1;
      }
    wide = w;
  }

  Derivation fieldw(wide, {});
  Derivation fieldpw(wide, {});
  for (const auto& c : field.comps) fieldw.comps.push_back(c.reinterpret(wide));
  for (const auto& c : field_p.comps) fieldpw.comps.push_back(c.reinterpret(wide));
  DiffForm alphaw = conn.alpha.reinterpret(wide);

  TruncPoly a = contract(fieldw, alphaw).scalar();
  TruncPoly ap = contract(fieldpw, alphaw).scalar();

  // (i) closed formula
  TruncPoly der = a;
  for (int k = 0; k < p - 1; ++k) der = fieldw.apply(der);
  HS hp = hs_h(p, wide->htrunc, p);
  TruncPoly formula = (a.pth_power() + der - ap).scaled(hp);

  // (ii) literal operator composition on the module
  auto nabla = [&](const Derivation& D, const TruncPoly& aD, const TruncPoly& m) {
    return (D.apply(m) + aD * m).scaled(hs_h(p, wide->htrunc, 1));
  };
  auto op = [&](const TruncPoly& m) {
    TruncPoly v = m;
    for (int k = 0; k < p; ++k) v = nabla(fieldw, a, v);
    return v - nabla(fieldpw, ap, m).scaled(hs_h(p, wide->htrunc, p - 1));
  };
  TruncPoly one = TruncPoly::constant(wide, 1);
  TruncPoly composed = op(one);
  require(formula.agrees_with(composed), errs::IntegrabilityViolated,
          "closed formula and operator composition disagree");
  // centrality spot check: the operator must be multiplication by its value at 1
  for (int j = 0; j < B->nvars(); ++j) {
    TruncPoly xj = TruncPoly::variable(wide, j);
    require(op(xj).agrees_with(composed * xj), errs::IntegrabilityViolated,
            "p-curvature operator is not central");
  }
  return formula;
}

TruncPoly p_curvature(const HConnection& conn, int i) {
  Derivation d = Derivation::coordinate(conn.base, i);
  return p_curvature(conn, d, Derivation::zero(conn.base));
}

PSupportIdeal p_support(const HConnection& conn) {
  const RingPtr& B = conn.base;
  const int p = B->p, n = B->nvars(), N = B->htrunc;

  // Twisted chart k[x'_1..x'_n, xi'_1..xi'_n]; the base-variable windows
  // match the base (embedding x'^a -> x^(pa) stays inside widened(p)).
  auto chart = std::make_shared<RingDesc>();
  chart->p = p;
  chart->htrunc = N;
  for (int i = 0; i < n; ++i) {
    const VarInfo& v = B->vars[i];
    chart->vars.push_back({v.name + "'", v.nilpotent ? 0 : ceil_div(v.lo, p),
                           v.nilpotent ? p - 1 : v.hi, v.nilpotent});
  }
  for (int i = 0; i < n; ++i) {
    std::string nm = "xi" +
                     (B->vars[i].name.size() > 1 ? B->vars[i].name.substr(1) : std::string()) +
                     "'";
    chart->vars.push_back({nm, 0, 1, false});
  }
  auto base_tw = std::make_shared<RingDesc>();
  base_tw->p = p;
  base_tw->htrunc = N;
  for (int i = 0; i < n; ++i) base_tw->vars.push_back(chart->vars[i]);

  PSupportIdeal out;
  out.chart = chart;
  for (int i = 0; i < n; ++i) {
    TruncPoly curv = p_curvature(conn, i);
    // kappa^(p) = curvature / h^p, then extract the p-th root of the twist
    TruncPoly kappa = curv.divide_exact_h(p).untwist_root(base_tw);
    out.kappa.push_back(kappa);
    TruncPoly gen = TruncPoly::variable(chart, n + i) -
                    into_chart(kappa, chart).scaled(hs_h(p, N, p));
    out.generators.push_back(gen);
  }
  out.trivial_mod_hp = true;
  return out;
}

DiffForm extract_theta(const PSupportIdeal& psup) {
  require(psup.trivial_mod_hp, errs::BadInput,
          "normal field needs a deformation that is trivial mod h^p");
  const int n = static_cast<int>(psup.kappa.size());
  RingPtr base_tw = n ? psup.kappa[0].ring() : nullptr;
  for (const auto& k : psup.kappa)
    if (k.ring()) base_tw = k.ring();
  DiffForm theta(base_tw, 1);
  for (int i = 0; i < n; ++i) {
    // first nontrivial order of the deformation: the h^0 slice of kappa
    TruncPoly slice(base_tw);
    for (const auto& [m, c] : psup.kappa[i].terms()) {
      if (c.is_zero() || c.trunc() < 1) continue;
      Gf c0 = c.coeff(0);
      if (!c0.is_zero()) slice.add_term(m, HS(c0, base_tw->htrunc));
    }
    theta.set_comp({i}, slice);
  }
  return theta;
}

QuantizationClass classify_quantization(const HConnection& conn) {
  QuantizationClass out;
  out.defect = log_defect(conn.alpha);
  out.logarithmic = true;
  for (const auto& t : out.defect)
    if (!t.is_zero()) out.logarithmic = false;
  if (out.logarithmic) {
    out.witness = solve_dlog(conn.alpha);
    require(out.witness.has_value(), errs::CertificationFailed,
            "vanishing log defect but no dlog witness inside the window");
    out.isomorphism_to_standard = out.witness->invert_unit();
  } else {
    require(!solve_dlog(conn.alpha).has_value(), errs::CertificationFailed,
            "dlog witness found despite nonzero log defect");
  }
  return out;
}

bool isomorphic_connections(const HConnection& a, const HConnection& b) {
  require_same_ring(a.base, b.base);
  DiffForm delta = a.alpha - b.alpha;
  return solve_dlog(delta).has_value();
}

}  // namespace rqa
