#include "rqa/sympgeo.hpp"

#include <algorithm>

namespace rqa {

RestrictedSymplecticModel RestrictedSymplecticModel::standard(int p, int n, int N) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
  RestrictedSymplecticModel m;
  m.a0 = RingDesc::truncated(p, N, names);
  m.n = n;
  m.eta = DiffForm(m.a0, 1);
  for (int i = 0; i < n; ++i) m.eta.set_comp({i}, TruncPoly::variable(m.a0, n + i));
  m.omega = d(m.eta);
  m.validate();
  return m;
}

RestrictedSymplecticModel RestrictedSymplecticModel::with_eta(int p, int n, int N,
                                                              const DiffForm& eta) {
  RestrictedSymplecticModel m = standard(p, n, N);
  m.eta = eta.reinterpret(m.a0);
  m.omega = d(m.eta);
  m.validate();
  return m;
}

void RestrictedSymplecticModel::validate() const {
  require(d(eta) == omega, errs::BadInput, "d(eta) must equal omega");
  // nondegeneracy over the residue field
  const int k = a0->nvars();
  GfMatrix M(k, k, a0->p);
  for (const auto& [idx, f] : omega.comps()) {
    Gf c = f.constant_term().is_zero() ? Gf(0, a0->p) : f.constant_term().coeff(0);
    M.add(idx[0], idx[1], c);
    M.add(idx[1], idx[0], -c);
  }
  require(rank(M) == k, errs::BadInput, "omega is degenerate over the residue field");
}

namespace {

// Gaussian elimination over the local ring: pivots must be units.
std::vector<TruncPoly> solve_local_system(std::vector<std::vector<TruncPoly>> M,
                                          std::vector<TruncPoly> rhs, const RingPtr& R) {
  const int k = static_cast<int>(M.size());
  std::vector<int> colperm(k);
  for (int i = 0; i < k; ++i) colperm[i] = i;
  for (int row = 0; row < k; ++row) {
    int piv = -1;
    for (int c = row; c < k && piv < 0; ++c) {
      const TruncPoly& e = M[row][c];
      if (!e.is_zero() && !e.constant_term().is_zero() && !e.constant_term().coeff(0).is_zero())
        piv = c;
    }
    require(piv >= 0, errs::BadInput, "local system has no unit pivot");
    if (piv != row) {
      for (int r = 0; r < k; ++r) std::swap(M[r][row], M[r][piv]);
      std::swap(colperm[row], colperm[piv]);
    }
    TruncPoly inv = M[row][row].invert_unit();
    for (int c = 0; c < k; ++c) M[row][c] = M[row][c] * inv;
    rhs[row] = rhs[row] * inv;
    for (int r = 0; r < k; ++r) {
      if (r == row || M[r][row].is_zero()) continue;
      TruncPoly f = M[r][row];
      for (int c = 0; c < k; ++c) M[r][c] = M[r][c] - f * M[row][c];
      rhs[r] = rhs[r] - f * rhs[row];
    }
  }
  std::vector<TruncPoly> x(k, TruncPoly(R));
  for (int i = 0; i < k; ++i) x[colperm[i]] = rhs[i];
  return x;
}

}  // namespace

Derivation hamiltonian_field(const TruncPoly& f, const RestrictedSymplecticModel& model) {
  const RingPtr& R = model.a0;
  const int k = R->nvars();
  // omega(d_j, d_i) entries
  std::vector<std::vector<TruncPoly>> M(k, std::vector<TruncPoly>(k, TruncPoly(R)));
  for (const auto& [idx, w] : model.omega.comps()) {
    M[idx[0]][idx[1]] += w;
    M[idx[1]][idx[0]] -= w;
  }
  std::vector<TruncPoly> rhs;
  for (int j = 0; j < k; ++j) rhs.push_back(f.derivative(j));
  return Derivation(R, solve_local_system(std::move(M), std::move(rhs), R));
}

TruncPoly p_operation_from_eta(const TruncPoly& f, const RestrictedSymplecticModel& model) {
  Derivation H = hamiltonian_field(f, model);
  Derivation Hp = H.operator_pth_power();
  return restricted_contract(H, model.eta, Hp).scalar();
}

SubvarietyPresentation SubvarietyPresentation::graph(const RingPtr& base,
                                                     std::vector<TruncPoly> phi) {
  SubvarietyPresentation Y;
  Y.shape = Shape::graph;
  Y.base = base;
  Y.phi = std::move(phi);
  return Y;
}

std::vector<TruncPoly> SubvarietyPresentation::ideal_generators(const RingPtr& a0) const {
  require(shape == Shape::graph, errs::UnsupportedShape,
          "only graph subvarieties have derived ideals");
  const int n = static_cast<int>(phi.size());
  std::vector<TruncPoly> gens;
  std::vector<TruncPoly> ximgs;
  for (int i = 0; i < n; ++i) ximgs.push_back(TruncPoly::variable(a0, i));
  for (int i = 0; i < n; ++i)
    gens.push_back(TruncPoly::variable(a0, n + i) - phi[i].substitute(ximgs, a0));
  return gens;
}

bool is_lagrangian(const SubvarietyPresentation& Y, const RestrictedSymplecticModel& model) {
  require(Y.shape == SubvarietyPresentation::Shape::graph, errs::UnsupportedShape,
          "Lagrangian test is implemented for graphs");
  require(static_cast<int>(Y.phi.size()) == model.n, errs::BadInput,
          "graph data must give one phi per x-variable");
  DiffForm alpha(Y.base, 1);
  for (int i = 0; i < model.n; ++i) alpha.set_comp({i}, Y.phi[i]);
  return d(alpha).is_zero();
}

namespace {

// Pull eta back along the section x -> (x, phi(x)).
DiffForm pull_back_to_graph(const DiffForm& eta, const SubvarietyPresentation& Y, int n) {
  const RingPtr& base = Y.base;
  std::vector<TruncPoly> images;
  for (int i = 0; i < n; ++i) images.push_back(TruncPoly::variable(base, i));
  for (int i = 0; i < n; ++i) images.push_back(Y.phi[i]);
  DiffForm out(base, 1);
  for (const auto& [idx, f] : eta.comps()) {
    TruncPoly fs = f.substitute(images, base);
    int k = idx[0];
    if (k < n) {
      DiffForm piece(base, 1);
      piece.set_comp({k}, fs);
      out += piece;
    } else {
      // f dy_i pulls back to f(phi) dphi_i
      for (int j = 0; j < n; ++j) {
        TruncPoly dj = Y.phi[k - n].derivative(j);
        if (dj.is_zero()) continue;
        DiffForm piece(base, 1);
        piece.set_comp({j}, fs * dj);
        out += piece;
      }
    }
  }
  return out;
}

}  // namespace

RestrictedCheck is_restricted_subvariety(const SubvarietyPresentation& Y,
                                         const RestrictedSymplecticModel& model) {
  require(is_lagrangian(Y, model), errs::NotClosed, "graph is not Lagrangian");
  RestrictedCheck out;

  // Route (a): every generator's p-operation stays in the ideal.
  std::vector<TruncPoly> gens = Y.ideal_generators(model.a0);
  IdealPresentation I(model.a0, gens);
  out.via_membership = true;
  for (const auto& g : gens) {
    TruncPoly gp = p_operation_from_eta(g, model);
    out.p_images.push_back(gp);
    Membership m = I.contains(gp);
    if (m.member) require(m.verified, errs::CertificationFailed, "certificate failed");
    if (!m.member) out.via_membership = false;
  }

  // Route (b): eta pulled back to the graph is exact.  A graph with
  // phi(0) != 0 misses the Frobenius neighborhood: its ideal is the unit
  // ideal and eta restricts to the empty scheme, so both routes are
  // trivially positive there.
  for (const auto& f : Y.phi) {
    HS c = f.constant_term();
    if (!c.is_zero() && !c.coeff(0).is_zero()) out.empty_graph = true;
  }
  if (out.empty_graph) {
    out.via_exactness = true;
    out.primitive = TruncPoly(Y.base);
  } else {
    DiffForm etaY = pull_back_to_graph(model.eta, Y, model.n);
    require(closed_in_widened(etaY), errs::NotClosed, "eta|_Y is not closed");
    out.primitive = solve_primitive(etaY);
    out.via_exactness = out.primitive.has_value();
  }

  require(out.via_membership == out.via_exactness, errs::CertificationFailed,
          "restrictedness routes disagree");
  out.restricted = out.via_membership;
  return out;
}

TruncPoly poisson_bracket_poly(const TruncPoly& f, const TruncPoly& g, const PoissonPairs& pp) {
  TruncPoly out(f.ring());
  for (auto [pos, mom] : pp.pairs)
    out += f.derivative(mom) * g.derivative(pos) - f.derivative(pos) * g.derivative(mom);
  return out;
}

CoisotropyResult is_coisotropic_ideal(const IdealPresentation& I, const PoissonPairs& pp) {
  CoisotropyResult out;
  const auto& gens = I.generators();
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j) {
      TruncPoly br = poisson_bracket_poly(gens[i], gens[j], pp);
      Membership m = I.contains(br);
      if (!m.member) {
        out.coisotropic = false;
        out.offender_i = static_cast<int>(i);
        out.offender_j = static_cast<int>(j);
        out.offending_bracket = br;
        return out;
      }
      require(m.verified, errs::CertificationFailed, "bracket membership certificate failed");
    }
  return out;
}

TruncPoly WeylSurjection::eval(const WeylElement& a) const {
  const int n = W->n;
  TruncPoly out(target);
  std::vector<std::vector<TruncPoly>> xp(n), yp(n);
  auto pw = [&](std::vector<TruncPoly>& tab, const TruncPoly& base, int e) -> const TruncPoly& {
    if (tab.empty()) tab.push_back(TruncPoly::constant(target, 1));
    while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * base);
    return tab[e];
  };
  for (const auto& [m, c] : a.terms()) {
    Gf c0 = c.coeff(0);  // h acts as zero on the target
    if (c0.is_zero()) continue;
    TruncPoly t = TruncPoly::constant(target, HS(c0, target->htrunc));
    for (int i = 0; i < n; ++i)
      if (m[i]) t *= pw(xp[i], x_images[i], m[i]);
    for (int i = 0; i < n; ++i)
      if (m[n + i]) t *= pw(yp[i], y_images[i], m[n + i]);
    out += t;
  }
  return out;
}

namespace {

struct LinearData {
  GfMatrix lin;  // n x 2n: linear coefficients of the generator images
  LinearData(int n, int p) : lin(n, 2 * n, p) {}
};

Gf linear_coeff(const TruncPoly& f, int j) {
  Mono m(f.ring()->nvars(), 0);
  m[j] = 1;
  HS c = f.coeff(m);
  return c.is_zero() ? Gf(0, f.ring()->p) : c.coeff(0);
}

Gf sympl_pairing(const std::vector<Gf>& u, const std::vector<Gf>& v, int n, int p) {
  // <x_i, y_i> = {x_i, y_i} = -1, <y_i, x_i> = 1
  Gf s(0, p);
  for (int i = 0; i < n; ++i) {
    s += -(u[i] * v[n + i]);
    s += u[n + i] * v[i];
  }
  return s;
}

}  // namespace

NormalFormResult normal_form(const WeylSurjection& psi0) {
  const WeylPtr& W = psi0.W;
  const int n = W->n, p = W->p;
  NormalFormResult out;
  WeylSurjection psi = psi0;

  require(static_cast<int>(psi.x_images.size()) == n &&
              static_cast<int>(psi.y_images.size()) == n,
          errs::BadInput, "need one image per generator");
  for (const auto& f : psi.x_images)
    require(f.is_hfree(), errs::BadInput, "target has h = 0; images must be h-free");
  for (const auto& f : psi.y_images)
    require(f.is_hfree(), errs::BadInput, "target has h = 0; images must be h-free");

  auto compose_with = [&](const WeylAutomorphism& g, const std::string& name) {
    std::vector<TruncPoly> xs, ys;
    for (int i = 0; i < n; ++i) {
      xs.push_back(psi.eval(g.x_images()[i]));
      ys.push_back(psi.eval(g.y_images()[i]));
    }
    psi.x_images = std::move(xs);
    psi.y_images = std::move(ys);
    out.chain.push_back(g);
    out.trail.push_back(name);
  };

  // Step 1: constant shifts.  Over R = k[[h]]/h^N a p-th root of a^p/h^p
  // exists only when the augmentation of the image vanishes; otherwise the
  // root would only exist on an fppf extension of R.
  for (int i = 0; i < 2 * n; ++i) {
    const TruncPoly& img = i < n ? psi.x_images[i] : psi.y_images[i - n];
    HS c = img.constant_term();
    if (!c.is_zero())
      fail(errs::NeedsCoverExtension,
           "generator image has augmentation " + hs_str(c) +
               "; h^p c^p = a^p has no solution over k[[h]]/h^N");
  }
  out.trail.push_back("constant shift: identity (augmentations already vanish)");

  // Step 2: linear symplectic frame correction on m/(h + m^2).
  {
    GfMatrix L(n, 2 * n, p);
    for (int col = 0; col < 2 * n; ++col) {
      const TruncPoly& img = col < n ? psi.x_images[col] : psi.y_images[col - n];
      for (int j = 0; j < n; ++j) L.set(j, col, linear_coeff(img, j));
    }
    require(rank(L) == n, errs::BadInput, "images do not span the target cotangent space");
    std::vector<std::vector<Gf>> F = kernel_basis(L);
    require(static_cast<int>(F.size()) == n, errs::BadInput, "kernel of the frame map is not rank n");
    for (const auto& u : F)
      for (const auto& v : F)
        require(sympl_pairing(u, v, n, p).is_zero(), errs::NotClosed,
                "kernel of the frame map is not Lagrangian");

    // Complete F to a symplectic basis: find E with <e_i, f_j> = delta_ij,
    // <e_i, e_j> = 0, then normalize so the frame map sends e_i to z_i.
    std::vector<std::vector<Gf>> E;
    for (int i = 0; i < n; ++i) {
      GfMatrix A(n + static_cast<int>(E.size()), 2 * n, p);
      std::vector<Gf> b;
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < 2 * n; ++k) {
          std::vector<Gf> ek(2 * n, Gf(0, p));
          ek[k] = Gf(1, p);
          A.add(j, k, sympl_pairing(ek, F[j], n, p));
        }
        b.push_back(Gf(i == j ? -1 : 0, p));  // {f'_i, e'_j} = +delta_ij
      }
      for (size_t j = 0; j < E.size(); ++j) {
        for (int k = 0; k < 2 * n; ++k) {
          std::vector<Gf> ek(2 * n, Gf(0, p));
          ek[k] = Gf(1, p);
          A.add(n + static_cast<int>(j), k, sympl_pairing(ek, E[j], n, p));
        }
        b.push_back(Gf(0, p));
      }
      auto e = solve_linear(A, b);
      require(e.has_value(), errs::BadInput, "symplectic completion failed");
      E.push_back(*e);
    }
    // kill the e-e pairings with f-corrections (p > 2)
    Gf half = gf_inv(Gf(2, p));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Gf cij = sympl_pairing(E[i], E[j], n, p) * half;
        for (int k = 0; k < 2 * n; ++k) {
          E[i][k] = E[i][k] + cij * F[j][k];
          E[j][k] = E[j][k] - cij * F[i][k];
        }
      }
    // normalize the frame image: T[j][i] = coeff of z_j in lambda(e_i)
    GfMatrix T(n, n, p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Gf s(0, p);
        for (int col = 0; col < 2 * n; ++col) s += E[i][col] * Gf::raw(L.at(j, col), p);
        T.set(j, i, s);
      }
    // E' = E T^{-1}, F' = F T^t: solve T column systems
    std::vector<std::vector<Gf>> E2(n, std::vector<Gf>(2 * n, Gf(0, p)));
    for (int i = 0; i < n; ++i) {
      std::vector<Gf> ei(n, Gf(0, p));
      ei[i] = Gf(1, p);
      auto col = solve_linear(T, ei);  // T c = e_i
      require(col.has_value(), errs::BadInput, "frame normalization failed");
      for (int k = 0; k < n; ++k)
        for (int c2 = 0; c2 < 2 * n; ++c2) E2[i][c2] = E2[i][c2] + (*col)[k] * E[k][c2];
    }
    std::vector<std::vector<Gf>> F2(n, std::vector<Gf>(2 * n, Gf(0, p)));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Gf t = Gf::raw(T.at(j, k), p);
        for (int c2 = 0; c2 < 2 * n; ++c2) F2[j][c2] = F2[j][c2] + t * F[k][c2];
      }

    std::vector<WeylElement> xs, ys;
    auto as_elem = [&](const std::vector<Gf>& v) {
      WeylElement e(W);
      for (int k = 0; k < n; ++k) {
        e += WeylElement::x(W, k).scaled(v[k]);
        e += WeylElement::y(W, k).scaled(v[n + k]);
      }
      return e;
    };
    bool nontrivial = false;
    for (int i = 0; i < n; ++i) {
      xs.push_back(as_elem(E2[i]));
      ys.push_back(as_elem(F2[i]));
      if (!(xs.back() == WeylElement::x(W, i)) || !(ys.back() == WeylElement::y(W, i)))
        nontrivial = true;
    }
    if (nontrivial) {
      WeylAutomorphism tau = WeylAutomorphism::make_verified(W, std::move(xs), std::move(ys));
      compose_with(tau, "linear symplectic frame correction");
    } else {
      out.trail.push_back("linear symplectic frame correction: identity");
    }
  }

  // Step 3: express psi(y_i) = g_i(psi(x_1..x_n)).
  RingBasis basis(psi.target);
  std::vector<TruncPoly> g(n, TruncPoly(psi.target));
  {
    const int D = basis.dim();
    // columns: monomials of g; rows: coefficients of the evaluated product
    GfMatrix M(D, D, p);
    std::vector<TruncPoly> xpows;
    for (int c = 0; c < D; ++c) {
      TruncPoly t = TruncPoly::constant(psi.target, 1);
      for (int i = 0; i < n; ++i)
        for (int e = 0; e < basis.monos[c][i]; ++e) t *= psi.x_images[i];
      for (const auto& [m, hc] : t.terms()) M.add(basis.index.at(m), c, hc.coeff(0));
    }
    for (int i = 0; i < n; ++i) {
      std::vector<Gf> b(D, Gf(0, p));
      for (const auto& [m, hc] : psi.y_images[i].terms()) b[basis.index.at(m)] = hc.coeff(0);
      auto sol = solve_linear(M, b);
      require(sol.has_value(), errs::BadInput, "x-images do not generate the target");
      for (int c = 0; c < D; ++c)
        g[i].add_term(basis.monos[c], HS((*sol)[c], psi.target->htrunc));
      require(g[i].substitute(psi.x_images, psi.target) == psi.y_images[i],
              errs::CertificationFailed, "kernel presentation failed to verify");
    }
    out.trail.push_back("kernel presentation: ker psi = (h, y_i - g_i(x))");
  }

  // Step 4: the graph 1-form must be closed and exact; conjugate by the
  // restricted exponential of its primitive.
  {
    DiffForm alpha(psi.target, 1);
    for (int i = 0; i < n; ++i) alpha.set_comp({i}, g[i]);
    require(d(alpha).is_zero(), errs::NotClosed,
            "graph form is not closed: the subvariety is not Lagrangian");
    DiffForm calpha = cartier(alpha);
    require(calpha.is_zero(), errs::NotExact,
            "graph form has nonzero Cartier image: the subvariety is not restricted");
    auto prim = solve_primitive(alpha);
    require(prim.has_value(), errs::CertificationFailed,
            "Cartier image vanishes but no primitive was found");
    TruncPoly fbar = *prim;
    // normalize the constant away; alpha in (z)dz forces the rest
    fbar -= TruncPoly::constant(psi.target, fbar.constant_term());
    WeylElement f = WeylElement::lift_x(W, fbar);
    bool trivial = f.vanishes();
    if (!trivial) {
      WeylAutomorphism rho = hamiltonian_exponential(f);
      compose_with(rho, "conjugation by the restricted exponential of the primitive");
    } else {
      out.trail.push_back("restricted exponential: identity (graph already flat)");
    }
  }

  // Step 5: certify ker psi = J by exact linear algebra: every y-image is
  // zero and the x-monomials hit a full basis of the target.
  {
    bool ys_zero = true;
    for (int i = 0; i < n; ++i)
      if (!psi.y_images[i].vanishes()) ys_zero = false;
    GfMatrix M(basis.dim(), basis.dim(), p);
    for (int c = 0; c < basis.dim(); ++c) {
      TruncPoly t = TruncPoly::constant(psi.target, 1);
      for (int i = 0; i < n; ++i)
        for (int e = 0; e < basis.monos[c][i]; ++e) t *= psi.x_images[i];
      for (const auto& [m, hc] : t.terms()) M.add(basis.index.at(m), c, hc.coeff(0));
    }
    bool full = rank(M) == basis.dim();
    out.kernel_is_standard = ys_zero && full;
    out.trail.push_back(std::string("kernel check: y-images ") +
                        (ys_zero ? "vanish" : "DO NOT vanish") + ", x-monomials " +
                        (full ? "span" : "DO NOT span"));
  }
  out.final_x_images = psi.x_images;
  out.final_y_images = psi.y_images;
  return out;
}

}  // namespace rqa
