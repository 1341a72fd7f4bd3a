#include "rqa/atiyah.hpp"

#include <algorithm>

namespace rqa {

namespace {

std::vector<int> merge_sets(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> u = a;
  for (int x : b)
    if (std::find(u.begin(), u.end(), x) == u.end()) u.push_back(x);
  std::sort(u.begin(), u.end());
  return u;
}

}  // namespace

CechCover::CechCover(RingPtr base, std::vector<std::vector<int>> inverted_sets, int pole)
    : base_(std::move(base)), inv_(std::move(inverted_sets)), pole_(pole) {
  require(!inv_.empty(), errs::BadInput, "a cover needs at least one open");
  for (auto& s : inv_) std::sort(s.begin(), s.end());
  for (const auto& s : inv_) {
    RingPtr u = s.empty() ? base_ : base_->localized(s, pole_);
    opens_.push_back(u);
    topens_.push_back(u->twisted());
  }
}

RingPtr CechCover::overlap(int i, int j) const {
  std::vector<int> u = merge_sets(inv_[i], inv_[j]);
  return u.empty() ? base_ : base_->localized(u, pole_);
}

RingPtr CechCover::twisted_overlap(int i, int j) const { return overlap(i, j)->twisted(); }

CechClass CechClass::zero(std::shared_ptr<const CechCover> cover) {
  CechClass c;
  c.cover = std::move(cover);
  for (int i = 0; i < c.cover->size(); ++i)
    c.gamma.push_back(DiffForm(c.cover->twisted_open(i), 1));
  return c;
}

DiffForm CechClass::alpha_at(int i, int j) const {
  require(i != j, errs::BadInput, "alpha is defined on distinct overlaps");
  auto it = alpha.find({std::min(i, j), std::max(i, j)});
  if (it == alpha.end()) return DiffForm(cover->overlap(i, j), 1);
  return i < j ? it->second : -it->second;
}

CechClass operator+(const CechClass& a, const CechClass& b) {
  require(a.cover == b.cover || (a.cover && b.cover && same_ring(a.cover->base(), b.cover->base())),
          errs::MixedSession, "classes on different covers");
  CechClass r = CechClass::zero(a.cover);
  for (int i = 0; i < a.cover->size(); ++i)
    for (int j = i + 1; j < a.cover->size(); ++j) {
      DiffForm s = a.alpha_at(i, j) + b.alpha_at(i, j);
      if (!s.is_zero()) r.alpha[{i, j}] = s;
    }
  for (int i = 0; i < a.cover->size(); ++i) r.gamma[i] = a.gamma_at(i) + b.gamma_at(i);
  return r;
}

CechClass operator-(const CechClass& a) { return a.scaled(Gf(-1, a.cover->base()->p)); }
CechClass operator-(const CechClass& a, const CechClass& b) { return a + (-b); }

CechClass CechClass::scaled(Gf c) const {
  CechClass r = CechClass::zero(cover);
  for (const auto& [ij, f] : alpha) {
    DiffForm s = f.scaled(c);
    if (!s.is_zero()) r.alpha[ij] = s;
  }
  for (int i = 0; i < cover->size(); ++i) r.gamma[i] = gamma[i].scaled(c);
  return r;
}

void CechClass::verify_cocycle() const {
  const CechCover& cv = *cover;
  // alpha closed on overlaps
  for (const auto& [ij, f] : alpha)
    require(closed_in_widened(f), errs::NotClosed,
            "alpha component is not closed on its overlap");
  // triple law
  for (int i = 0; i < cv.size(); ++i)
    for (int j = i + 1; j < cv.size(); ++j)
      for (int k = j + 1; k < cv.size(); ++k) {
        std::vector<int> all = merge_sets(cv.inverted(i),
                                          merge_sets(cv.inverted(j), cv.inverted(k)));
        RingPtr triple = all.empty() ? cv.base() : cv.base()->localized(all, cv.pole());
        DiffForm lhs = alpha_at(i, j).reinterpret(triple) + alpha_at(j, k).reinterpret(triple);
        DiffForm rhs = alpha_at(i, k).reinterpret(triple);
        require(lhs.agrees_with(rhs) && rhs.agrees_with(lhs), errs::CertificationFailed,
                "alpha violates the triple cocycle law");
      }
  // twisted compatibility: gamma_i - gamma_j = alpha_ij' - C(alpha_ij)
  for (int i = 0; i < cv.size(); ++i)
    for (int j = i + 1; j < cv.size(); ++j) {
      RingPtr tov = cv.twisted_overlap(i, j);
      DiffForm lhs = gamma_at(i).reinterpret(tov) - gamma_at(j).reinterpret(tov);
      DiffForm aij = alpha_at(i, j);
      DiffForm rhs = twist_rename_form(aij, tov) - cartier(aij).reinterpret(tov);
      require(lhs.agrees_with(rhs) && rhs.agrees_with(lhs), errs::CertificationFailed,
              "gamma violates the twisted compatibility law");
    }
}

bool CechClass::is_zero_cochain() const {
  for (const auto& [ij, f] : alpha)
    if (!f.is_zero()) return false;
  for (const auto& g : gamma)
    if (!g.is_zero()) return false;
  return true;
}

DiffForm split_lie(const DiffForm& beta) {
  const RingPtr& R = beta.ring();
  require(beta.degree() == 2, errs::BadInput, "curvature must have degree 2");
  if (beta.is_zero()) return DiffForm(R, 1);
  // Certify C(beta) = 0: for every coordinate field the restricted
  // contraction of beta must be exact.
  Derivation zero = Derivation::zero(R);
  for (int i = 0; i < R->nvars(); ++i) {
    DiffForm ric = restricted_contract(Derivation::coordinate(R, i), beta, zero);
    require(solve_primitive(ric).has_value(), errs::NotLocallyExact,
            "restricted contraction of the curvature is not exact");
  }
  auto alpha = solve_potential(-beta);
  require(alpha.has_value(), errs::NotLocallyExact,
          "curvature is not exact on this open");
  return *alpha;
}

CechClass cech_class(const RestrictedAtiyahLocalData& data) {
  const CechCover& cv = *data.cover;
  CechClass cls = CechClass::zero(data.cover);
  cls.alpha = data.transitions;
  for (int i = 0; i < cv.size(); ++i) cls.gamma[i] = data.p_defect[i];

  for (int i = 0; i < cv.size(); ++i) {
    if (i >= static_cast<int>(data.curvature.size()) || data.curvature[i].is_zero()) continue;
    // sigma_i -> sigma_i + c flattens the splitting; the transitions move
    // along.  The p-defect gamma_i is the defect of the flattened
    // splitting (it is only well defined once the curvature vanishes).
    DiffForm c = split_lie(data.curvature[i]);
    for (int j = 0; j < cv.size(); ++j) {
      if (j == i) continue;
      int a = std::min(i, j), b = std::max(i, j);
      RingPtr ov = cv.overlap(a, b);
      DiffForm adj = (i < j ? c : -c).reinterpret(ov);
      DiffForm cur = cls.alpha.count({a, b}) ? cls.alpha[{a, b}] : DiffForm(ov, 1);
      cls.alpha[{a, b}] = cur + adj;
    }
  }
  cls.verify_cocycle();
  return cls;
}

namespace {

// Basis of closed 1-forms over a ring, h-free representatives.
struct ClosedBasis {
  RingPtr ring;
  std::vector<DiffForm> forms;
};

ClosedBasis closed_one_forms(const RingPtr& R) {
  RingBasis mono(R);
  RingBasis rows(R->widened());
  const int n = R->nvars();
  const int D = mono.dim();
  // kernel of d: unknowns (i, monomial) -> rows (i<j, monomial)
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  GfMatrix A(std::max<int>(1, static_cast<int>(pairs.size()) * rows.dim()), n * D, R->p);
  for (size_t q = 0; q < pairs.size(); ++q) {
    auto [i, j] = pairs[q];
    for (int c = 0; c < D; ++c) {
      const Mono& m = mono.monos[c];
      // d_i alpha_j - d_j alpha_i at row (q, m - e)
      Gf ei(m[i], R->p), ej(m[j], R->p);
      if (!ei.is_zero()) {
        Mono dm = m;
        dm[i] -= 1;
        A.add(static_cast<int>(q) * rows.dim() + rows.index.at(dm), j * D + c, ei);
      }
      if (!ej.is_zero()) {
        Mono dm = m;
        dm[j] -= 1;
        A.add(static_cast<int>(q) * rows.dim() + rows.index.at(dm), i * D + c, -ej);
      }
    }
  }
  ClosedBasis out{R, {}};
  for (const auto& v : kernel_basis(A)) {
    DiffForm f(R, 1);
    for (int i = 0; i < n; ++i) {
      TruncPoly comp(R);
      for (int c = 0; c < D; ++c)
        if (!v[i * D + c].is_zero())
          comp.add_term(mono.monos[c], HS(v[i * D + c], R->htrunc));
      f.set_comp({i}, comp);
    }
    out.forms.push_back(f);
  }
  return out;
}

std::vector<Gf> form_slice(const DiffForm& f, const RingBasis& basis, int slice, int p) {
  const int n = f.ring()->nvars();
  std::vector<Gf> v(std::size_t(n) * basis.dim(), Gf(0, p));
  for (const auto& [idx, comp] : f.comps())
    for (const auto& [m, c] : comp.terms()) {
      if (slice >= c.size() || c.coeffs()[slice].is_zero()) continue;
      require(slice < c.trunc(), errs::BadInput, "slice beyond precision");
      v[std::size_t(idx[0]) * basis.dim() + basis.index.at(m)] = c.coeffs()[slice];
    }
  return v;
}

}  // namespace

std::optional<CoboundaryWitness> is_coboundary(const CechClass& cls) {
  cls.verify_cocycle();
  const CechCover& cv = *cls.cover;
  const int p = cv.base()->p;
  const int m = cv.size();

  // Precompute per-open closed bases and the images needed by the laws.
  std::vector<ClosedBasis> bases;
  std::vector<std::vector<DiffForm>> twist_minus_C;  // per open, per basis vector
  for (int i = 0; i < m; ++i) {
    bases.push_back(closed_one_forms(cv.open(i)));
    std::vector<DiffForm> imgs;
    for (const auto& B : bases[i].forms) {
      DiffForm tw = twist_rename_form(B, cv.twisted_open(i));
      imgs.push_back(tw - cartier(B).reinterpret(cv.twisted_open(i)));
    }
    twist_minus_C.push_back(std::move(imgs));
  }

  int total_unknowns = 0;
  std::vector<int> offset(m, 0);
  for (int i = 0; i < m; ++i) {
    offset[i] = total_unknowns;
    total_unknowns += static_cast<int>(bases[i].forms.size());
  }

  // Row layout: per overlap i<j a block over the overlap basis, then per
  // open a block over the twisted-open basis.
  struct Block {
    int row0;
    RingBasis basis;
    int forms_n;
  };
  std::vector<std::pair<std::pair<int, int>, Block>> overlap_blocks;
  std::vector<Block> gamma_blocks;
  int rows = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      RingBasis rb(cv.overlap(i, j));
      int nvars = cv.base()->nvars();
      overlap_blocks.push_back({{i, j}, {rows, rb, nvars}});
      rows += nvars * rb.dim();
    }
  for (int i = 0; i < m; ++i) {
    RingBasis rb(cv.twisted_open(i));
    gamma_blocks.push_back({rows, rb, cv.base()->nvars()});
    rows += cv.base()->nvars() * rb.dim();
  }

  GfMatrix A(std::max(rows, 1), std::max(total_unknowns, 1), p);
  for (const auto& [ij, blk] : overlap_blocks) {
    auto [i, j] = ij;
    RingPtr ov = cv.overlap(i, j);
    for (size_t k = 0; k < bases[i].forms.size(); ++k) {
      std::vector<Gf> w = form_slice(bases[i].forms[k].reinterpret(ov), blk.basis, 0, p);
      for (size_t r = 0; r < w.size(); ++r)
        if (!w[r].is_zero()) A.add(blk.row0 + static_cast<int>(r), offset[i] + static_cast<int>(k), w[r]);
    }
    for (size_t k = 0; k < bases[j].forms.size(); ++k) {
      std::vector<Gf> w = form_slice(bases[j].forms[k].reinterpret(ov), blk.basis, 0, p);
      for (size_t r = 0; r < w.size(); ++r)
        if (!w[r].is_zero()) A.add(blk.row0 + static_cast<int>(r), offset[j] + static_cast<int>(k), -w[r]);
    }
  }
  for (int i = 0; i < m; ++i) {
    const Block& blk = gamma_blocks[i];
    for (size_t k = 0; k < bases[i].forms.size(); ++k) {
      std::vector<Gf> w = form_slice(twist_minus_C[i][k], blk.basis, 0, p);
      for (size_t r = 0; r < w.size(); ++r)
        if (!w[r].is_zero()) A.add(blk.row0 + static_cast<int>(r), offset[i] + static_cast<int>(k), w[r]);
    }
  }

  // Right-hand sides per h-slice; the operators are slice-diagonal.
  int T = cv.base()->htrunc;
  for (const auto& [ij, f] : cls.alpha) T = std::min(T, f.htrunc());
  for (const auto& g : cls.gamma) T = std::min(T, g.htrunc());

  std::vector<std::vector<Gf>> sol_slices;
  for (int s = 0; s < T; ++s) {
    std::vector<Gf> b(std::max(rows, 1), Gf(0, p));
    for (const auto& [ij, blk] : overlap_blocks) {
      std::vector<Gf> w = form_slice(cls.alpha_at(ij.first, ij.second), blk.basis, s, p);
      for (size_t r = 0; r < w.size(); ++r) b[blk.row0 + r] = w[r];
    }
    for (int i = 0; i < m; ++i) {
      const Block& blk = gamma_blocks[i];
      std::vector<Gf> w = form_slice(cls.gamma_at(i), blk.basis, s, p);
      for (size_t r = 0; r < w.size(); ++r) b[blk.row0 + r] = w[r];
    }
    auto x = solve_linear(A, b);
    if (!x) return std::nullopt;
    sol_slices.push_back(*x);
  }

  CoboundaryWitness w;
  for (int i = 0; i < m; ++i) {
    DiffForm beta(cv.open(i), 1);
    for (size_t k = 0; k < bases[i].forms.size(); ++k) {
      std::vector<Gf> coeffs(T);
      for (int s = 0; s < T; ++s) coeffs[s] = sol_slices[s][offset[i] + k];
      beta += bases[i].forms[k].scaled(HS(std::move(coeffs), T));
    }
    w.beta.push_back(beta);
  }
  return w;
}

CechClass restricted_chern(std::shared_ptr<const CechCover> cover,
                           const std::map<std::pair<int, int>, TruncPoly>& transitions) {
  const CechCover& cv = *cover;
  // cocycle law for the units on triple overlaps
  auto g_at = [&](int i, int j, const RingPtr& ring) -> TruncPoly {
    auto it = transitions.find({std::min(i, j), std::max(i, j)});
    require(it != transitions.end(), errs::BadInput, "missing transition");
    TruncPoly g = it->second.reinterpret(ring);
    return i < j ? g : g.invert_unit();
  };
  for (int i = 0; i < cv.size(); ++i)
    for (int j = i + 1; j < cv.size(); ++j)
      for (int k = j + 1; k < cv.size(); ++k) {
        std::vector<int> all = merge_sets(cv.inverted(i),
                                          merge_sets(cv.inverted(j), cv.inverted(k)));
        RingPtr triple = all.empty() ? cv.base() : cv.base()->localized(all, cv.pole());
        TruncPoly lhs = g_at(i, j, triple) * g_at(j, k, triple);
        require(lhs.agrees_with(g_at(i, k, triple)), errs::CertificationFailed,
                "transitions are not a cocycle");
      }
  CechClass cls = CechClass::zero(std::move(cover));
  for (const auto& [ij, g] : transitions) {
    RingPtr ov = cv.overlap(ij.first, ij.second);
    TruncPoly gg = g.reinterpret(ov);
    auto dl = dlog_components(gg);
    DiffForm f(ov, 1);
    for (int i = 0; i < ov->nvars(); ++i) f.set_comp({i}, dl[i]);
    if (!f.is_zero()) cls.alpha[ij] = f;
  }
  cls.verify_cocycle();
  return cls;
}

CechClass dual_class(const CechClass& cls, const CechClass& canonical) {
  return canonical - cls;
}

bool chern_condition(const CechClass& cL, const CechClass& rho, const CechClass& cK,
                     const DiffForm& theta_form, int sign) {
  const auto& cover = cL.cover;
  const int p = cover->base()->p;
  CechClass theta_cls = CechClass::zero(cover);
  for (int i = 0; i < cover->size(); ++i)
    theta_cls.gamma[i] = theta_form.is_zero()
                             ? DiffForm(cover->twisted_open(i), 1)
                             : theta_form.reinterpret(cover->twisted_open(i));
  Gf half = gf_inv(Gf(2, p));
  CechClass combo = cL - rho - cK.scaled(half) - theta_cls.scaled(Gf(sign, p));
  return is_coboundary(combo).has_value();
}

}  // namespace rqa
