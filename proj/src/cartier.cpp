#include "rqa/cartier.hpp"

namespace rqa {

RingBasis::RingBasis(const RingPtr& r) : ring(r) {
  Mono m(r->nvars());
  for (int i = 0; i < r->nvars(); ++i) m[i] = r->vars[i].lo;
  while (true) {
    monos.push_back(m);
    int i = r->nvars() - 1;
    for (; i >= 0; --i) {
      if (m[i] < r->vars[i].hi) {
        ++m[i];
        break;
      }
      m[i] = r->vars[i].lo;
    }
    if (i < 0) break;
  }
  for (int k = 0; k < dim(); ++k) index.emplace(monos[k], k);
}

bool closed_in_widened(const DiffForm& alpha) {
  if (alpha.degree() == 2) return false;
  return d(alpha.reinterpret(alpha.ring()->widened())).is_zero();
}

DiffForm cartier(const DiffForm& alpha) {
  require(alpha.degree() == 1, errs::BadInput, "Cartier operator expects a 1-form");
  require(closed_in_widened(alpha), errs::NotClosed, "form is not closed");
  const RingPtr& R = alpha.ring();
  RingPtr wide = R->widened();
  RingPtr tw = R->twisted();
  DiffForm out(tw, 1);
  for (int i = 0; i < R->nvars(); ++i) {
    TruncPoly fi = alpha.comp({i}).reinterpret(wide);
    for (int k = 0; k < R->p - 1; ++k) fi = fi.derivative(i);
    out.set_comp({i}, (-fi).untwist_root(tw));
  }
  return out;
}

namespace {

// Coefficient vector of the h^slice part of f on the given basis.
std::vector<Gf> slice_vector(const TruncPoly& f, const RingBasis& basis, int slice, int p) {
  std::vector<Gf> v(basis.dim(), Gf(0, p));
  for (const auto& [m, c] : f.terms()) {
    if (slice >= c.trunc() || slice >= c.size()) continue;
    auto it = basis.index.find(m);
    require(it != basis.index.end(), errs::WindowOverflow, "term outside basis window");
    v[it->second] = c.coeffs()[slice];
  }
  return v;
}

TruncPoly from_slices(const RingPtr& ring, const RingBasis& basis,
                      const std::vector<std::vector<Gf>>& slices, int trunc) {
  TruncPoly f(ring, trunc);
  for (int k = 0; k < basis.dim(); ++k) {
    std::vector<Gf> c(slices.size());
    for (size_t s = 0; s < slices.size(); ++s) c[s] = slices[s][k];
    HS coeff(std::move(c), trunc);
    f.add_term(basis.monos[k], coeff);
  }
  return f;
}

// Matrix of d/dx_i from `cols` monomials to `rows` monomials.
void add_derivative_block(GfMatrix& A, const RingBasis& cols, const RingBasis& rows,
                          int i, int row_offset, int p) {
  for (int c = 0; c < cols.dim(); ++c) {
    const Mono& m = cols.monos[c];
    Gf e(m[i], p);
    if (e.is_zero()) continue;
    Mono dm = m;
    dm[i] -= 1;
    auto it = rows.index.find(dm);
    require(it != rows.index.end(), errs::WindowOverflow, "derivative escapes row basis");
    A.add(row_offset + it->second, c, e);
  }
}

}  // namespace

std::optional<TruncPoly> solve_primitive(const DiffForm& alpha) {
  require(alpha.degree() == 1, errs::BadInput, "primitive of a 1-form");
  require(closed_in_widened(alpha), errs::NotClosed, "form is not closed");
  const RingPtr& R = alpha.ring();
  const int p = R->p;
  RingBasis unknowns(R);
  RingBasis rows(R->widened());
  const int n = R->nvars();
  const int T = alpha.htrunc();

  GfMatrix A(n * rows.dim(), unknowns.dim(), p);
  for (int i = 0; i < n; ++i) add_derivative_block(A, unknowns, rows, i, i * rows.dim(), p);

  std::vector<std::vector<Gf>> slices;
  for (int s = 0; s < T; ++s) {
    std::vector<Gf> b(n * rows.dim(), Gf(0, p));
    for (int i = 0; i < n; ++i) {
      std::vector<Gf> bi = slice_vector(alpha.comp({i}).reinterpret(rows.ring), rows, s, p);
      for (int k = 0; k < rows.dim(); ++k) b[i * rows.dim() + k] = bi[k];
    }
    auto x = solve_linear(A, b);
    if (!x) return std::nullopt;
    slices.push_back(*x);
  }
  return from_slices(R, unknowns, slices, T);
}

std::optional<TruncPoly> solve_dlog(const DiffForm& alpha) {
  require(alpha.degree() == 1, errs::BadInput, "dlog primitive of a 1-form");
  require(closed_in_widened(alpha), errs::NotClosed, "form is not closed");
  const RingPtr& R = alpha.ring();
  const int p = R->p;
  RingBasis unknowns(R);
  RingBasis rows(R->widened(2));
  const int n = R->nvars();
  const int T = std::min(R->htrunc, alpha.htrunc());
  const int D = unknowns.dim();
  const int RD = rows.dim();

  // Unknowns: coefficients of g, all h-slices at once (the product g*alpha
  // mixes slices).  Equations: dg - g*alpha = 0 componentwise.
  GfMatrix A(n * RD * T, D * T, p);
  for (int s = 0; s < T; ++s)
    for (int i = 0; i < n; ++i) {
      // d/dx_i block at slice s.
      for (int c = 0; c < D; ++c) {
        const Mono& m = unknowns.monos[c];
        Gf e(m[i], p);
        if (e.is_zero()) continue;
        Mono dm = m;
        dm[i] -= 1;
        A.add((s * n + i) * RD + rows.index.at(dm), s * D + c, e);
      }
      // -(g * alpha_i) contributions: column (m, s') hits row (m + m', s' + s'').
      TruncPoly ai = alpha.comp({i});
      for (const auto& [ma, ca] : ai.terms())
        for (int sa = 0; sa < std::min(ca.size(), T); ++sa) {
          Gf coeff = ca.coeffs()[sa];
          if (coeff.is_zero() || s < sa) continue;
          int sg = s - sa;
          for (int c = 0; c < D; ++c) {
            Mono sum = unknowns.monos[c];
            bool dead = false;
            for (int k = 0; k < n; ++k) {
              sum[k] += ma[k];
              if (R->vars[k].nilpotent && sum[k] >= p) {
                dead = true;
                break;
              }
            }
            if (dead) continue;
            auto it = rows.index.find(sum);
            require(it != rows.index.end(), errs::WindowOverflow, "product escapes row basis");
            A.add((s * n + i) * RD + it->second, sg * D + c, -coeff);
          }
        }
    }

  auto basis = kernel_basis(A);
  // A usable witness must be a unit: nonzero constant coefficient at h^0.
  Mono m0(n, 0);
  int const_col = unknowns.index.at(m0);  // slice 0 block
  for (const auto& v : basis) {
    if (v[const_col].is_zero()) continue;
    Gf scale = gf_inv(v[const_col]);
    std::vector<std::vector<Gf>> slices(T);
    for (int s = 0; s < T; ++s) {
      slices[s].resize(D);
      for (int c = 0; c < D; ++c) slices[s][c] = v[s * D + c] * scale;
    }
    return from_slices(R, unknowns, slices, T);
  }
  return std::nullopt;
}

std::vector<TruncPoly> log_defect(const DiffForm& alpha) {
  require(alpha.degree() == 1, errs::BadInput, "log defect of a 1-form");
  require(closed_in_widened(alpha), errs::NotClosed, "form is not closed");
  const RingPtr& R = alpha.ring();
  RingPtr wide = R->widened(R->p);
  std::vector<TruncPoly> out;
  for (int i = 0; i < R->nvars(); ++i) {
    TruncPoly ai = alpha.comp({i}).reinterpret(wide);
    TruncPoly der = ai;
    for (int k = 0; k < R->p - 1; ++k) der = der.derivative(i);
    out.push_back(ai.pth_power() + der);
  }
  return out;
}

std::optional<DiffForm> solve_potential(const DiffForm& beta) {
  require(beta.degree() == 2, errs::BadInput, "potential of a 2-form");
  const RingPtr& R = beta.ring();
  const int p = R->p;
  const int n = R->nvars();
  RingBasis unknowns(R);
  RingBasis rows(R->widened());
  const int D = unknowns.dim();
  const int RD = rows.dim();
  const int T = beta.htrunc();

  // Unknown 1-form alpha, n*D coefficients per slice;
  // equations index pairs i<j: d_i alpha_j - d_j alpha_i = beta_ij.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  GfMatrix A(static_cast<int>(pairs.size()) * RD, n * D, p);
  for (size_t q = 0; q < pairs.size(); ++q) {
    auto [i, j] = pairs[q];
    GfMatrix di(RD, D, p), dj(RD, D, p);
    add_derivative_block(di, unknowns, rows, i, 0, p);
    add_derivative_block(dj, unknowns, rows, j, 0, p);
    for (int r = 0; r < RD; ++r)
      for (int c = 0; c < D; ++c) {
        if (di.at(r, c)) A.add(static_cast<int>(q) * RD + r, j * D + c, Gf::raw(di.at(r, c), p));
        if (dj.at(r, c)) A.add(static_cast<int>(q) * RD + r, i * D + c, -Gf::raw(dj.at(r, c), p));
      }
  }

  std::vector<std::vector<std::vector<Gf>>> comp_slices(n);
  for (int s = 0; s < T; ++s) {
    std::vector<Gf> b(pairs.size() * RD, Gf(0, p));
    for (size_t q = 0; q < pairs.size(); ++q) {
      auto [i, j] = pairs[q];
      std::vector<Gf> bq =
          slice_vector(beta.comp({i, j}).reinterpret(rows.ring), rows, s, p);
      for (int k = 0; k < RD; ++k) b[q * RD + k] = bq[k];
    }
    auto x = solve_linear(A, b);
    if (!x) return std::nullopt;
    for (int i = 0; i < n; ++i)
      comp_slices[i].push_back(std::vector<Gf>(x->begin() + i * D, x->begin() + (i + 1) * D));
  }
  DiffForm out(R, 1);
  for (int i = 0; i < n; ++i) out.set_comp({i}, from_slices(R, unknowns, comp_slices[i], T));
  return out;
}

DiffForm twist_rename_form(const DiffForm& alpha, const RingPtr& twisted) {
  DiffForm out(twisted, alpha.degree());
  for (const auto& [idx, f] : alpha.comps()) out.set_comp(idx, f.twist_rename(twisted));
  return out;
}

}  // namespace rqa
