#ifndef RQA_TEST_HELPERS_HPP
#define RQA_TEST_HELPERS_HPP

#include <vector>

#include "rqa/cartier.hpp"
#include "rqa/diff_form.hpp"
#include "rqa/trunc_poly.hpp"

namespace rqa::testing {

inline TruncPoly rand_poly(Rng& rng, const RingPtr& R, int hdepth = 1, int density = 3) {
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

inline DiffForm rand_one_form(Rng& rng, const RingPtr& R, int hdepth = 1, int density = 2) {
  DiffForm a(R, 1);
  for (int i = 0; i < R->nvars(); ++i) a.set_comp({i}, rand_poly(rng, R, hdepth, density));
  return a;
}

/// Random closed 1-form: an exact piece plus closed monomial pieces
/// x^(p*a) * x_i^(p*b + p-1) dx_i within the windows.
inline DiffForm rand_closed_one_form(Rng& rng, const RingPtr& R, int hdepth = 1) {
  DiffForm a = d(DiffForm::function(R, rand_poly(rng, R, hdepth, 3)));
  const int p = R->p;
  for (int i = 0; i < R->nvars(); ++i) {
    if (rng.uniform(0, 1) == 0) continue;
    Mono m(R->nvars(), 0);
    bool ok = true;
    for (int j = 0; j < R->nvars(); ++j) {
      const VarInfo& v = R->vars[j];
      int maxmult = v.hi / p;
      int mult = rng.uniform(0, std::max(0, maxmult));
      m[j] = (j == i) ? p * std::min(mult, (v.hi - (p - 1)) / p) + (p - 1) : p * mult;
      if (m[j] > v.hi || m[j] < v.lo) ok = false;
    }
    if (!ok) continue;
    std::vector<Gf> c(rng.uniform(1, hdepth));
    for (auto& g : c) g = Gf(rng.uniform(0, p - 1), p);
    DiffForm piece(R, 1);
    piece.set_comp({i}, TruncPoly::monomial(R, m, HS(std::move(c), R->htrunc)));
    a += piece;
  }
  return a;
}

/// All h-free ring elements (use only on tiny rings).
inline std::vector<TruncPoly> all_hfree_polys(const RingPtr& R) {
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

inline std::vector<TruncPoly> all_hfree_units(const RingPtr& R) {
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

}  // namespace rqa::testing

#endif
