#include "rqa/ideal.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace rqa {

namespace {

// Flattened monomial: variable exponents followed by the h exponent.
// Graded lexicographic, h least significant.
struct FlatLess {
  bool operator()(const Mono& a, const Mono& b) const {
    int da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da < db;
    return a < b;
  }
};

using FlatPoly = std::map<Mono, Gf, FlatLess>;

int total_deg(const Mono& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

bool divides(const Mono& a, const Mono& b) {  // a | b
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Mono mono_sub(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Mono mono_add(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

void fp_add(FlatPoly& f, const Mono& m, Gf c) {
  if (c.is_zero()) return;
  auto it = f.find(m);
  if (it == f.end()) {
    f.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) f.erase(it);
  }
}

FlatPoly fp_mul_term(const FlatPoly& f, const Mono& m, Gf c) {
  FlatPoly r;
  for (const auto& [mf, cf] : f) fp_add(r, mono_add(mf, m), cf * c);
  return r;
}

void fp_axpy(FlatPoly& f, const FlatPoly& g, const Mono& m, Gf c) {
  for (const auto& [mg, cg] : g) fp_add(f, mono_add(mg, m), cg * c);
}

}  // namespace

struct IdealPresentation::Impl {
  int p = 3;
  int nv = 0;       // ring variables (h is slot nv)
  int ngens = 0;    // user generators
  int nall = 0;     // user + quotient generators
  std::vector<FlatPoly> basis;
  std::vector<std::vector<FlatPoly>> expr;  // basis element as combo of inputs
  std::vector<Mono> gen_shift;              // pole-clearing monomial per user generator
  RingPtr verify_ring;
};

namespace {

// TruncPoly -> flat polynomial; negative exponents are cleared by a
// monomial shift (a unit of the localized ring), returned in *shift.
FlatPoly flatten(const TruncPoly& f, int nv, Mono* shift) {
  Mono sh(nv + 1, 0);
  for (const auto& [m, c] : f.terms())
    for (int i = 0; i < nv; ++i) sh[i] = std::max(sh[i], -m[i]);
  if (shift) *shift = sh;
  FlatPoly out;
  for (const auto& [m, c] : f.terms())
    for (int k = 0; k < c.size(); ++k) {
      if (c.coeffs()[k].is_zero()) continue;
      Mono fm(nv + 1, 0);
      for (int i = 0; i < nv; ++i) fm[i] = m[i] + sh[i];
      fm[nv] = k;
      fp_add(out, fm, c.coeffs()[k]);
    }
  return out;
}

TruncPoly unflatten(const FlatPoly& f, const RingPtr& ring, const Mono& unshift) {
  TruncPoly out(ring);
  for (const auto& [fm, c] : f) {
    if (fm.back() >= ring->htrunc) continue;  // h^N = 0 in the ring
    Mono m(ring->nvars());
    bool dead = false;
    for (int i = 0; i < ring->nvars(); ++i) {
      m[i] = fm[i] - unshift[i];
      if (ring->vars[i].nilpotent && m[i] >= ring->p) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    out.add_term(m, HS(Gf(c.v, c.p), ring->htrunc).shifted(fm.back()).truncated(ring->htrunc));
  }
  return out;
}

// Divide f by the basis, tracking cofactors; returns the remainder.
FlatPoly fp_reduce(const FlatPoly& f, const std::vector<FlatPoly>& basis,
                   std::vector<FlatPoly>* cof) {
  FlatPoly work = f, rem;
  if (cof) cof->assign(basis.size(), FlatPoly{});
  while (!work.empty()) {
    auto lt = *work.rbegin();
    bool reduced = false;
    for (size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].empty()) continue;
      const auto& glt = *basis[i].rbegin();
      if (!divides(glt.first, lt.first)) continue;
      Mono q = mono_sub(lt.first, glt.first);
      Gf qc = lt.second * gf_inv(glt.second);
      if (cof) fp_add((*cof)[i], q, qc);
      fp_axpy(work, basis[i], q, -qc);
      reduced = true;
      break;
    }
    if (!reduced) {
      fp_add(rem, lt.first, lt.second);
      fp_add(work, lt.first, -lt.second);
    }
  }
  return rem;
}

}  // namespace

IdealPresentation::IdealPresentation(RingPtr ring, std::vector<TruncPoly> generators,
                                     int degree_cap)
    : ring_(std::move(ring)), gens_(std::move(generators)), cap_(degree_cap) {
  if (cap_ < 0) {
    cap_ = ring_->htrunc;
    for (const auto& v : ring_->vars) cap_ += std::max(std::abs(v.hi), std::abs(v.lo)) + v.hi - v.lo;
    cap_ += 2 * ring_->p;
  }
}

void IdealPresentation::complete() const {
  if (impl_) return;
  auto impl = std::make_shared<Impl>();
  const int p = ring_->p;
  const int nv = ring_->nvars();
  impl->p = p;
  impl->nv = nv;
  impl->ngens = static_cast<int>(gens_.size());

  // Inputs: user generators (pole-cleared), then the quotient relations.
  std::vector<FlatPoly> inputs;
  impl->gen_shift.clear();
  for (const auto& g : gens_) {
    Mono sh;
    inputs.push_back(flatten(g, nv, &sh));
    impl->gen_shift.push_back(sh);
  }
  for (int i = 0; i < nv; ++i)
    if (ring_->vars[i].nilpotent) {
      Mono m(nv + 1, 0);
      m[i] = p;
      FlatPoly q;
      fp_add(q, m, Gf(1, p));
      inputs.push_back(q);
    }
  {
    Mono m(nv + 1, 0);
    m[nv] = ring_->htrunc;
    FlatPoly q;
    fp_add(q, m, Gf(1, p));
    inputs.push_back(q);
  }
  impl->nall = static_cast<int>(inputs.size());

  // Extended Buchberger: every basis element remembers its expression in
  // the inputs so membership queries come with certificates.
  auto add_elem = [&](FlatPoly f, std::vector<FlatPoly> e) {
    if (f.empty()) return false;
    Gf lc = f.rbegin()->second;
    Gf inv = gf_inv(lc);
    FlatPoly fn;
    for (const auto& [m, c] : f) fp_add(fn, m, c * inv);
    for (auto& q : e) {
      FlatPoly qn;
      for (const auto& [m, c] : q) fp_add(qn, m, c * inv);
      q = std::move(qn);
    }
    impl->basis.push_back(std::move(fn));
    impl->expr.push_back(std::move(e));
    return true;
  };

  for (int i = 0; i < impl->nall; ++i) {
    std::vector<FlatPoly> e(impl->nall);
    fp_add(e[i], Mono(nv + 1, 0), Gf(1, p));
    add_elem(inputs[i], std::move(e));
  }

  using Pair = std::pair<int, std::pair<int, int>>;  // (lcm degree, (i, j))
  auto cmp = [](const Pair& a, const Pair& b) { return a.first > b.first; };
  std::priority_queue<Pair, std::vector<Pair>, decltype(cmp)> queue(cmp);
  auto push_pairs = [&](int k) {
    for (int i = 0; i < k; ++i) {
      if (impl->basis[i].empty() || impl->basis[k].empty()) continue;
      Mono l = mono_lcm(impl->basis[i].rbegin()->first, impl->basis[k].rbegin()->first);
      queue.push({total_deg(l), {i, k}});
    }
  };
  for (int k = 0; k < static_cast<int>(impl->basis.size()); ++k) push_pairs(k);

  while (!queue.empty()) {
    auto [deg, ij] = queue.top();
    queue.pop();
    if (deg > cap_) continue;
    auto [i, j] = ij;
    const Mono &mi = impl->basis[i].rbegin()->first, &mj = impl->basis[j].rbegin()->first;
    // product criterion
    bool coprime = true;
    for (size_t k = 0; k < mi.size(); ++k)
      if (std::min(mi[k], mj[k]) > 0) coprime = false;
    if (coprime) continue;
    Mono l = mono_lcm(mi, mj);
    FlatPoly s;
    fp_axpy(s, impl->basis[i], mono_sub(l, mi), Gf(1, p));
    fp_axpy(s, impl->basis[j], mono_sub(l, mj), Gf(-1, p));
    std::vector<FlatPoly> se(impl->nall);
    for (int t = 0; t < impl->nall; ++t) {
      fp_axpy(se[t], impl->expr[i][t], mono_sub(l, mi), Gf(1, p));
      fp_axpy(se[t], impl->expr[j][t], mono_sub(l, mj), Gf(-1, p));
    }
    std::vector<FlatPoly> cof;
    FlatPoly rem = fp_reduce(s, impl->basis, &cof);
    if (rem.empty()) continue;
    for (size_t b = 0; b < impl->basis.size(); ++b)
      for (const auto& [qm, qc] : cof[b])
        for (int t = 0; t < impl->nall; ++t) fp_axpy(se[t], impl->expr[b][t], qm, -qc);
    if (add_elem(std::move(rem), std::move(se))) push_pairs(static_cast<int>(impl->basis.size()) - 1);
  }

  // Verification ring: windows wide enough for every certificate term.
  auto vr = std::make_shared<RingDesc>(*ring_);
  for (auto& v : vr->vars)
    if (!v.nilpotent) {
      v.hi = std::max(v.hi, cap_);
      v.lo = std::min(v.lo, -cap_);
    }
  impl->verify_ring = vr;
  impl_ = std::move(impl);
}

int IdealPresentation::basis_size() const {
  complete();
  return static_cast<int>(impl_->basis.size());
}

Membership IdealPresentation::contains(const TruncPoly& f) const {
  complete();
  const auto& im = *impl_;
  const int nv = im.nv;

  Membership out;
  out.verify_ring = im.verify_ring;

  Mono fshift;
  FlatPoly ff = flatten(f, nv, &fshift);
  std::vector<FlatPoly> cof;
  FlatPoly rem = fp_reduce(ff, im.basis, &cof);

  // In a localization, f belongs to the ideal iff x^k f does for some k:
  // saturate by the product of the inverted variables, up to the cap.
  Mono sat(nv + 1, 0);
  for (int i = 0; i < nv; ++i)
    if (ring_->vars[i].lo < 0) sat[i] = 1;
  bool has_loc = std::any_of(sat.begin(), sat.end(), [](int e) { return e != 0; });
  for (int k = 1; !rem.empty() && has_loc && k <= cap_; ++k) {
    ff = fp_mul_term(ff, sat, Gf(1, ring_->p));
    for (int i = 0; i < nv; ++i) fshift[i] += sat[i];
    if (total_deg(ff.rbegin()->first) > cap_) break;
    rem = fp_reduce(ff, im.basis, &cof);
  }
  if (!rem.empty()) {
    out.member = false;
    out.normal_form_debug = unflatten(rem, im.verify_ring, fshift);
    return out;
  }
  out.member = true;

  // Collapse to cofactors on the user generators; the quotient relations
  // contribute zero in the ring.  x^fshift * f = sum q_t * (x^{gshift_t} g_t).
  std::vector<FlatPoly> on_inputs(im.nall);
  for (size_t b = 0; b < im.basis.size(); ++b)
    for (const auto& [qm, qc] : cof[b])
      for (int t = 0; t < im.nall; ++t) fp_axpy(on_inputs[t], im.expr[b][t], qm, qc);

  // Verify by multiplication in the widened ring.
  TruncPoly sum(im.verify_ring);
  std::vector<TruncPoly> cofs;
  TruncPoly fshift_mono(im.verify_ring);
  {
    Mono m(nv, 0);
    for (int i = 0; i < nv; ++i) m[i] = fshift[i];
    fshift_mono = TruncPoly::monomial(im.verify_ring, m, hs_const(1, ring_->p, ring_->htrunc));
  }
  for (int t = 0; t < im.ngens; ++t) {
    // move the generator's pole-clearing shift into the cofactor
    TruncPoly q = unflatten(on_inputs[t], im.verify_ring, Mono(nv + 1, 0));
    Mono gs(nv, 0);
    for (int i = 0; i < nv; ++i) gs[i] = im.gen_shift[t][i];
    q = q * TruncPoly::monomial(im.verify_ring, gs, hs_const(1, ring_->p, ring_->htrunc));
    cofs.push_back(q);
    sum += q * gens_[t].reinterpret(im.verify_ring);
  }
  TruncPoly target = f.reinterpret(im.verify_ring) * fshift_mono;
  // divide the pole-clearing shift of f back out of the cofactors
  if (sum == target) {
    out.verified = true;
    if (std::any_of(fshift.begin(), fshift.end(), [](int e) { return e != 0; })) {
      Mono neg(nv, 0);
      for (int i = 0; i < nv; ++i) neg[i] = -fshift[i];
      TruncPoly inv = TruncPoly::monomial(im.verify_ring, neg, hs_const(1, ring_->p, ring_->htrunc));
      for (auto& q : cofs) q = q * inv;
    }
    out.cofactors = std::move(cofs);
  } else {
    out.verified = false;
  }
  return out;
}

}  // namespace rqa
