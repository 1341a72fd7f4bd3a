#include "rqa/trunc_poly.hpp"

#include <algorithm>
#include <sstream>

namespace rqa {

void TruncPoly::check_window(const Mono& m) const {
  require(static_cast<int>(m.size()) == ring_->nvars(), errs::BadInput,
          "exponent vector has the wrong length");
  for (int i = 0; i < ring_->nvars(); ++i) {
    const VarInfo& v = ring_->vars[i];
    require(m[i] >= v.lo && m[i] <= v.hi, errs::WindowOverflow,
            v.name + "^" + std::to_string(m[i]) + " outside window [" +
                std::to_string(v.lo) + "," + std::to_string(v.hi) + "]");
  }
}

void TruncPoly::add_term(Mono m, const HS& c) {
  // Ring elements live in k[...][h]/h^N; scalar precision never exceeds N.
  // A zero coefficient is dropped when it carries at least the background
  // precision (absent already means zero mod h^background); zeros of lower
  // precision must stay, since they degrade that monomial below background.
  HS cc = c.trunc() > ring_->htrunc ? c.truncated(ring_->htrunc) : c;
  if (cc.is_zero() && cc.trunc() >= background_) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), cc);
  } else {
    it->second += cc;
    if (it->second.is_zero() && it->second.trunc() >= background_) terms_.erase(it);
  }
}

TruncPoly operator+(const TruncPoly& a, const TruncPoly& b) {
  if (!a.ring_) return b;
  if (!b.ring_) return a;
  require_same_ring(a.ring_, b.ring_);
  TruncPoly r(a.ring_, std::min(a.background_, b.background_));
  for (const auto& [m, c] : a.terms_) r.add_term(m, c + b.coeff(m));
  for (const auto& [m, c] : b.terms_)
    if (a.terms_.find(m) == a.terms_.end()) r.add_term(m, c + a.coeff(m));
  return r;
}

TruncPoly operator-(const TruncPoly& a) {
  TruncPoly r = a;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

TruncPoly operator-(const TruncPoly& a, const TruncPoly& b) { return a + (-b); }

TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
  if (!a.ring_) return a;  // exact zero absorbs
  if (!b.ring_) return b;
  require_same_ring(a.ring_, b.ring_);
  const RingDesc& R = *a.ring_;
  long bg = std::min<long>(long(a.background_) + b.valuation(),
                           long(b.background_) + a.valuation());
  TruncPoly r(a.ring_, static_cast<int>(std::min<long>(bg, kExactOrder)));
  Mono m(R.nvars());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      bool dead = false;
      for (int i = 0; i < R.nvars(); ++i) {
        m[i] = ma[i] + mb[i];
        const VarInfo& v = R.vars[i];
        if (v.nilpotent && m[i] >= R.p) {
          dead = true;
          break;
        }
        require(m[i] >= v.lo && m[i] <= v.hi, errs::WindowOverflow,
                "product leaves the window of " + v.name);
      }
      if (dead) continue;
      r.add_term(m, (ca * cb).truncated(r.background_));
    }
  }
  return r;
}

TruncPoly TruncPoly::scaled(const HS& c) const {
  if (!ring_) return *this;
  long bg = std::min<long>(long(background_) + c.valuation(), long(c.trunc()) + valuation());
  TruncPoly r(ring_, static_cast<int>(std::min<long>(bg, kExactOrder)));
  for (const auto& [m, x] : terms_) r.add_term(m, (x * c).truncated(r.background_));
  return r;
}

TruncPoly TruncPoly::scaled(Gf c) const {
  TruncPoly r(ring_, background_);
  for (const auto& [m, x] : terms_) {
    std::vector<Gf> v;
    v.reserve(x.coeffs().size());
    for (Gf g : x.coeffs()) v.push_back(g * c);
    r.add_term(m, HS(std::move(v), x.trunc()));
  }
  return r;
}

bool operator==(const TruncPoly& a, const TruncPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (!same_ring(a.ring_, b.ring_) || a.background_ != b.background_) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  auto it = a.terms_.begin();
  auto jt = b.terms_.begin();
  for (; it != a.terms_.end(); ++it, ++jt)
    if (it->first != jt->first || !(it->second == jt->second)) return false;
  return true;
}

bool TruncPoly::agrees_with(const TruncPoly& b, int horder) const {
  if (ring_ && b.ring_) require_same_ring(ring_, b.ring_);
  for (const auto& [m, c] : terms_)
    if (!c.agrees_with(b.coeff(m), horder)) return false;
  for (const auto& [m, c] : b.terms_)
    if (terms_.find(m) == terms_.end() && !c.agrees_with(coeff(m), horder)) return false;
  return true;
}

TruncPoly TruncPoly::truncated(int horder) const {
  TruncPoly r(ring_, std::min(horder, background_));
  for (const auto& [m, c] : terms_) r.add_term(m, c.truncated(horder));
  return r;
}

TruncPoly TruncPoly::divide_exact_h(int k) const {
  require(k <= background_, errs::NotDivisible,
          "division by h^" + std::to_string(k) + " exceeds the background precision");
  TruncPoly r(ring_, background_ - k);
  for (const auto& [m, c] : terms_) r.add_term(m, c.divide_exact(k));
  return r;
}

TruncPoly TruncPoly::derivative(int i) const {
  TruncPoly r(ring_, background_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Gf e(m[i], ring_->p);
    if (e.is_zero()) continue;
    Mono d = m;
    d[i] -= 1;
    const VarInfo& v = ring_->vars[i];
    require(d[i] >= v.lo, errs::WindowOverflow,
            "derivative leaves the pole window of " + v.name);
    HS scaled = c;
    {
      std::vector<Gf> w;
      w.reserve(scaled.coeffs().size());
      for (Gf g : scaled.coeffs()) w.push_back(g * e);
      scaled = HS(std::move(w), c.trunc());
    }
    r.add_term(std::move(d), scaled);
  }
  return r;
}

TruncPoly TruncPoly::pow(int e) const {
  require(e >= 0, errs::BadInput, "negative ring power");
  require(ring_ != nullptr, errs::BadInput, "power of the ring-agnostic zero");
  TruncPoly acc = constant(ring_, 1);
  TruncPoly base = *this;
  while (e) {
    if (e & 1) acc *= base;
    if ((e >>= 1)) base *= base;
  }
  return acc;
}

TruncPoly TruncPoly::pth_power() const {
  if (!ring_) return *this;
  const int p = ring_->p;
  TruncPoly r(ring_, static_cast<int>(std::min<long>(long(background_) * p, kExactOrder)));
  for (const auto& [m, c] : terms_) {
    Mono mp(m.size());
    bool dead = false;
    for (size_t i = 0; i < m.size(); ++i) {
      const VarInfo& v = ring_->vars[i];
      mp[i] = m[i] * p;
      if (v.nilpotent && mp[i] >= p) {
        dead = true;
        break;
      }
      require(mp[i] >= v.lo && mp[i] <= v.hi, errs::WindowOverflow,
              "p-th power leaves the window of " + v.name);
    }
    if (dead) continue;
    // (c(h) m)^p = c(h^p) m^p: the h-exponents multiply as well.
    const HS& c0 = c;
    long t = std::min<long>(long(c0.trunc()) * p, kExactOrder);
    std::vector<Gf> w;
    w.assign(std::min<long>(t, long(c0.size() - 1) * p + 1), Gf{});
    for (int k = 0; k < c0.size(); ++k)
      if (long(k) * p < static_cast<long>(w.size())) w[k * p] = c0.coeffs()[k];
    r.add_term(std::move(mp), HS(std::move(w), static_cast<int>(t)).truncated(r.background()));
  }
  return r;
}

TruncPoly TruncPoly::frobenius_embed_into(const RingPtr& source) const {
  const int p = ring_->p;
  TruncPoly r(source, background_);
  for (const auto& [m, c] : terms_) {
    Mono mp(m.size());
    bool dead = false;
    for (size_t i = 0; i < m.size(); ++i) {
      const VarInfo& v = source->vars[i];
      mp[i] = m[i] * p;
      if (v.nilpotent && mp[i] >= p) {
        dead = true;
        break;
      }
      require(mp[i] >= v.lo && mp[i] <= v.hi, errs::WindowOverflow,
              "embedding leaves the window of " + v.name);
    }
    if (dead) continue;
    r.add_term(std::move(mp), c.frobenius_coefficientwise());
  }
  return r;
}

TruncPoly TruncPoly::twist_rename(const RingPtr& twisted) const {
  require(twisted->nvars() == (ring_ ? ring_->nvars() : twisted->nvars()), errs::BadInput,
          "twist target has a different number of variables");
  TruncPoly r(twisted, background_);
  for (const auto& [m, c] : terms_) {
    r.check_window(m);
    r.add_term(m, c);
  }
  return r;
}

TruncPoly TruncPoly::untwist_root(const RingPtr& twisted) const {
  const int p = ring_->p;
  TruncPoly r(twisted, background_);
  for (const auto& [m, c] : terms_) {
    Mono root(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
      int e = m[i];
      int rem = ((e % p) + p) % p;
      require(rem == 0, errs::NotPthPower,
              "monomial exponent " + ring_->vars[i].name + "^" + std::to_string(e) +
                  " is not a p-th power");
      root[i] = floor_div(e, p);
    }
    // GF(p) coefficients are their own p-th roots.
    r.check_window(root);
    r.add_term(std::move(root), c);
  }
  return r;
}

TruncPoly TruncPoly::reinterpret(const RingPtr& target) const {
  if (!ring_) return TruncPoly(target);
  require(target->nvars() == ring_->nvars() && target->p == ring_->p, errs::BadInput,
          "reinterpret into an incompatible ring");
  TruncPoly r(target, background_);
  for (const auto& [m, c] : terms_) {
    r.check_window(m);
    r.add_term(m, c);
  }
  return r;
}

TruncPoly TruncPoly::substitute(const std::vector<TruncPoly>& images,
                                const RingPtr& target) const {
  require(static_cast<int>(images.size()) == (ring_ ? ring_->nvars() : 0), errs::BadInput,
          "substitution needs one image per variable");
  TruncPoly r(target);
  // Cache powers of each image as needed.
  std::vector<std::vector<TruncPoly>> powers(images.size());
  auto power = [&](int i, int e) -> const TruncPoly& {
    auto& tab = powers[i];
    if (tab.empty()) tab.push_back(TruncPoly::constant(target, 1));
    while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * images[i]);
    return tab[e];
  };
  for (const auto& [m, c] : terms_) {
    TruncPoly t = TruncPoly::constant(target, c);
    for (size_t i = 0; i < m.size(); ++i) {
      require(m[i] >= 0, errs::BadInput, "cannot substitute into a pole");
      if (m[i] > 0) t *= power(static_cast<int>(i), m[i]);
    }
    r += t;
  }
  return r.truncated(background_);
}

bool TruncPoly::is_hfree() const {
  for (const auto& [m, c] : terms_)
    if (c.size() > 1) return false;
  return true;
}

TruncPoly TruncPoly::invert_unit() const {
  require(!is_zero() && ring_, errs::NotUnit, "zero is not a unit");
  const RingDesc& R = *ring_;
  // Corner monomial: componentwise minimum of all exponents.
  Mono corner = terms_.begin()->first;
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < R.nvars(); ++i) corner[i] = std::min(corner[i], m[i]);
  auto it = terms_.find(corner);
  require(it != terms_.end(), errs::NotUnit,
          "no invertible corner term: " + str());
  HS c0 = it->second;
  require(!c0.coeff(0).is_zero(), errs::NotUnit,
          "corner coefficient vanishes at h = 0");
  for (int i = 0; i < R.nvars(); ++i)
    if (corner[i] != 0)
      require(!R.vars[i].nilpotent, errs::NotUnit,
              "corner contains the nilpotent variable " + R.vars[i].name);

  // f = c0 * x^corner * (1 + w); invert the three factors separately.
  int N = R.htrunc;
  HS c0inv;
  {
    // c0^{-1} = a0^{-1} * sum_k (1 - c0/a0)^k, a geometric series in a
    // term of positive h-valuation.
    HS one = hs_const(1, R.p, c0.trunc());
    HS u0 = HS(gf_inv(c0.coeff(0)), c0.trunc());
    HS t = one - c0 * u0;
    HS geom = one, pw = one;
    for (int k = 1; k < c0.trunc() && !pw.is_zero(); ++k) {
      pw *= t;
      geom += pw;
    }
    c0inv = u0 * geom;
  }
  Mono neg(R.nvars());
  for (int i = 0; i < R.nvars(); ++i) {
    neg[i] = -corner[i];
    require(neg[i] >= R.vars[i].lo && neg[i] <= R.vars[i].hi, errs::NotUnit,
            "inverse monomial leaves the window of " + R.vars[i].name);
  }
  TruncPoly w(ring_);
  for (const auto& [m, c] : terms_) {
    if (m == corner) continue;
    Mono shifted(R.nvars());
    for (int i = 0; i < R.nvars(); ++i) shifted[i] = m[i] - corner[i];
    w.add_term(std::move(shifted), c * c0inv);
  }
  // (1 + w)^{-1} = sum (-w)^k, valid only if w is nilpotent in the window.
  TruncPoly geom = constant(ring_, 1);
  TruncPoly pw = constant(ring_, 1);
  int bound = 2 * N + 2;
  for (const auto& v : R.vars) bound += v.hi - v.lo + 1;
  bool closed = w.is_zero();
  for (int k = 1; k <= bound && !closed; ++k) {
    try {
      pw = pw * (-w);
    } catch (const Error& e) {
      fail(errs::NotUnit, std::string("tail is not nilpotent: ") + e.what());
    }
    if (pw.is_zero()) {
      closed = true;
      break;
    }
    geom += pw;
  }
  require(closed, errs::NotUnit, "tail is not nilpotent inside the window");
  TruncPoly r = geom.scaled(c0inv);
  TruncPoly mono = TruncPoly::monomial(ring_, neg, hs_const(1, R.p, c0.trunc()));
  return r * mono;
}

std::vector<TruncPoly> dlog_components(const TruncPoly& f) {
  // df may step outside a pole window before the unit is divided back in,
  // so work in a widened ring and reinterpret the quotient.
  RingPtr wide = f.ring()->widened();
  TruncPoly fw = f.reinterpret(wide);
  TruncPoly inv = f.invert_unit().reinterpret(wide);
  std::vector<TruncPoly> out;
  for (int i = 0; i < f.ring()->nvars(); ++i)
    out.push_back((fw.derivative(i) * inv).reinterpret(f.ring()));
  return out;
}

std::string TruncPoly::str() const {
  if (terms_.empty() || vanishes()) return "0";
  // Stable order: graded lexicographic, constant term first.
  std::vector<const std::pair<const Mono, HS>*> ts;
  for (const auto& t : terms_) ts.push_back(&t);
  auto grade = [](const Mono& m) {
    int g = 0;
    for (int e : m) g += std::abs(e);
    return g;
  };
  std::sort(ts.begin(), ts.end(), [&](auto* a, auto* b) {
    int ga = grade(a->first), gb = grade(b->first);
    if (ga != gb) return ga < gb;
    return a->first < b->first;
  });
  std::ostringstream os;
  bool first = true;
  for (auto* t : ts) {
    const auto& [m, c] = *t;
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    std::string mono;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->vars[i].name;
      if (m[i] != 1) mono += "^" + std::to_string(m[i]);
    }
    std::string cs = hs_str(c);
    bool simple = c.size() <= 1 || c.valuation() == c.size() - 1;
    if (mono.empty()) {
      os << (simple ? cs : "(" + cs + ")");
    } else if (cs == "1") {
      os << mono;
    } else {
      os << (simple ? cs : "(" + cs + ")") << "*" << mono;
    }
  }
  return os.str();
}

}  // namespace rqa
