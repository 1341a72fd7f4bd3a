#include "rqa/weyl.hpp"

#include <algorithm>
#include <sstream>

namespace rqa {

namespace {

void require_same(const WeylPtr& a, const WeylPtr& b) {
  require(a && b && (a == b || *a == *b), errs::MixedSession,
          "Weyl elements from different sessions");
}

// k! C(s,k) C(t,k) mod p, all arguments below p.
Gf rewrite_coeff(int s, int t, int k, int p) {
  Gf r(1, p);
  for (int j = 0; j < k; ++j) {
    r *= Gf(s - j, p);
    r *= Gf(t - j, p);
  }
  // k! C(s,k) C(t,k) = falling(s,k) falling(t,k) / k!
  Gf kfact(1, p);
  for (int j = 2; j <= k; ++j) kfact *= Gf(j, p);
  return r * gf_inv(kfact);
}

}  // namespace

WeylElement WeylElement::constant(const WeylPtr& W, const HS& c) {
  WeylElement e(W);
  e.add_term(Mono(2 * W->n, 0), c);
  return e;
}
WeylElement WeylElement::constant(const WeylPtr& W, int c) {
  return constant(W, hs_const(c, W->p, W->N));
}
WeylElement WeylElement::h(const WeylPtr& W, int power) {
  return constant(W, hs_h(W->p, W->N, power));
}
WeylElement WeylElement::x(const WeylPtr& W, int i, int exp) {
  Mono m(2 * W->n, 0);
  m[i] = exp;
  return monomial(W, std::move(m), hs_const(1, W->p, W->N));
}
WeylElement WeylElement::y(const WeylPtr& W, int i, int exp) {
  Mono m(2 * W->n, 0);
  m[W->n + i] = exp;
  return monomial(W, std::move(m), hs_const(1, W->p, W->N));
}
WeylElement WeylElement::monomial(const WeylPtr& W, Mono m, const HS& c) {
  WeylElement e(W);
  require(static_cast<int>(m.size()) == 2 * W->n, errs::BadInput, "bad monomial arity");
  for (int v : m) require(v >= 0 && v < W->p, errs::BadInput, "exponent outside [0,p)");
  e.add_term(std::move(m), c);
  return e;
}

void WeylElement::add_term(Mono m, const HS& c) {
  // Zero coefficients of at least background precision are absent; zeros
  // of lower precision stay, marking the reduced knowledge there.
  HS cc = c.trunc() > ring_->N ? c.truncated(ring_->N) : c;
  if (cc.is_zero() && cc.trunc() >= background_) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), cc);
  } else {
    it->second += cc;
    if (it->second.is_zero() && it->second.trunc() >= background_) terms_.erase(it);
  }
}

bool WeylElement::vanishes() const {
  for (const auto& [m, c] : terms_)
    if (!c.is_zero()) return false;
  return true;
}

int WeylElement::valuation() const {
  int v = background_;
  for (const auto& [m, c] : terms_) v = std::min(v, c.valuation());
  return v;
}

HS WeylElement::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? HS(background_) : it->second;
}

Gf WeylElement::scalar_part() const {
  HS c = coeff(Mono(2 * ring_->n, 0));
  if (c.is_zero()) return Gf(0, ring_->p);
  return c.coeff(0);
}

WeylElement operator+(const WeylElement& a, const WeylElement& b) {
  if (!a.ring_) return b;
  if (!b.ring_) return a;
  require_same(a.ring_, b.ring_);
  WeylElement r(a.ring_, std::min(a.background_, b.background_));
  for (const auto& [m, c] : a.terms_) r.add_term(m, c + b.coeff(m));
  for (const auto& [m, c] : b.terms_)
    if (a.terms_.find(m) == a.terms_.end()) r.add_term(m, c + a.coeff(m));
  return r;
}
WeylElement operator-(const WeylElement& a) {
  WeylElement r = a;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}
WeylElement operator-(const WeylElement& a, const WeylElement& b) { return a + (-b); }

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  if (!a.ring_) return a;  // exact zero absorbs
  if (!b.ring_) return b;
  require_same(a.ring_, b.ring_);
  const WeylRing& W = *a.ring_;
  const int n = W.n, p = W.p;
  long bg = std::min<long>(long(a.background_) + b.valuation(),
                           long(b.background_) + a.valuation());
  WeylElement r(a.ring_, static_cast<int>(std::min<long>(bg, kExactOrder)));
  // x^ax y^ay * x^bx y^by: commute y^ay past x^bx one pair at a time:
  // y^s x^t = sum_k k! C(s,k) C(t,k) h^k x^{t-k} y^{s-k}.
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Mono k(n, 0);
      while (true) {
        Gf coeff(1, p);
        int ktot = 0;
        for (int i = 0; i < n; ++i) {
          coeff *= rewrite_coeff(ma[n + i], mb[i], k[i], p);
          ktot += k[i];
        }
        if (!coeff.is_zero()) {
          Mono m(2 * n, 0);
          bool dead = false;
          for (int i = 0; i < n && !dead; ++i) {
            m[i] = ma[i] + mb[i] - k[i];
            m[n + i] = ma[n + i] + mb[n + i] - k[i];
            dead = m[i] >= p || m[n + i] >= p;
          }
          if (!dead) {
            HS c = (ca * cb * HS(coeff, kExactOrder)).shifted(ktot);
            r.add_term(std::move(m), c.truncated(r.background_));
          }
        }
        int i = n - 1;
        for (; i >= 0; --i) {
          if (k[i] < std::min(ma[n + i], mb[i])) {
            ++k[i];
            break;
          }
          k[i] = 0;
        }
        if (i < 0) break;
      }
    }
  return r;
}

WeylElement WeylElement::scaled(const HS& c) const {
  if (!ring_) return *this;
  long bg = std::min<long>(long(background_) + c.valuation(), long(c.trunc()) + valuation());
  WeylElement r(ring_, static_cast<int>(std::min<long>(bg, kExactOrder)));
  for (const auto& [m, x] : terms_) r.add_term(m, (x * c).truncated(r.background_));
  return r;
}
WeylElement WeylElement::scaled(Gf c) const {
  WeylElement r(ring_, background_);
  for (const auto& [m, x] : terms_) {
    std::vector<Gf> v;
    v.reserve(x.coeffs().size());
    for (Gf g : x.coeffs()) v.push_back(g * c);
    r.add_term(m, HS(std::move(v), x.trunc()));
  }
  return r;
}

WeylElement WeylElement::pow(int e) const {
  require(e >= 0, errs::BadInput, "negative power");
  WeylElement acc = constant(ring_, 1);
  WeylElement base = *this;
  while (e) {
    if (e & 1) acc *= base;
    if ((e >>= 1)) base *= base;
  }
  return acc;
}

WeylElement WeylElement::divide_exact_h(int k) const {
  require(k <= background_, errs::NotDivisible,
          "division by h^" + std::to_string(k) + " exceeds the background precision");
  WeylElement r(ring_, background_ - k);
  for (const auto& [m, c] : terms_) r.add_term(m, c.divide_exact(k));
  return r;
}

WeylElement WeylElement::truncated(int horder) const {
  WeylElement r(ring_, std::min(horder, background_));
  for (const auto& [m, c] : terms_) r.add_term(m, c.truncated(horder));
  return r;
}

bool operator==(const WeylElement& a, const WeylElement& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (!(*a.ring_ == *b.ring_) || a.background_ != b.background_ ||
      a.terms_.size() != b.terms_.size())
    return false;
  auto it = a.terms_.begin();
  auto jt = b.terms_.begin();
  for (; it != a.terms_.end(); ++it, ++jt)
    if (it->first != jt->first || !(it->second == jt->second)) return false;
  return true;
}

bool WeylElement::agrees_with(const WeylElement& b, int horder) const {
  for (const auto& [m, c] : terms_)
    if (!c.agrees_with(b.coeff(m), horder)) return false;
  for (const auto& [m, c] : b.terms_)
    if (terms_.find(m) == terms_.end() && !c.agrees_with(coeff(m), horder)) return false;
  return true;
}

int WeylElement::prec() const {
  int t = background_;
  for (const auto& [m, c] : terms_) t = std::min(t, c.trunc());
  return t;
}

TruncPoly WeylElement::reduce_mod_h(const RingPtr& a0) const {
  require(background_ >= 1, errs::BadInput, "no h^0 information left");
  TruncPoly f(a0);
  for (const auto& [m, c] : terms_) {
    if (c.is_zero()) continue;
    Gf c0 = c.coeff(0);
    if (c0.is_zero()) continue;
    f.add_term(m, HS(c0, a0->htrunc));
  }
  return f;
}

WeylElement WeylElement::lift(const WeylPtr& W, const TruncPoly& f) {
  WeylElement e(W, f.background());
  require(f.ring()->nvars() == 2 * W->n, errs::BadInput,
          "lift expects a polynomial in x1..xn, y1..yn");
  for (const auto& [m, c] : f.terms()) e.add_term(m, c);
  return e;
}

WeylElement WeylElement::lift_x(const WeylPtr& W, const TruncPoly& f) {
  WeylElement e(W, f.background());
  require(f.ring()->nvars() == W->n, errs::BadInput,
          "lift_x expects a polynomial in x1..xn");
  for (const auto& [m, c] : f.terms()) {
    Mono xm(2 * W->n, 0);
    for (int i = 0; i < W->n; ++i) {
      require(m[i] >= 0, errs::BadInput, "cannot lift a pole");
      xm[i] = m[i];
    }
    e.add_term(std::move(xm), c);
  }
  return e;
}

int WeylElement::y_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    int yd = 0;
    for (int i = 0; i < ring_->n; ++i) yd += m[ring_->n + i];
    d = std::max(d, yd);
  }
  return d;
}

int WeylElement::min_x_degree() const {
  int d = 1 << 20;
  for (const auto& [m, c] : terms_) {
    int xd = 0;
    for (int i = 0; i < ring_->n; ++i) xd += m[i];
    d = std::min(d, xd);
  }
  return d;
}

std::string WeylElement::str() const {
  if (is_zero()) return "0";
  std::vector<const std::pair<const Mono, HS>*> ts;
  for (const auto& t : terms_) ts.push_back(&t);
  auto grade = [](const Mono& m) {
    int g = 0;
    for (int e : m) g += e;
    return g;
  };
  std::sort(ts.begin(), ts.end(), [&](auto* a, auto* b) {
    int ga = grade(a->first), gb = grade(b->first);
    if (ga != gb) return ga < gb;
    return a->first < b->first;
  });
  std::ostringstream os;
  const int n = ring_->n;
  bool first = true;
  for (auto* t : ts) {
    const auto& [m, c] = *t;
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    std::string mono;
    auto emit = [&](const char* base, int i, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += base + std::to_string(i + 1);
      if (e != 1) mono += "^" + std::to_string(e);
    };
    for (int i = 0; i < n; ++i) emit("x", i, m[i]);
    for (int i = 0; i < n; ++i) emit("y", i, m[n + i]);
    std::string cs = hs_str(c);
    bool simple = c.size() <= 1 || c.valuation() == c.size() - 1;
    if (mono.empty())
      os << (simple ? cs : "(" + cs + ")");
    else if (cs == "1")
      os << mono;
    else
      os << (simple ? cs : "(" + cs + ")") << "*" << mono;
  }
  return os.str();
}

WeylElement poisson_bracket(const WeylElement& a, const WeylElement& b) {
  return (a * b - b * a).divide_exact_h(1);
}

WeylElement p_operation(const WeylElement& a) {
  const WeylRing& W = *a.ring();
  require(W.N >= W.p, errs::BadInput, "p-operation needs N >= p");
  WeylElement ap = a.pow(W.p);
  Gf c = a.scalar_part();  // c^p = c
  return (ap - WeylElement::constant(a.ring(), HS(c, ap.prec()))).divide_exact_h(W.p - 1);
}

WeylElement universal_P(const WeylElement& a, const WeylElement& b) {
  const int p = a.ring()->p;
  WeylElement lhs = (a * b).pow(p) - a.pow(p) * b.pow(p);
  return lhs.divide_exact_h(p - 1);
}

WeylElement jacobson_L(const WeylElement& a, const WeylElement& b) {
  const int p = a.ring()->p;
  WeylElement defect = p_operation(a + b) - p_operation(a) - p_operation(b);

  // Classical route: i*s_i(a,b) is the t^(i-1) coefficient of
  // ad_{ta+b}^{p-1}(a); the defect is sum_i s_i(a,b).
  std::vector<WeylElement> w(p, WeylElement(a.ring()));
  w[0] = a;
  for (int step = 0; step < p - 1; ++step) {
    std::vector<WeylElement> next(p, WeylElement(a.ring()));
    for (int d = 0; d < p; ++d) {
      if (!w[d].is_zero()) next[d] += poisson_bracket(b, w[d]);
      if (d + 1 < p && !w[d].is_zero()) next[d + 1] += poisson_bracket(a, w[d]);
    }
    w = std::move(next);
  }
  WeylElement classical(a.ring());
  for (int i = 1; i <= p - 1; ++i)
    classical += w[i - 1].scaled(gf_inv(Gf(i, p)));

  require(defect.agrees_with(classical), errs::CertificationFailed,
          "additivity defect disagrees with the classical Jacobson sum");
  return defect;
}

WeylAutomorphism WeylAutomorphism::identity(const WeylPtr& W) {
  std::vector<WeylElement> xs, ys;
  for (int i = 0; i < W->n; ++i) {
    xs.push_back(WeylElement::x(W, i));
    ys.push_back(WeylElement::y(W, i));
  }
  return make_verified(W, std::move(xs), std::move(ys));
}

bool WeylAutomorphism::is_identity() const {
  for (int i = 0; i < ring_->n; ++i)
    if (!xi_[i].agrees_with(WeylElement::x(ring_, i)) ||
        !yi_[i].agrees_with(WeylElement::y(ring_, i)))
      return false;
  return true;
}

WeylAutomorphism WeylAutomorphism::make_verified(const WeylPtr& W,
                                                 std::vector<WeylElement> x_images,
                                                 std::vector<WeylElement> y_images) {
  WeylAutomorphism g;
  g.ring_ = W;
  g.xi_ = std::move(x_images);
  g.yi_ = std::move(y_images);
  const int n = W->n;
  auto img = [&](int k) -> const WeylElement& { return k < n ? g.xi_[k] : g.yi_[k - n]; };

  int prec = kExactOrder;
  for (int k = 0; k < 2 * n; ++k) prec = std::min(prec, img(k).prec());
  require(prec >= 2, errs::CertificationFailed,
          "generator images have fewer than two meaningful h-orders");

  for (int i = 0; i < 2 * n; ++i) {
    WeylElement pw = img(i).pow(W->p);
    require(pw.agrees_with(WeylElement(W)), errs::CertificationFailed,
            "image of a generator is not nilpotent of order p");
    for (int j = i + 1; j < 2 * n; ++j) {
      WeylElement comm = img(i) * img(j) - img(j) * img(i);
      WeylElement expect(W);
      if (j == i + n) expect = -WeylElement::h(W);  // [y_i, x_i] = h
      require(comm.agrees_with(expect), errs::CertificationFailed,
              "generator images violate the commutation relations");
    }
  }
  g.certified_ = true;
  g.build_powers();
  return g;
}

void WeylAutomorphism::build_powers() {
  const int n = ring_->n, p = ring_->p;
  xpow_.assign(n, {});
  ypow_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    xpow_[i].push_back(WeylElement::constant(ring_, 1));
    ypow_[i].push_back(WeylElement::constant(ring_, 1));
    for (int e = 1; e < p; ++e) {
      xpow_[i].push_back(xpow_[i].back() * xi_[i]);
      ypow_[i].push_back(ypow_[i].back() * yi_[i]);
    }
  }
}

WeylElement WeylAutomorphism::apply(const WeylElement& a) const {
  WeylElement out(ring_);
  const int n = ring_->n;
  for (const auto& [m, c] : a.terms()) {
    WeylElement t = WeylElement::constant(ring_, c);
    for (int i = 0; i < n; ++i)
      if (m[i]) t *= xpow_[i][m[i]];
    for (int i = 0; i < n; ++i)
      if (m[n + i]) t *= ypow_[i][m[n + i]];
    out += t;
  }
  return out;
}

WeylAutomorphism WeylAutomorphism::compose(const WeylAutomorphism& other) const {
  std::vector<WeylElement> xs, ys;
  for (int i = 0; i < ring_->n; ++i) {
    xs.push_back(apply(other.xi_[i]));
    ys.push_back(apply(other.yi_[i]));
  }
  return make_verified(ring_, std::move(xs), std::move(ys));
}

WeylAutomorphism hamiltonian_exponential(const WeylElement& f) {
  const WeylPtr& W = f.ring();
  const int n = W->n, p = W->p;
  require(f.vanishes() || f.min_x_degree() >= 2, errs::BadInput,
          "expected f inside (x_1..x_n)^2 in normal order");

  auto D = [&](const WeylElement& a) { return poisson_bracket(f, a); };
  std::vector<WeylElement> xs, ys;
  for (int k = 0; k < 2 * n; ++k) {
    WeylElement g = k < n ? WeylElement::x(W, k) : WeylElement::y(W, k - n);
    WeylElement img = g;
    WeylElement Dk = g;
    Gf fact(1, p);
    for (int j = 1; j < p; ++j) {
      Dk = D(Dk);
      if (Dk.vanishes()) break;
      fact *= gf_inv(Gf(j, p));
      img += Dk.scaled(fact);
    }
    if (!Dk.vanishes()) {
      WeylElement Dp = D(Dk);
      require(Dp.vanishes(), errs::NilpotencyTooDeep,
              "the Hamiltonian derivation is not nilpotent below order p");
    }
    (k < n ? xs : ys).push_back(img);
  }
  return WeylAutomorphism::make_verified(W, std::move(xs), std::move(ys));
}

}  // namespace rqa
