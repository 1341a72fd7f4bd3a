#ifndef RQA_TRUNC_POLY_HPP
#define RQA_TRUNC_POLY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rqa/hseries.hpp"
#include "rqa/ring.hpp"

namespace rqa {

using Mono = std::vector<int>;

/// Element of a truncated/windowed polynomial ring over GF(p) with h-series
/// coefficients.  The zero polynomial has an empty term map; a
/// default-constructed value is the ring-agnostic zero.
///
/// Every element carries a background precision: coefficients that are not
/// stored are zero modulo h^background.  Freshly built ring elements have
/// full background h^N (the ring relation); exact divisions by h lower it,
/// so downstream comparisons can never claim more than was computed.
class TruncPoly {
 public:
  TruncPoly() = default;
  explicit TruncPoly(RingPtr ring) : ring_(std::move(ring)) {
    background_ = ring_->htrunc;
  }
  TruncPoly(RingPtr ring, int background) : ring_(std::move(ring)) {
    background_ = std::min(background, ring_->htrunc);
  }

  static TruncPoly constant(const RingPtr& ring, const HS& c) {
    TruncPoly f(ring);
    f.add_term(Mono(ring->nvars(), 0), c);
    return f;
  }
  static TruncPoly constant(const RingPtr& ring, int c) {
    return constant(ring, hs_const(c, ring->p, ring->htrunc));
  }
  static TruncPoly variable(const RingPtr& ring, int i, int exp = 1) {
    return monomial(ring, unit_mono(ring, i, exp), hs_const(1, ring->p, ring->htrunc));
  }
  static TruncPoly monomial(const RingPtr& ring, Mono m, const HS& c) {
    TruncPoly f(ring);
    f.check_window(m);
    f.add_term(std::move(m), c);
    return f;
  }
  static Mono unit_mono(const RingPtr& ring, int i, int exp = 1) {
    Mono m(ring->nvars(), 0);
    m[i] = exp;
    return m;
  }

  const RingPtr& ring() const { return ring_; }
  const std::map<Mono, HS>& terms() const { return terms_; }
  /// Exact ring zero: nothing stored and full background precision.
  bool is_zero() const {
    return terms_.empty() && (!ring_ || background_ >= ring_->htrunc);
  }
  /// Certifiably zero at this element's precision.
  bool vanishes() const {
    for (const auto& [m, c] : terms_)
      if (!c.is_zero()) return false;
    return true;
  }
  /// Background precision: absent coefficients are zero mod h^background.
  int background() const { return background_; }
  /// Overall precision: least of the background and the stored truncations.
  int prec() const {
    int t = background_;
    for (const auto& [m, c] : terms_) t = std::min(t, c.trunc());
    return t;
  }
  /// Least valuation of the known part (background if nothing is stored).
  int valuation() const {
    int v = background_;
    for (const auto& [m, c] : terms_) v = std::min(v, c.valuation());
    return v;
  }
  HS coeff(const Mono& m) const {
    auto it = terms_.find(m);
    if (it == terms_.end()) return HS(background_);
    return it->second;
  }
  /// Coefficient of the constant monomial.
  HS constant_term() const {
    if (!ring_) return HS{};
    return coeff(Mono(ring_->nvars(), 0));
  }

  friend TruncPoly operator+(const TruncPoly& a, const TruncPoly& b);
  friend TruncPoly operator-(const TruncPoly& a, const TruncPoly& b);
  friend TruncPoly operator-(const TruncPoly& a);
  friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b);
  TruncPoly& operator+=(const TruncPoly& b) { return *this = *this + b; }
  TruncPoly& operator-=(const TruncPoly& b) { return *this = *this - b; }
  TruncPoly& operator*=(const TruncPoly& b) { return *this = *this * b; }

  TruncPoly scaled(const HS& c) const;
  TruncPoly scaled(Gf c) const;

  friend bool operator==(const TruncPoly& a, const TruncPoly& b);
  friend bool operator!=(const TruncPoly& a, const TruncPoly& b) { return !(a == b); }
  bool agrees_with(const TruncPoly& b, int horder = kExactOrder) const;

  TruncPoly truncated(int horder) const;

  /// Exact division by h^k; lowers the background precision by k.
  TruncPoly divide_exact_h(int k) const;

  /// Partial derivative with respect to variable i.
  TruncPoly derivative(int i) const;

  /// Ring power respecting char p: h-degrees multiply by e as well.
  TruncPoly pow(int e) const;

  /// p-th power; by the freshman's dream this is monomial-by-monomial.
  TruncPoly pth_power() const;

  /// f with every monomial x^a replaced by x^(p*a) and coefficientwise
  /// Frobenius applied to the h-series scalars (h itself untouched).
  /// This is the embedding of the twist back into the source ring.
  TruncPoly frobenius_embed_into(const RingPtr& source) const;

  /// Rename into the twisted ring: identical exponents and coefficients.
  TruncPoly twist_rename(const RingPtr& twisted) const;

  /// p-th root along the Frobenius embedding: every exponent must be
  /// divisible by p.  Fails with NotPthPower otherwise.
  TruncPoly untwist_root(const RingPtr& twisted) const;

  /// Reinterpret in a ring with the same variables but different windows
  /// (restriction to a localization, or widening).
  TruncPoly reinterpret(const RingPtr& target) const;

  /// Substitute images[i] for variable i (all exponents must be >= 0).
  TruncPoly substitute(const std::vector<TruncPoly>& images, const RingPtr& target) const;

  /// Multiplicative inverse of a unit; NotUnit when none exists inside the
  /// declared windows.
  TruncPoly invert_unit() const;

  bool is_hfree() const;

  std::string str() const;

  void add_term(Mono m, const HS& c);  // normalizing accumulate

 private:
  void check_window(const Mono& m) const;

  RingPtr ring_;
  int background_ = kExactOrder;
  std::map<Mono, HS> terms_;
};

/// dlog f = df/f componentwise; f must be a unit.
std::vector<TruncPoly> dlog_components(const TruncPoly& f);

/// p-th power hook for series coefficients.
inline TruncPoly pth_power(const TruncPoly& f) { return f.pth_power(); }

}  // namespace rqa

#endif
