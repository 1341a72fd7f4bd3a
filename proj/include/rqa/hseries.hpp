#ifndef RQA_HSERIES_HPP
#define RQA_HSERIES_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "rqa/common.hpp"
#include "rqa/gf.hpp"

namespace rqa {

/// Truncation order used for exact values (literals, ring constants).
inline constexpr int kExactOrder = 1 << 24;

/// Power series in h over a coefficient ring R, truncated: a value with
/// truncation order T is known exactly modulo h^T.  Operations propagate
/// the order; dividing by h^k lowers it by k instead of padding, so tests
/// cannot see equalities beyond what was actually computed.
template <class R>
class HSeries {
 public:
  /// Default construction is the exact zero: no coefficients, known to
  /// every order.  Absent monomial coefficients share this semantics.
  HSeries() = default;
  explicit HSeries(int trunc) : trunc_(trunc) {}
  HSeries(R constant, int trunc) : trunc_(trunc) {
    c_.push_back(std::move(constant));
    normalize();
  }
  HSeries(std::vector<R> coeffs, int trunc) : c_(std::move(coeffs)), trunc_(trunc) {
    require(static_cast<int>(c_.size()) <= trunc_, errs::BadInput,
            "series has more coefficients than its truncation order");
    normalize();
  }

  static HSeries h_power(R unit, int k, int trunc) {
    std::vector<R> v(k + 1);
    v[k] = std::move(unit);
    return HSeries(std::move(v), trunc);
  }

  int trunc() const { return trunc_; }
  bool is_zero() const { return c_.empty(); }
  int size() const { return static_cast<int>(c_.size()); }

  /// Coefficient of h^k (zero when absent); k must be below the truncation.
  R coeff(int k) const {
    require(k < trunc_, errs::BadInput, "coefficient beyond truncation order");
    if (k < size()) return c_[k];
    return R{};
  }

  /// Index of the lowest nonzero stored coefficient; trunc() if none.
  int valuation() const {
    for (int k = 0; k < size(); ++k)
      if (!c_[k].is_zero()) return k;
    return trunc_;
  }

  friend HSeries operator+(const HSeries& a, const HSeries& b) {
    HSeries r(std::min(a.trunc_, b.trunc_));
    r.c_.resize(std::min(static_cast<int>(std::max(a.c_.size(), b.c_.size())), r.trunc_));
    for (int k = 0; k < r.size(); ++k) {
      if (k < a.size()) r.c_[k] = r.c_[k] + a.c_[k];
      if (k < b.size()) r.c_[k] = r.c_[k] + b.c_[k];
    }
    r.normalize();
    return r;
  }
  friend HSeries operator-(const HSeries& a, const HSeries& b) { return a + (-b); }
  friend HSeries operator-(const HSeries& a) {
    HSeries r = a;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend HSeries operator*(const HSeries& a, const HSeries& b) {
    // Known modulo h^min(Ta + v(b), Tb + v(a)); valuations are exact
    // because coefficients below the truncation are exact.
    long t = std::min<long>(long(a.trunc_) + b.valuation(), long(b.trunc_) + a.valuation());
    HSeries r(static_cast<int>(std::min<long>(t, kExactOrder)));
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(std::min(a.size() + b.size() - 1, r.trunc_), R{});
    for (int i = 0; i < a.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (int j = 0; j < b.size() && i + j < r.size(); ++j)
        r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    r.normalize();
    return r;
  }

  HSeries& operator+=(const HSeries& b) { return *this = *this + b; }
  HSeries& operator-=(const HSeries& b) { return *this = *this - b; }
  HSeries& operator*=(const HSeries& b) { return *this = *this * b; }

  /// Exact equality: both zero, or same truncation order and same
  /// coefficients.  Values of different precision never compare equal.
  friend bool operator==(const HSeries& a, const HSeries& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.trunc_ != b.trunc_ || a.size() != b.size()) return false;
    for (int k = 0; k < a.size(); ++k)
      if (!(a.c_[k] == b.c_[k])) return false;
    return true;
  }
  friend bool operator!=(const HSeries& a, const HSeries& b) { return !(a == b); }

  /// Agreement modulo h^min(trunc a, trunc b, k).
  bool agrees_with(const HSeries& b, int k = kExactOrder) const {
    int m = std::min({trunc_, b.trunc_, k});
    for (int i = 0; i < m; ++i)
      if (!(coeff_or_zero(i) == b.coeff_or_zero(i))) return false;
    return true;
  }

  HSeries truncated(int k) const {
    HSeries r(std::min(k, trunc_));
    r.c_.assign(c_.begin(), c_.begin() + std::min<int>(size(), r.trunc_));
    r.normalize();
    return r;
  }

  /// Multiplication by h^k; raises the truncation order accordingly.
  HSeries shifted(int k) const {
    HSeries r(static_cast<int>(std::min<long>(long(trunc_) + k, kExactOrder)));
    if (is_zero()) return r;
    r.c_.assign(size() + k, R{});
    for (int i = 0; i < size(); ++i) r.c_[i + k] = c_[i];
    return r;
  }

  /// Exact division by h^k.  The k lowest coefficients must vanish; the
  /// result carries truncation order trunc() - k.
  HSeries divide_exact(int k) const {
    require(k <= trunc_, errs::NotDivisible,
            "division by h^" + std::to_string(k) + " below truncation order " +
                std::to_string(trunc_));
    for (int i = 0; i < std::min(k, size()); ++i)
      require(c_[i].is_zero(), errs::NotDivisible,
              "coefficient of h^" + std::to_string(i) + " is nonzero");
    HSeries r(trunc_ - k);
    if (size() > k) r.c_.assign(c_.begin() + k, c_.end());
    r.normalize();
    return r;
  }

  /// Coefficientwise p-th power; h itself is untouched.
  HSeries frobenius_coefficientwise() const {
    HSeries r = *this;
    for (auto& x : r.c_) x = pth_power(x);
    r.normalize();
    return r;
  }

  const std::vector<R>& coeffs() const { return c_; }

 private:
  R coeff_or_zero(int k) const { return k < size() ? c_[k] : R{}; }
  void normalize() {
    if (static_cast<int>(c_.size()) > trunc_) c_.resize(trunc_);
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<R> c_;
  int trunc_ = kExactOrder;
};

using HS = HSeries<Gf>;

inline HS hs_const(int value, int p, int trunc) { return HS(Gf(value, p), trunc); }
inline HS hs_h(int p, int trunc, int k = 1) { return HS::h_power(Gf(1, p), k, trunc); }

inline std::string hs_str(const HS& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (int k = 0; k < s.size(); ++k) {
    Gf c = s.coeffs()[k];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (k == 0)
      out += c.str();
    else {
      if (c.v != 1) out += c.str() + "*";
      out += (k == 1) ? "h" : "h^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace rqa

#endif
