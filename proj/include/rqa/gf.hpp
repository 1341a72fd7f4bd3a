#ifndef RQA_GF_HPP
#define RQA_GF_HPP

#include <cstdint>
#include <string>

#include "rqa/common.hpp"

namespace rqa {

/// Element of the prime field GF(p), p an odd prime.  The characteristic is
/// carried in the value; p == 0 marks the characteristic-agnostic zero so
/// that empty sums are representable without a ring handle.
struct Gf {
  std::uint32_t v = 0;
  std::uint32_t p = 0;

  Gf() = default;
  Gf(std::int64_t value, int prime) : p(static_cast<std::uint32_t>(prime)) {
    std::int64_t r = value % prime;
    if (r < 0) r += prime;
    v = static_cast<std::uint32_t>(r);
  }

  bool is_zero() const { return v == 0; }

  static const char* mix_msg() { return "elements from different prime fields"; }

  friend Gf operator+(Gf a, Gf b) {
    if (a.p == 0) return b;
    if (b.p == 0) return a;
    require(a.p == b.p, errs::MixedSession, mix_msg());
    std::uint32_t s = a.v + b.v;
    if (s >= a.p) s -= a.p;
    return raw(s, a.p);
  }
  friend Gf operator-(Gf a, Gf b) { return a + (-b); }
  friend Gf operator-(Gf a) {
    if (a.p == 0 || a.v == 0) return a;
    return raw(a.p - a.v, a.p);
  }
  friend Gf operator*(Gf a, Gf b) {
    if (a.p == 0 || b.p == 0) return Gf{};
    require(a.p == b.p, errs::MixedSession, mix_msg());
    return raw(static_cast<std::uint32_t>(
                   (std::uint64_t(a.v) * b.v) % a.p),
               a.p);
  }
  Gf& operator+=(Gf b) { return *this = *this + b; }
  Gf& operator-=(Gf b) { return *this = *this - b; }
  Gf& operator*=(Gf b) { return *this = *this * b; }

  friend bool operator==(Gf a, Gf b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.p == b.p && a.v == b.v;
  }
  friend bool operator!=(Gf a, Gf b) { return !(a == b); }

  std::string str() const { return std::to_string(v); }

  static Gf raw(std::uint32_t value, std::uint32_t prime) {
    Gf g;
    g.v = value;
    g.p = prime;
    return g;
  }
};

/// a^e by binary exponentiation; gf_pow(a, p) == a by Fermat.
inline Gf gf_pow(Gf a, std::uint64_t e) {
  if (a.p == 0) return a;
  Gf acc = Gf(1, static_cast<int>(a.p));
  while (e) {
    if (e & 1) acc *= a;
    a *= a;
    e >>= 1;
  }
  return acc;
}

inline Gf gf_inv(Gf a) {
  require(!a.is_zero(), errs::BadInput, "inverse of zero");
  return gf_pow(a, a.p - 2);
}

/// p-th power; the identity on GF(p) scalars.
inline Gf pth_power(Gf a) { return a; }

}  // namespace rqa

#endif
