#ifndef RQA_RING_HPP
#define RQA_RING_HPP

#include <memory>
#include <string>
#include <vector>

#include "rqa/common.hpp"

namespace rqa {

inline int floor_div(int a, int b) {  // b > 0
  int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}
inline int ceil_div(int a, int b) { return -floor_div(-a, b); }

/// One generator of a coefficient ring.  A nilpotent variable satisfies
/// x^p = 0 (exponent overflow kills the term); a window variable is a
/// polynomial/Laurent variable whose exponents must stay inside [lo, hi]
/// so that every computation is finite-dimensional.
struct VarInfo {
  std::string name;
  int lo = 0;
  int hi = 0;
  bool nilpotent = true;
};

struct RingDesc;
using RingPtr = std::shared_ptr<const RingDesc>;

/// Description of a coefficient ring k[x...]/(relations) [h]/(h^N), with k = GF(p).
struct RingDesc {
  int p = 3;
  int htrunc = 5;
  std::vector<VarInfo> vars;

  int nvars() const { return static_cast<int>(vars.size()); }

  int index_of(const std::string& name) const {
    for (int i = 0; i < nvars(); ++i)
      if (vars[i].name == name) return i;
    return -1;
  }

  friend bool operator==(const RingDesc& a, const RingDesc& b) {
    if (a.p != b.p || a.htrunc != b.htrunc || a.vars.size() != b.vars.size()) return false;
    for (size_t i = 0; i < a.vars.size(); ++i) {
      const VarInfo &u = a.vars[i], &v = b.vars[i];
      if (u.name != v.name || u.lo != v.lo || u.hi != v.hi || u.nilpotent != v.nilpotent)
        return false;
    }
    return true;
  }
  friend bool operator!=(const RingDesc& a, const RingDesc& b) { return !(a == b); }

  /// k[names]/(each^p) truncated coordinate ring (a Frobenius neighborhood).
  static RingPtr truncated(int p, int N, const std::vector<std::string>& names) {
    auto r = std::make_shared<RingDesc>();
    r->p = p;
    r->htrunc = N;
    for (const auto& nm : names) r->vars.push_back({nm, 0, p - 1, true});
    return r;
  }

  /// Polynomial ring with a degree window [0, hi] on every variable.
  static RingPtr windowed(int p, int N, const std::vector<std::string>& names, int hi) {
    auto r = std::make_shared<RingDesc>();
    r->p = p;
    r->htrunc = N;
    for (const auto& nm : names) r->vars.push_back({nm, 0, hi, false});
    return r;
  }

  /// Localization at the given variables: their exponents may go down to
  /// -pole.  Only window variables can be inverted.
  RingPtr localized(const std::vector<int>& which, int pole) const {
    auto r = std::make_shared<RingDesc>(*this);
    for (int i : which) {
      require(i >= 0 && i < nvars(), errs::BadInput, "no such variable");
      require(!vars[i].nilpotent, errs::BadInput,
              "cannot invert the nilpotent variable " + vars[i].name);
      r->vars[i].lo = -pole;
    }
    return r;
  }

  /// The Frobenius twist: primed variable names; nilpotent variables give a
  /// fresh truncated ring, window variables keep their windows (wide enough
  /// for renamed forms, embedded p-th powers and Cartier images alike).
  RingPtr twisted() const {
    auto r = std::make_shared<RingDesc>();
    r->p = p;
    r->htrunc = htrunc;
    for (const auto& v : vars) {
      VarInfo w;
      w.name = v.name + "'";
      w.nilpotent = v.nilpotent;
      if (v.nilpotent) {
        w.lo = 0;
        w.hi = p - 1;
      } else {
        w.lo = std::min(v.lo, ceil_div(v.lo - (p - 1), p));
        w.hi = v.hi;
      }
      r->vars.push_back(w);
    }
    return r;
  }

  /// Ring with windows widened to hold factor-fold products followed by a
  /// (p-1)-fold derivative; used internally by Cartier-type operators.
  RingPtr widened(int factor = 1) const {
    auto r = std::make_shared<RingDesc>(*this);
    for (auto& v : r->vars) {
      if (v.nilpotent) continue;
      v.lo = factor * v.lo - (p - 1);
      v.hi = factor * v.hi;
    }
    return r;
  }

  std::string describe() const {
    std::string s = "GF(" + std::to_string(p) + ")[";
    for (int i = 0; i < nvars(); ++i) {
      if (i) s += ",";
      s += vars[i].name;
    }
    s += "], h^" + std::to_string(htrunc) + " = 0";
    return s;
  }
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
  require(same_ring(a, b), errs::MixedSession, "operands live in different rings");
}

}  // namespace rqa

#endif
