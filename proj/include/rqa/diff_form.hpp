#ifndef RQA_DIFF_FORM_HPP
#define RQA_DIFF_FORM_HPP

#include <map>
#include <string>
#include <vector>

#include "rqa/trunc_poly.hpp"

namespace rqa {

/// A derivation sum_i comps[i] * d/dx_i of a coefficient ring.
struct Derivation {
  RingPtr ring;
  std::vector<TruncPoly> comps;

  Derivation() = default;
  Derivation(RingPtr r, std::vector<TruncPoly> c) : ring(std::move(r)), comps(std::move(c)) {}

  static Derivation zero(const RingPtr& r) {
    return Derivation(r, std::vector<TruncPoly>(r->nvars(), TruncPoly(r)));
  }
  static Derivation coordinate(const RingPtr& r, int i) {
    Derivation d = zero(r);
    d.comps[i] = TruncPoly::constant(r, 1);
    return d;
  }

  TruncPoly apply(const TruncPoly& f) const {
    TruncPoly out(ring);
    for (int i = 0; i < ring->nvars(); ++i)
      if (!comps[i].is_zero()) out += comps[i] * f.derivative(i);
    return out;
  }

  TruncPoly apply_iterated(const TruncPoly& f, int times) const {
    TruncPoly g = f;
    for (int k = 0; k < times; ++k) g = apply(g);
    return g;
  }

  /// Components of the p-fold operator power D o ... o D, which is again a
  /// derivation in characteristic p.
  Derivation operator_pth_power() const {
    Derivation out = zero(ring);
    for (int i = 0; i < ring->nvars(); ++i)
      out.comps[i] = apply_iterated(TruncPoly::variable(ring, i), ring->p);
    return out;
  }

  bool is_zero() const {
    for (const auto& c : comps)
      if (!c.is_zero()) return false;
    return true;
  }
};

/// Differential form of degree 0, 1 or 2; components are stored on strictly
/// increasing index tuples, which enforces antisymmetry.
class DiffForm {
 public:
  DiffForm() = default;
  DiffForm(RingPtr ring, int degree) : ring_(std::move(ring)), degree_(degree) {
    require(degree_ >= 0 && degree_ <= 2, errs::BadInput, "form degree must be 0, 1 or 2");
  }

  static DiffForm function(const RingPtr& ring, const TruncPoly& f) {
    DiffForm w(ring, 0);
    w.set_comp({}, f);
    return w;
  }
  static DiffForm one_form(const RingPtr& ring, const std::vector<TruncPoly>& comps) {
    DiffForm w(ring, 1);
    for (int i = 0; i < ring->nvars(); ++i) w.set_comp({i}, comps[i]);
    return w;
  }
  static DiffForm d_coordinate(const RingPtr& ring, int i) {
    DiffForm w(ring, 1);
    w.set_comp({i}, TruncPoly::constant(ring, 1));
    return w;
  }

  int degree() const { return degree_; }
  const RingPtr& ring() const { return ring_; }
  const std::map<std::vector<int>, TruncPoly>& comps() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  TruncPoly comp(const std::vector<int>& idx) const {
    auto it = comps_.find(idx);
    return it == comps_.end() ? TruncPoly(ring_) : it->second;
  }
  /// As a function (degree 0 only).
  TruncPoly scalar() const {
    require(degree_ == 0, errs::BadInput, "not a 0-form");
    return comp({});
  }

  void set_comp(std::vector<int> idx, const TruncPoly& f) {
    require(static_cast<int>(idx.size()) == degree_, errs::BadInput, "index arity mismatch");
    for (size_t k = 1; k < idx.size(); ++k)
      require(idx[k - 1] < idx[k], errs::BadInput, "component indices must increase");
    if (f.is_zero())
      comps_.erase(idx);
    else
      comps_.emplace(std::move(idx), f).first->second = f;
  }
  void accumulate(std::vector<int> idx, const TruncPoly& f);  // handles unsorted indices

  friend DiffForm operator+(const DiffForm& a, const DiffForm& b);
  friend DiffForm operator-(const DiffForm& a, const DiffForm& b);
  friend DiffForm operator-(const DiffForm& a);
  DiffForm scaled(const HS& c) const;
  DiffForm scaled(Gf c) const;
  DiffForm scaled(const TruncPoly& f) const;
  DiffForm& operator+=(const DiffForm& b) { return *this = *this + b; }
  DiffForm& operator-=(const DiffForm& b) { return *this = *this - b; }

  friend bool operator==(const DiffForm& a, const DiffForm& b);
  friend bool operator!=(const DiffForm& a, const DiffForm& b) { return !(a == b); }
  bool agrees_with(const DiffForm& b, int horder = kExactOrder) const;

  /// Least truncation order among the stored coefficients.
  int htrunc() const;

  DiffForm reinterpret(const RingPtr& target) const;

  std::string str() const;

 private:
  RingPtr ring_;
  int degree_ = 0;
  std::map<std::vector<int>, TruncPoly> comps_;
};

/// Exterior derivative (degree <= 1 input).
DiffForm d(const DiffForm& form);

/// Interior product i_D (degree >= 1 input).
DiffForm contract(const Derivation& field, const DiffForm& form);

/// Lie derivative along a derivation, any degree.
DiffForm lie_derivative(const Derivation& field, const DiffForm& form);

/// Restricted contraction i_{field_p} form - L_field^{p-1} i_field form.
/// The p-th operator power of the field is supplied by the caller.
DiffForm restricted_contract(const Derivation& field, const DiffForm& form,
                             const Derivation& field_p);

/// Wedge of two 1-forms.
DiffForm wedge(const DiffForm& a, const DiffForm& b);

inline bool is_closed(const DiffForm& form) {
  return form.degree() == 2 ? false : d(form).is_zero();
}

}  // namespace rqa

#endif
