#include "rqa/diff_form.hpp"

#include <algorithm>
#include <sstream>

namespace rqa {

void DiffForm::accumulate(std::vector<int> idx, const TruncPoly& f) {
  if (f.is_zero()) return;
  require(static_cast<int>(idx.size()) == degree_, errs::BadInput, "index arity mismatch");
  TruncPoly g = f;
  // Sort the tuple, tracking the sign of the permutation; repeats vanish.
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b]) return;
      if (idx[a] > idx[b]) {
        std::swap(idx[a], idx[b]);
        g = -g;
      }
    }
  auto it = comps_.find(idx);
  if (it == comps_.end()) {
    comps_.emplace(std::move(idx), g);
  } else {
    it->second += g;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

DiffForm operator+(const DiffForm& a, const DiffForm& b) {
  require(a.degree_ == b.degree_, errs::BadInput, "cannot add forms of different degree");
  require_same_ring(a.ring_, b.ring_);
  DiffForm r = a;
  for (const auto& [idx, f] : b.comps_) r.accumulate(idx, f);
  return r;
}

DiffForm operator-(const DiffForm& a) {
  DiffForm r = a;
  for (auto& [idx, f] : r.comps_) f = -f;
  return r;
}

DiffForm operator-(const DiffForm& a, const DiffForm& b) { return a + (-b); }

DiffForm DiffForm::scaled(const HS& c) const {
  DiffForm r(ring_, degree_);
  for (const auto& [idx, f] : comps_) r.accumulate(idx, f.scaled(c));
  return r;
}

DiffForm DiffForm::scaled(Gf c) const {
  DiffForm r(ring_, degree_);
  for (const auto& [idx, f] : comps_) r.accumulate(idx, f.scaled(c));
  return r;
}

DiffForm DiffForm::scaled(const TruncPoly& f) const {
  DiffForm r(ring_, degree_);
  for (const auto& [idx, g] : comps_) r.accumulate(idx, g * f);
  return r;
}

bool operator==(const DiffForm& a, const DiffForm& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.degree_ != b.degree_ || !same_ring(a.ring_, b.ring_)) return false;
  if (a.comps_.size() != b.comps_.size()) return false;
  auto it = a.comps_.begin();
  auto jt = b.comps_.begin();
  for (; it != a.comps_.end(); ++it, ++jt)
    if (it->first != jt->first || !(it->second == jt->second)) return false;
  return true;
}

bool DiffForm::agrees_with(const DiffForm& b, int horder) const {
  for (const auto& [idx, f] : comps_)
    if (!f.agrees_with(b.comp(idx), horder)) return false;
  for (const auto& [idx, f] : b.comps_)
    if (comps_.find(idx) == comps_.end() && !f.agrees_with(TruncPoly(b.ring()), horder))
      return false;
  return true;
}

int DiffForm::htrunc() const {
  int t = ring_ ? ring_->htrunc : kExactOrder;
  for (const auto& [idx, f] : comps_) t = std::min(t, f.prec());
  return t;
}

DiffForm DiffForm::reinterpret(const RingPtr& target) const {
  DiffForm r(target, degree_);
  for (const auto& [idx, f] : comps_) r.set_comp(idx, f.reinterpret(target));
  return r;
}

DiffForm d(const DiffForm& form) {
  const RingPtr& R = form.ring();
  require(form.degree() <= 1, errs::BadInput, "exterior derivative needs degree <= 1");
  DiffForm out(R, form.degree() + 1);
  for (const auto& [idx, f] : form.comps()) {
    for (int i = 0; i < R->nvars(); ++i) {
      TruncPoly df = f.derivative(i);
      if (df.is_zero()) continue;
      std::vector<int> jdx = idx;
      jdx.insert(jdx.begin(), i);
      out.accumulate(jdx, df);
    }
  }
  return out;
}

DiffForm contract(const Derivation& field, const DiffForm& form) {
  require(form.degree() >= 1, errs::BadInput, "contraction needs degree >= 1");
  DiffForm out(form.ring(), form.degree() - 1);
  for (const auto& [idx, f] : form.comps()) {
    // i_D(dx_{i1} ^ dx_{i2}) plugs D into each slot with alternating sign.
    for (size_t slot = 0; slot < idx.size(); ++slot) {
      const TruncPoly& Di = field.comps[idx[slot]];
      if (Di.is_zero()) continue;
      std::vector<int> rest;
      for (size_t k = 0; k < idx.size(); ++k)
        if (k != slot) rest.push_back(idx[k]);
      TruncPoly g = f * Di;
      if (slot % 2 == 1) g = -g;
      out.accumulate(rest, g);
    }
  }
  return out;
}

DiffForm lie_derivative(const Derivation& field, const DiffForm& form) {
  const RingPtr& R = form.ring();
  DiffForm out(R, form.degree());
  for (const auto& [idx, f] : form.comps()) {
    out.accumulate(idx, field.apply(f));
    // f * d(D(x_i)) in place of dx_i, one slot at a time.
    for (size_t slot = 0; slot < idx.size(); ++slot) {
      const TruncPoly& Di = field.comps[idx[slot]];
      if (Di.is_zero()) continue;
      for (int j = 0; j < R->nvars(); ++j) {
        TruncPoly dj = Di.derivative(j);
        if (dj.is_zero()) continue;
        std::vector<int> jdx = idx;
        jdx[slot] = j;
        out.accumulate(jdx, f * dj);
      }
    }
  }
  return out;
}

DiffForm restricted_contract(const Derivation& field, const DiffForm& form,
                             const Derivation& field_p) {
  require(form.degree() >= 1, errs::BadInput, "restricted contraction needs degree >= 1");
  DiffForm first = contract(field_p, form);
  DiffForm second = contract(field, form);
  for (int k = 0; k < form.ring()->p - 1; ++k) second = lie_derivative(field, second);
  return first - second;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  require(a.degree() == 1 && b.degree() == 1, errs::BadInput, "wedge of 1-forms only");
  require_same_ring(a.ring(), b.ring());
  DiffForm out(a.ring(), 2);
  for (const auto& [ia, fa] : a.comps())
    for (const auto& [ib, fb] : b.comps()) out.accumulate({ia[0], ib[0]}, fa * fb);
  return out;
}

std::string DiffForm::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, f] : comps_) {
    if (!first) os << " + ";
    first = false;
    std::string coeff = f.str();
    bool wrap = f.terms().size() > 1 && !idx.empty();
    if (idx.empty()) {
      os << coeff;
      continue;
    }
    if (coeff == "1")
      ;  // bare differential
    else
      os << (wrap ? "(" + coeff + ")" : coeff) << "*";
    for (size_t k = 0; k < idx.size(); ++k) {
      if (k) os << "^";
      os << "d" << ring_->vars[idx[k]].name;
    }
  }
  return os.str();
}

}  // namespace rqa
