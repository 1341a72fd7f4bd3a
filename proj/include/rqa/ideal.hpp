#ifndef RQA_IDEAL_HPP
#define RQA_IDEAL_HPP

#include <memory>
#include <vector>

#include "rqa/trunc_poly.hpp"

namespace rqa {

/// Outcome of an ideal membership query.  When member is true the cofactors
/// satisfy f = sum cofactors[i] * generators[i] inside the (possibly
/// widened) verification ring, and `verified` records that the identity was
/// re-checked by multiplication.
struct Membership {
  bool member = false;
  bool verified = false;
  std::vector<TruncPoly> cofactors;  // over verify_ring
  RingPtr verify_ring;
  TruncPoly normal_form_debug;  // remainder when not a member (flat image)
};

/// An ideal given by generators in a truncated/windowed coefficient ring.
/// Completion runs Buchberger in the ambient free polynomial ring on the
/// generators plus the quotient relations (x_i^p for nilpotent variables
/// and h^N), under graded-lex order with h smallest.  S-pairs whose lcm
/// exceeds the degree cap are discarded; the cap defaults to the sum of
/// the window extents plus the h-truncation, which the windows make safe.
class IdealPresentation {
 public:
  IdealPresentation(RingPtr ring, std::vector<TruncPoly> generators, int degree_cap = -1);

  const RingPtr& ring() const { return ring_; }
  const std::vector<TruncPoly>& generators() const { return gens_; }

  Membership contains(const TruncPoly& f) const;

  /// Number of Groebner basis elements (after completion).
  int basis_size() const;

 private:
  struct Impl;
  RingPtr ring_;
  std::vector<TruncPoly> gens_;
  int cap_;
  mutable std::shared_ptr<Impl> impl_;  // completed lazily, write-once
  void complete() const;
};

}  // namespace rqa

#endif
