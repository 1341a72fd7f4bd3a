#ifndef RQA_CARTIER_HPP
#define RQA_CARTIER_HPP

#include <optional>

#include "rqa/diff_form.hpp"
#include "rqa/linalg.hpp"

namespace rqa {

/// Enumeration of all monomials inside a ring's exponent windows, with a
/// fixed order used to translate polynomial problems into GF(p) linear
/// algebra.
struct RingBasis {
  RingPtr ring;
  std::vector<Mono> monos;
  std::map<Mono, int> index;

  explicit RingBasis(const RingPtr& r);
  int dim() const { return static_cast<int>(monos.size()); }
};

/// Closedness test that widens pole windows first, so that no derivative
/// escapes the representation.
bool closed_in_widened(const DiffForm& alpha);

/// Cartier operator on a closed 1-form: componentwise -d^(p-1)/dx_i^(p-1)
/// applied to the i-th coefficient, followed by extraction of the p-th
/// root along the Frobenius embedding.  The result lives over the twisted
/// ring.  Fails with NotClosed / NotPthPower.
DiffForm cartier(const DiffForm& alpha);

/// Constructive exactness: f with df = alpha, by exact linear algebra.
/// This solver is the ground-truth oracle for exactness on these rings.
std::optional<TruncPoly> solve_primitive(const DiffForm& alpha);

/// Constructive logarithmicity: a unit g with dg = g*alpha.
std::optional<TruncPoly> solve_dlog(const DiffForm& alpha);

/// The tuple (alpha_i^p + d^(p-1)/dx_i^(p-1) alpha_i)_i; identically zero
/// exactly when alpha is logarithmic.  Components live in a widened ring.
std::vector<TruncPoly> log_defect(const DiffForm& alpha);

/// Degree-2 exactness: a 1-form alpha with d(alpha) = beta.
std::optional<DiffForm> solve_potential(const DiffForm& beta);

/// Rename a form into the twisted ring (the canonical map alpha -> alpha').
DiffForm twist_rename_form(const DiffForm& alpha, const RingPtr& twisted);

}  // namespace rqa

#endif
