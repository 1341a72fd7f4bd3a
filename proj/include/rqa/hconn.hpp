#ifndef RQA_HCONN_HPP
#define RQA_HCONN_HPP

#include <optional>
#include <string>
#include <vector>

#include "rqa/cartier.hpp"
#include "rqa/diff_form.hpp"

namespace rqa {

/// Rank-one h-connection h*d + h*alpha on the free module over the base
/// ring; alpha must be closed (integrability, checked at construction).
struct HConnection {
  RingPtr base;
  DiffForm alpha;

  HConnection(RingPtr base_, DiffForm alpha_);

  /// Base ring sized for a connection form: windows wide enough for the
  /// p-fold products the curvature formulas need.
  static RingPtr curvature_base(int p, int N, const std::vector<std::string>& names,
                                int maxdeg);
};

/// p-curvature along a coordinate field d_i (or a field with an explicitly
/// supplied p-th operator power).  Computed two ways -- the closed formula
/// h^p (alpha(d)^p + d^(p-1) alpha(d) - alpha(d^[p])) and literal p-fold
/// operator composition on the module -- which must agree; the result is
/// divisible by h^p.
TruncPoly p_curvature(const HConnection& conn, int i);
TruncPoly p_curvature(const HConnection& conn, const Derivation& field,
                      const Derivation& field_p);

/// The graph of the p-curvature in twisted coordinates.
struct PSupportIdeal {
  RingPtr chart;                     // k[x'_1..x'_n, xi'_1..xi'_n] with h-window
  std::vector<TruncPoly> generators; // xi'_i - h^p kappa_i(x')
  std::vector<TruncPoly> kappa;      // over the twisted base ring
  bool trivial_mod_hp = true;
};

PSupportIdeal p_support(const HConnection& conn);

/// The normal field of a p-support read at order h^p, as the 1-form
/// i_theta omega' = sum kappa_i dx'_i (omega' = sum dxi'_i ^ dx'_i).
DiffForm extract_theta(const PSupportIdeal& psup);

/// Classification of the quantization defined by the connection: it is
/// isomorphic to the standard module exactly when alpha is logarithmic,
/// and the witness unit g with dg = g*alpha rescales the generator.
struct QuantizationClass {
  bool logarithmic = false;
  std::optional<TruncPoly> witness;                 // unit g
  std::optional<TruncPoly> isomorphism_to_standard; // g^{-1}
  std::vector<TruncPoly> defect;                    // log_defect components
};

QuantizationClass classify_quantization(const HConnection& conn);

/// Two connections are isomorphic iff their forms differ by a dlog.
bool isomorphic_connections(const HConnection& a, const HConnection& b);

}  // namespace rqa

#endif
