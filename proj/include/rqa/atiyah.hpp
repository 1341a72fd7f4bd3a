#ifndef RQA_ATIYAH_HPP
#define RQA_ATIYAH_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rqa/cartier.hpp"
#include "rqa/diff_form.hpp"

namespace rqa {

/// A finite cover of Spec(base) by localizations: each open inverts a set
/// of window variables with the declared pole bound, so every cochain
/// space is a finite-dimensional GF(p) vector space.
class CechCover {
 public:
  CechCover(RingPtr base, std::vector<std::vector<int>> inverted_sets, int pole);

  const RingPtr& base() const { return base_; }
  int size() const { return static_cast<int>(opens_.size()); }
  const RingPtr& open(int i) const { return opens_[i]; }
  const RingPtr& twisted_open(int i) const { return topens_[i]; }
  RingPtr overlap(int i, int j) const;
  RingPtr twisted_overlap(int i, int j) const;
  const std::vector<int>& inverted(int i) const { return inv_[i]; }
  int pole() const { return pole_; }

 private:
  RingPtr base_;
  std::vector<std::vector<int>> inv_;
  int pole_;
  std::vector<RingPtr> opens_, topens_;
};

/// Cech 1-cochain for the two-term complex (closed 1-forms -> twisted
/// 1-forms, alpha -> alpha' - C(alpha)): closed alpha_ij on overlaps
/// (stored for i < j) and gamma_i over twisted opens.
struct CechClass {
  std::shared_ptr<const CechCover> cover;
  std::map<std::pair<int, int>, DiffForm> alpha;
  std::vector<DiffForm> gamma;

  static CechClass zero(std::shared_ptr<const CechCover> cover);
  DiffForm alpha_at(int i, int j) const;  // antisymmetric access
  const DiffForm& gamma_at(int i) const { return gamma[i]; }

  friend CechClass operator+(const CechClass& a, const CechClass& b);
  friend CechClass operator-(const CechClass& a, const CechClass& b);
  friend CechClass operator-(const CechClass& a);
  CechClass scaled(Gf c) const;

  /// Exact verification of both cocycle laws; throws on violation.
  void verify_cocycle() const;
  bool is_zero_cochain() const;
};

/// Per-open splitting data of a restricted Atiyah algebra: transition
/// forms of the chosen splittings, their curvatures (must become 0 after
/// the Lie-splitting correction) and the p-defect forms.
struct RestrictedAtiyahLocalData {
  std::shared_ptr<const CechCover> cover;
  std::map<std::pair<int, int>, DiffForm> transitions;  // on overlaps, i < j
  std::vector<DiffForm> curvature;                      // degree 2, on opens
  std::vector<DiffForm> p_defect;                       // on twisted opens
};

/// Flatten a splitting with curvature beta: certifies C(beta) = 0 through
/// the restricted-contraction identity, then solves d(correction) = -beta.
/// NotLocallyExact when no correction exists.
DiffForm split_lie(const DiffForm& beta);

/// The class {alpha_ij, gamma_i} of a restricted Atiyah algebra presented
/// by local data; corrects non-flat splittings via split_lie first and
/// verifies the cocycle laws exactly.
CechClass cech_class(const RestrictedAtiyahLocalData& data);

/// Coboundary test by exact linear algebra: find closed beta_i on the
/// opens with alpha_ij = beta_i - beta_j and gamma_i = beta_i' - C(beta_i).
struct CoboundaryWitness {
  std::vector<DiffForm> beta;
};
std::optional<CoboundaryWitness> is_coboundary(const CechClass& cls);

/// Restricted Chern class of a line bundle given by unit transitions:
/// {dlog g_ij, 0}.  Additive under tensor product of bundles.
CechClass restricted_chern(std::shared_ptr<const CechCover> cover,
                           const std::map<std::pair<int, int>, TruncPoly>& transitions);

/// Class of the opposite Atiyah algebra: c_r(K_Z) - [A].
CechClass dual_class(const CechClass& cls, const CechClass& canonical);

/// The quantization Chern condition: is
///   cL - rho - (1/2) cK - sign * {0, i_theta omega'}
/// a coboundary?  theta_form lives over the twisted base ring.
bool chern_condition(const CechClass& cL, const CechClass& rho, const CechClass& cK,
                     const DiffForm& theta_form, int sign);

}  // namespace rqa

#endif
