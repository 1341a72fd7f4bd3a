#ifndef RQA_WEYL_HPP
#define RQA_WEYL_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rqa/hseries.hpp"
#include "rqa/ring.hpp"
#include "rqa/trunc_poly.hpp"

namespace rqa {

/// Parameters of a reduced Weyl algebra: n symplectic pairs x_i, y_i over
/// GF(p), relations [y_i, x_j] = delta_ij h and x_i^p = y_i^p = 0, scalars
/// in k[h]/h^N.
struct WeylRing {
  int p = 3;
  int n = 1;
  int N = 5;

  friend bool operator==(const WeylRing& a, const WeylRing& b) {
    return a.p == b.p && a.n == b.n && a.N == b.N;
  }

  /// Coefficient ring of the classical limit A_0 = A_h / h.
  RingPtr a0_ring() const {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
    return RingDesc::truncated(p, N, names);
  }
};

using WeylPtr = std::shared_ptr<const WeylRing>;

/// Normal-ordered element of the reduced Weyl algebra: monomials x^a y^b
/// with all exponents in [0, p), h-series coefficients mod h^N.
class WeylElement {
 public:
  WeylElement() = default;
  explicit WeylElement(WeylPtr ring) : ring_(std::move(ring)) { background_ = ring_->N; }
  WeylElement(WeylPtr ring, int background) : ring_(std::move(ring)) {
    background_ = std::min(background, ring_->N);
  }

  static WeylElement constant(const WeylPtr& W, const HS& c);
  static WeylElement constant(const WeylPtr& W, int c);
  static WeylElement h(const WeylPtr& W, int power = 1);
  static WeylElement x(const WeylPtr& W, int i, int exp = 1);
  static WeylElement y(const WeylPtr& W, int i, int exp = 1);
  static WeylElement monomial(const WeylPtr& W, Mono m, const HS& c);

  const WeylPtr& ring() const { return ring_; }
  const std::map<Mono, HS>& terms() const { return terms_; }
  /// Exact ring zero: nothing stored at full background precision.
  bool is_zero() const { return terms_.empty() && (!ring_ || background_ >= ring_->N); }
  /// Certifiably zero at this element's precision.
  bool vanishes() const;
  /// Absent coefficients are zero mod h^background.
  int background() const { return background_; }
  int valuation() const;
  HS coeff(const Mono& m) const;
  /// Scalar part: the h^0 coefficient of the constant monomial.
  Gf scalar_part() const;

  friend WeylElement operator+(const WeylElement& a, const WeylElement& b);
  friend WeylElement operator-(const WeylElement& a, const WeylElement& b);
  friend WeylElement operator-(const WeylElement& a);
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  WeylElement& operator+=(const WeylElement& b) { return *this = *this + b; }
  WeylElement& operator-=(const WeylElement& b) { return *this = *this - b; }
  WeylElement& operator*=(const WeylElement& b) { return *this = *this * b; }
  WeylElement scaled(const HS& c) const;
  WeylElement scaled(Gf c) const;

  WeylElement pow(int e) const;
  WeylElement divide_exact_h(int k) const;
  WeylElement truncated(int horder) const;

  friend bool operator==(const WeylElement& a, const WeylElement& b);
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }
  bool agrees_with(const WeylElement& b, int horder = kExactOrder) const;
  /// Overall precision: least of background and stored truncations.
  int prec() const;

  /// Classical limit in A_0 (drops all h-terms).
  TruncPoly reduce_mod_h(const RingPtr& a0) const;
  /// Normal-ordered lift of an A_0 element (or any polynomial in x, y).
  static WeylElement lift(const WeylPtr& W, const TruncPoly& f);
  /// Lift of an element of the x-only subalgebra k[x_1..x_n]/(x_i^p).
  static WeylElement lift_x(const WeylPtr& W, const TruncPoly& f);

  /// Total degree in the y variables of the highest term.
  int y_degree() const;
  /// Least total x-degree over all monomials.
  int min_x_degree() const;

  std::string str() const;

  void add_term(Mono m, const HS& c);

 private:
  WeylPtr ring_;
  int background_ = kExactOrder;
  std::map<Mono, HS> terms_;
};

/// h {a,b} = ab - ba, divided exactly.
WeylElement poisson_bracket(const WeylElement& a, const WeylElement& b);

/// Restricted power a^[p] = (a^p - c^p) / h^(p-1) with c the scalar part.
WeylElement p_operation(const WeylElement& a);

/// P(a,b) = ((ab)^p - a^p b^p) / h^(p-1).
WeylElement universal_P(const WeylElement& a, const WeylElement& b);

/// Additivity defect (a+b)^[p] - a^[p] - b^[p]; cross-checked against the
/// classical Jacobson sum evaluated through nested Poisson brackets.
WeylElement jacobson_L(const WeylElement& a, const WeylElement& b);

/// Algebra automorphism given by generator images; h maps to h.  Relations
/// are re-verified at construction (modulo the images' h-precision).
class WeylAutomorphism {
 public:
  static WeylAutomorphism identity(const WeylPtr& W);
  static WeylAutomorphism make_verified(const WeylPtr& W, std::vector<WeylElement> x_images,
                                        std::vector<WeylElement> y_images);

  const WeylPtr& ring() const { return ring_; }
  const std::vector<WeylElement>& x_images() const { return xi_; }
  const std::vector<WeylElement>& y_images() const { return yi_; }
  bool certified() const { return certified_; }
  bool is_identity() const;

  WeylElement apply(const WeylElement& a) const;
  /// this o other (apply other first).
  WeylAutomorphism compose(const WeylAutomorphism& other) const;

 private:
  WeylPtr ring_;
  std::vector<WeylElement> xi_, yi_;
  std::vector<std::vector<WeylElement>> xpow_, ypow_;
  bool certified_ = false;
  void build_powers();
};

/// Conjugation by the truncated exponential of {f, -}/h for f in (x)^2:
/// a |-> sum_{k<p} D^k(a)/k! with D = {f,-}.  Refuses the divided-power
/// regime via NilpotencyTooDeep when D^p does not kill the generators.
WeylAutomorphism hamiltonian_exponential(const WeylElement& f);

}  // namespace rqa

#endif
