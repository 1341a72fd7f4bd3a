#ifndef RQA_SYMPGEO_HPP
#define RQA_SYMPGEO_HPP

#include <optional>
#include <string>
#include <vector>

#include "rqa/cartier.hpp"
#include "rqa/diff_form.hpp"
#include "rqa/ideal.hpp"
#include "rqa/weyl.hpp"

namespace rqa {

/// The local restricted symplectic model: A_0 = k[x,y]/(x^p, y^p) with a
/// nondegenerate 2-form omega and a potential eta, d(eta) = omega.
struct RestrictedSymplecticModel {
  RingPtr a0;  // variables x1..xn, y1..yn
  int n = 1;
  DiffForm omega;
  DiffForm eta;

  /// omega = sum dy_i ^ dx_i, eta = sum y_i dx_i.
  static RestrictedSymplecticModel standard(int p, int n, int N);
  static RestrictedSymplecticModel with_eta(int p, int n, int N, const DiffForm& eta);

  void validate() const;  // d(eta) = omega, omega nondegenerate
};

/// Hamiltonian field of f: the unique derivation with omega(., H_f) = df;
/// with the standard omega this gives {f,g} = H_f(g) matching the Weyl
/// bracket after reduction mod h.
Derivation hamiltonian_field(const TruncPoly& f, const RestrictedSymplecticModel& model);

/// f^[p] on the Poisson side: the restricted contraction of eta along H_f,
/// using the p-fold operator power of H_f.
TruncPoly p_operation_from_eta(const TruncPoly& f, const RestrictedSymplecticModel& model);

/// A subvariety of Spec A_0.  Graphs are given by y_i = phi_i(x) with the
/// phi_i over the x-only base ring.
struct SubvarietyPresentation {
  enum class Shape { graph, general };
  Shape shape = Shape::graph;
  RingPtr base;                 // k[x1..xn]/(x_i^p)
  std::vector<TruncPoly> phi;   // graph data
  std::vector<TruncPoly> general_generators;  // ideal generators in A_0

  static SubvarietyPresentation graph(const RingPtr& base, std::vector<TruncPoly> phi);
  /// The ideal (y_i - phi_i(x)) in A_0.
  std::vector<TruncPoly> ideal_generators(const RingPtr& a0) const;
};

bool is_lagrangian(const SubvarietyPresentation& Y, const RestrictedSymplecticModel& model);

struct RestrictedCheck {
  bool restricted = false;
  bool via_membership = false;        // route (a): ideal closed under f -> f^[p]
  bool via_exactness = false;         // route (b): eta|_Y exact
  bool empty_graph = false;           // phi(0) != 0: the graph misses the neighborhood
  std::optional<TruncPoly> primitive; // witness for route (b)
  std::vector<TruncPoly> p_images;    // p-operations of the generators
};

/// Both routes are computed independently and must agree.
RestrictedCheck is_restricted_subvariety(const SubvarietyPresentation& Y,
                                         const RestrictedSymplecticModel& model);

/// Poisson structure on a polynomial ring given by (position, momentum)
/// index pairs: {f,g} = sum d_mom f d_pos g - d_pos f d_mom g.
struct PoissonPairs {
  std::vector<std::pair<int, int>> pairs;
};

TruncPoly poisson_bracket_poly(const TruncPoly& f, const TruncPoly& g, const PoissonPairs& pp);

struct CoisotropyResult {
  bool coisotropic = true;
  int offender_i = -1, offender_j = -1;  // generator indices on failure
  TruncPoly offending_bracket;
};

CoisotropyResult is_coisotropic_ideal(const IdealPresentation& I, const PoissonPairs& pp);

/// Surjection A_h (x) R -> B (x) R with R = k[[h]]/h^N and h acting as 0
/// on B = k[z1..zn]/(z_i^p); determined by h-free generator images.
struct WeylSurjection {
  WeylPtr W;
  RingPtr target;
  std::vector<TruncPoly> x_images, y_images;

  TruncPoly eval(const WeylElement& a) const;
};

struct NormalFormResult {
  std::vector<WeylAutomorphism> chain;  // applied to psi in order
  bool kernel_is_standard = false;
  std::vector<TruncPoly> final_x_images, final_y_images;
  std::vector<std::string> trail;
};

/// Constructive tubular-neighborhood normal form: twists psi by a chain of
/// verified automorphisms until its kernel is J = (h, y_1..y_n), and
/// certifies the result by exact linear algebra.  Errors: NotClosed /
/// NotExact when the underlying graph fails the Lagrangian / restricted
/// hypothesis, NeedsCoverExtension when the constant-shift step would
/// require a p-th root that does not exist over k[[h]]/h^N.
NormalFormResult normal_form(const WeylSurjection& psi);

}  // namespace rqa

#endif
