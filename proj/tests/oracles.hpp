#ifndef RQA_TEST_ORACLES_HPP
#define RQA_TEST_ORACLES_HPP

#include <vector>

#include "rqa/weyl.hpp"

namespace rqa::testing {

/// Left-regular matrix representation of the reduced Weyl algebra on its
/// monomial basis (dimension p^(2n)); built from the generator actions
/// only, never from the rewriting engine, so it is an independent oracle
/// for products.
class RegularRep {
 public:
  using Matrix = std::vector<std::vector<HS>>;

  explicit RegularRep(const WeylPtr& W) : W_(W) {
    Mono m(2 * W->n, 0);
    while (true) {
      index_.emplace(m, static_cast<int>(basis_.size()));
      basis_.push_back(m);
      int i = 2 * W->n - 1;
      for (; i >= 0; --i) {
        if (m[i] < W->p - 1) {
          ++m[i];
          break;
        }
        m[i] = 0;
      }
      if (i < 0) break;
    }
    const int n = W->n, p = W->p;
    for (int g = 0; g < 2 * n; ++g) gen_.push_back(zero_matrix());
    for (int b = 0; b < dim(); ++b) {
      const Mono& m0 = basis_[b];
      for (int i = 0; i < n; ++i) {
        // x_i * x^a y^b: raises a_i
        if (m0[i] + 1 < p) {
          Mono t = m0;
          ++t[i];
          gen_[i][index_.at(t)][b] = hs_const(1, p, W->N);
        }
        // y_i * x^a y^b = x^a y^(b+e_i) + h a_i x^(a-e_i) y^b
        if (m0[n + i] + 1 < p) {
          Mono t = m0;
          ++t[n + i];
          gen_[n + i][index_.at(t)][b] = gen_[n + i][index_.at(t)][b] + hs_const(1, p, W->N);
        }
        if (m0[i] > 0) {
          Mono t = m0;
          --t[i];
          gen_[n + i][index_.at(t)][b] =
              gen_[n + i][index_.at(t)][b] + HS(Gf(m0[i], p), W->N).shifted(1).truncated(W->N);
        }
      }
    }
  }

  int dim() const { return static_cast<int>(basis_.size()); }

  Matrix zero_matrix() const { return Matrix(dim(), std::vector<HS>(dim())); }

  Matrix identity() const {
    Matrix r = zero_matrix();
    for (int i = 0; i < dim(); ++i) r[i][i] = hs_const(1, W_->p, W_->N);
    return r;
  }

  Matrix mul(const Matrix& A, const Matrix& B) const {
    Matrix r = zero_matrix();
    for (int i = 0; i < dim(); ++i)
      for (int k = 0; k < dim(); ++k) {
        if (A[i][k].is_zero()) continue;
        for (int j = 0; j < dim(); ++j) {
          if (B[k][j].is_zero()) continue;
          r[i][j] = r[i][j] + A[i][k] * B[k][j];
        }
      }
    return r;
  }

  /// Matrix of left multiplication, assembled generator by generator.
  Matrix of(const WeylElement& a) const {
    Matrix r = zero_matrix();
    const int n = W_->n;
    for (const auto& [m, c] : a.terms()) {
      Matrix t = identity();
      for (int i = 0; i < n; ++i)
        for (int e = 0; e < m[i]; ++e) t = mul(t, gen_[i]);
      for (int i = 0; i < n; ++i)
        for (int e = 0; e < m[n + i]; ++e) t = mul(t, gen_[n + i]);
      for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
          if (!t[i][j].is_zero()) r[i][j] = r[i][j] + t[i][j] * c;
    }
    return r;
  }

  bool agree(const Matrix& A, const Matrix& B, int horder) const {
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        if (!A[i][j].agrees_with(B[i][j], horder)) return false;
    return true;
  }

  /// Column of the unit monomial recovers the element.
  WeylElement column_of_one(const Matrix& A) const {
    int c = index_.at(Mono(2 * W_->n, 0));
    WeylElement e(W_);
    for (int i = 0; i < dim(); ++i) e.add_term(basis_[i], A[i][c]);
    return e;
  }

 private:
  WeylPtr W_;
  std::vector<Mono> basis_;
  std::map<Mono, int> index_;
  std::vector<Matrix> gen_;
};

inline WeylElement rand_weyl(Rng& rng, const WeylPtr& W, int density = 3, int hdepth = 2) {
  WeylElement e(W);
  for (int t = 0; t < density; ++t) {
    Mono m(2 * W->n);
    for (auto& v : m) v = rng.uniform(0, W->p - 1);
    std::vector<Gf> c(rng.uniform(1, hdepth));
    for (auto& g : c) g = Gf(rng.uniform(0, W->p - 1), W->p);
    e.add_term(std::move(m), HS(std::move(c), W->N));
  }
  return e;
}

}  // namespace rqa::testing

#endif
