#ifndef RQA_LINALG_HPP
#define RQA_LINALG_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "rqa/gf.hpp"

namespace rqa {

/// Dense matrix over GF(p).  Backs every constructive solver in the kernel;
/// all answers are exact.
class GfMatrix {
 public:
  GfMatrix(int rows, int cols, int p)
      : rows_(rows), cols_(cols), p_(p), a_(std::size_t(rows) * cols, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int p() const { return p_; }

  std::uint32_t& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
  std::uint32_t at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }
  void set(int r, int c, Gf g) { at(r, c) = g.v; }
  void add(int r, int c, Gf g) { at(r, c) = (at(r, c) + g.v) % p_; }

 private:
  int rows_, cols_, p_;
  std::vector<std::uint32_t> a_;
};

/// Row-reduce [A | B] in place; returns pivot columns of A.
std::vector<int> rref(GfMatrix& A, GfMatrix* B = nullptr);

/// One solution of A x = b, if any.
std::optional<std::vector<Gf>> solve_linear(const GfMatrix& A, const std::vector<Gf>& b);

/// Basis of the null space of A.
std::vector<std::vector<Gf>> kernel_basis(const GfMatrix& A);

int rank(const GfMatrix& A);

}  // namespace rqa

#endif
