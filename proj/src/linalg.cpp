#include "rqa/linalg.hpp"

namespace rqa {

namespace {
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  return gf_inv(Gf::raw(a, p)).v;
}
}  // namespace

std::vector<int> rref(GfMatrix& A, GfMatrix* B) {
  const int p = A.p();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < A.cols() && r < A.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < A.rows(); ++i)
      if (A.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j < A.cols(); ++j) std::swap(A.at(piv, j), A.at(r, j));
      if (B)
        for (int j = 0; j < B->cols(); ++j) std::swap(B->at(piv, j), B->at(r, j));
    }
    std::uint32_t inv = inv_mod(A.at(r, c), p);
    for (int j = 0; j < A.cols(); ++j)
      A.at(r, j) = static_cast<std::uint32_t>((std::uint64_t(A.at(r, j)) * inv) % p);
    if (B)
      for (int j = 0; j < B->cols(); ++j)
        B->at(r, j) = static_cast<std::uint32_t>((std::uint64_t(B->at(r, j)) * inv) % p);
    for (int i = 0; i < A.rows(); ++i) {
      if (i == r || A.at(i, c) == 0) continue;
      std::uint64_t f = A.at(i, c);
      for (int j = 0; j < A.cols(); ++j)
        A.at(i, j) = static_cast<std::uint32_t>((A.at(i, j) + (p - 1) * f % p * A.at(r, j)) % p);
      if (B)
        for (int j = 0; j < B->cols(); ++j)
          B->at(i, j) =
              static_cast<std::uint32_t>((B->at(i, j) + (p - 1) * f % p * B->at(r, j)) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::optional<std::vector<Gf>> solve_linear(const GfMatrix& A, const std::vector<Gf>& b) {
  const int p = A.p();
  GfMatrix M = A;
  GfMatrix rhs(A.rows(), 1, p);
  for (int i = 0; i < A.rows(); ++i) rhs.at(i, 0) = i < static_cast<int>(b.size()) ? b[i].v : 0;
  std::vector<int> pivots = rref(M, &rhs);
  // Inconsistency: a zero row of M with nonzero rhs.
  for (int i = static_cast<int>(pivots.size()); i < A.rows(); ++i)
    if (rhs.at(i, 0) != 0) return std::nullopt;
  std::vector<Gf> x(A.cols(), Gf(0, p));
  for (int k = 0; k < static_cast<int>(pivots.size()); ++k)
    x[pivots[k]] = Gf::raw(rhs.at(k, 0), p);
  return x;
}

std::vector<std::vector<Gf>> kernel_basis(const GfMatrix& A) {
  const int p = A.p();
  GfMatrix M = A;
  std::vector<int> pivots = rref(M);
  std::vector<bool> is_pivot(A.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Gf>> basis;
  for (int c = 0; c < A.cols(); ++c) {
    if (is_pivot[c]) continue;
    std::vector<Gf> v(A.cols(), Gf(0, p));
    v[c] = Gf(1, p);
    for (int k = 0; k < static_cast<int>(pivots.size()); ++k)
      v[pivots[k]] = -Gf::raw(M.at(k, c), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank(const GfMatrix& A) {
  GfMatrix M = A;
  return static_cast<int>(rref(M).size());
}

}  // namespace rqa
