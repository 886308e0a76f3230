#include "capgeom/linalg.hpp"

#include <utility>

#include "capgeom/error.hpp"

namespace capgeom {

std::vector<std::size_t> row_reduce(const Field& F, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    }
    const Code s = F.inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = F.mul(m(row, c), s);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Code f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) = F.sub(m(r, c), F.mul(f, m(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const Field& F, Matrix m) { return row_reduce(F, m).size(); }

std::vector<std::vector<Code>> kernel(const Field& F, Matrix m) {
  const auto pivots = row_reduce(F, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Code>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Code> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(m(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

Code determinant(const Field& F, Matrix m) {
  if (m.rows() != m.cols()) throw Error(Errc::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Code det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
      det = F.neg(det);
    }
    det = F.mul(det, m(col, col));
    const Code s = F.inv(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Code f = F.mul(m(r, col), s);
      for (std::size_t c = col; c < n; ++c) m(r, c) = F.sub(m(r, c), F.mul(f, m(col, c)));
    }
  }
  return det;
}

}  // namespace capgeom
