#pragma once

// Dense Gaussian elimination over one field of the tower.

#include <cstddef>
#include <vector>

#include "capgeom/field.hpp"

namespace capgeom {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Code& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Code operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Code> data_;
};

/// In-place reduced row echelon form; returns the pivot column of each pivot row.
std::vector<std::size_t> row_reduce(const Field& F, Matrix& m);

std::size_t rank(const Field& F, Matrix m);

/// Basis of { v : m v = 0 }, one vector per free column.
std::vector<std::vector<Code>> kernel(const Field& F, Matrix m);

/// Requires a square matrix.
Code determinant(const Field& F, Matrix m);

}  // namespace capgeom
