#pragma once

// Small dense matrices with exact entries and their determinants.

#include <cstddef>
#include <set>
#include <vector>

#include "forestsolve/symring.hpp"

namespace forestsolve {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using PolyMatrix = Matrix<Polynomial>;

/// Exact determinant. Cofactor expansion (memoised over column subsets) up to
/// dimension 8, fraction-free Bareiss elimination above. The 0x0 determinant is 1.
Polynomial determinant(const PolyMatrix& m);
Polynomial determinant_cofactor(const PolyMatrix& m);
Polynomial determinant_bareiss(const PolyMatrix& m);

/// Removes the given rows and columns (1-based indices).
PolyMatrix submatrix(const PolyMatrix& m, const std::set<int>& drop_rows, const std::set<int>& drop_cols);

std::vector<Polynomial> column_sums(const PolyMatrix& m);

}  // namespace forestsolve
