#include "forestsolve/matrix.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace forestsolve {

Polynomial determinant_cofactor(const PolyMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial(1L);
  if (n > 20) throw std::invalid_argument("cofactor expansion limited to dimension 20");
  // det of rows [n - popcount(mask), n) restricted to the columns in mask,
  // built bottom-up: dp[mask] expands along its first row.
  std::vector<Polynomial> dp(std::size_t{1} << n);
  dp[0] = Polynomial(1L);
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    int k = std::popcount(mask);
    std::size_t row = n - static_cast<std::size_t>(k);
    Polynomial acc;
    int position = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(mask & (1U << c))) continue;
      const Polynomial& entry = m(row, c);
      if (!entry.is_zero()) {
        const Polynomial& rest = dp[mask & ~(1U << c)];
        if (!rest.is_zero()) {
          if (position % 2 == 0) acc += entry * rest;
          else acc -= entry * rest;
        }
      }
      ++position;
    }
    dp[mask] = std::move(acc);
  }
  return dp[(std::size_t{1} << n) - 1];
}

Polynomial determinant_bareiss(const PolyMatrix& input) {
  if (!input.square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return Polynomial(1L);
  PolyMatrix a = input;
  Polynomial prev(1L);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k).is_zero()) ++swap;
      if (swap == n) return Polynomial{};
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        auto q = num.divide_exact(prev);
        if (!q) throw std::logic_error("Bareiss step was not exact");
        a(i, j) = std::move(*q);
      }
      a(i, k) = Polynomial{};
    }
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

Polynomial determinant(const PolyMatrix& m) {
  return m.rows() <= 8 ? determinant_cofactor(m) : determinant_bareiss(m);
}

PolyMatrix submatrix(const PolyMatrix& m, const std::set<int>& drop_rows, const std::set<int>& drop_cols) {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!drop_rows.count(static_cast<int>(i) + 1)) rows.push_back(i);
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (!drop_cols.count(static_cast<int>(j) + 1)) cols.push_back(j);
  }
  PolyMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  }
  return out;
}

std::vector<Polynomial> column_sums(const PolyMatrix& m) {
  std::vector<Polynomial> sums(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) sums[j] += m(i, j);
  }
  return sums;
}

}  // namespace forestsolve
