#pragma once

// Square systems A x + b = 0 with polynomial entries, solved through rooted
// spanning-tree sums of the bordered Laplacian.

#include <string>
#include <vector>

#include "forestsolve/matrix.hpp"
#include "forestsolve/multigraph.hpp"

namespace forestsolve {

struct LinearSystem {
  PolyMatrix a;
  std::vector<Polynomial> b;
  std::vector<std::string> variables;

  std::size_t size() const { return b.size(); }
  /// Throws InputError when A is not m x m, b has the wrong length, or the
  /// variable list does not match.
  void validate() const;
};

using Solution = std::vector<RationalExpr>;

/// The (m+1)x(m+1) matrix with A in the top-left block, b in the last column and
/// a last row making every column sum zero.
PolyMatrix bordered_laplacian(const LinearSystem& sys);

/// x_i as the ratio of tree sums rooted at i and at m+1. Throws InputError when
/// the Laplacian of `g` is not the bordered Laplacian of `sys`, and
/// SingularSystemError when the tree sum at m+1 vanishes.
Solution solve_by_trees(const LinearSystem& sys, const Multidigraph& g);
Solution solve_by_trees_serial(const LinearSystem& sys, const Multidigraph& g);
/// Uses the canonical graph of the bordered Laplacian.
Solution solve_by_trees(const LinearSystem& sys);

/// Cramer's rule with exact determinants. Throws SingularSystemError.
Solution cramer_oracle(const LinearSystem& sys);

/// A x + b == 0 exactly.
bool residual_check(const LinearSystem& sys, const Solution& x);

bool solutions_equal(const Solution& a, const Solution& b);

/// Reorders equations: row k of the result is row order[k] (1-based) of sys.
LinearSystem permute_rows(const LinearSystem& sys, const std::vector<int>& order);

/// Default names x1..xm.
std::vector<std::string> default_variables(std::size_t m);

}  // namespace forestsolve
