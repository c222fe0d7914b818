#pragma once

// Block systems: d square diagonal blocks, each with one distinguished row
// carrying the only nonzero entry of b in that block, plus m0 free rows.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "forestsolve/linsys.hpp"
#include "forestsolve/pgraph.hpp"

namespace forestsolve {

struct BlockStructure {
  std::vector<int> sizes;  // m_1..m_d
  int m0 = 0;
  std::vector<int> j;      // distinguished rows, j[i-1] in N_i

  int d() const { return static_cast<int>(sizes.size()); }
  int m() const;
  /// N_i for i in 1..d; N_0 = {m-m0+1, ..., m+1}.
  std::vector<int> block(int i) const;
  /// Index of the block holding a node (0 for N_0, including m+1).
  int block_of(int node) const;
  /// {j_1, ..., j_d, m+1}.
  std::set<int> f() const;
};

/// Violations of the block shape; empty when the system has the form.
std::vector<std::string> validate_block_form(const LinearSystem& sys, const BlockStructure& bs);

/// j_i is the row of the nonzero entry of b in block i, or the smallest row of
/// the block when b vanishes there. Throws InputError on two nonzero entries.
std::vector<int> choose_j(const LinearSystem& sys, const std::vector<int>& sizes, int m0);

/// The finest partition of rows 1..m-m0 into consecutive blocks compatible with
/// the support of A and b; nullopt when none exists.
std::optional<BlockStructure> detect_blocks(const LinearSystem& sys, int m0);

struct ACompatible {
  PolyMatrix laplacian;
  Multidigraph graph;
};

/// Rows outside F copied from (A|b); in row j_k, column i of N_k gets minus the
/// part of the remaining column sum of A with the sign that keeps the entry
/// nonnegative off the diagonal (nonpositive on it); row m+1 closes the column
/// sums. nullopt when the result still has an edge between blocks.
std::optional<ACompatible> build_acompatible(const LinearSystem& sys, const BlockStructure& bs);

/// Laplacian with the rows j_k given explicitly (each of length m+1) and row
/// m+1 closing the column sums.
PolyMatrix acompatible_with_rows(const LinearSystem& sys, const BlockStructure& bs,
                                 const std::vector<std::vector<Polynomial>>& rows);

std::vector<std::string> validate_acompatible(const Multidigraph& g, const BlockStructure& bs,
                                              const LinearSystem& sys);

struct BlockSolution {
  Solution solution;
  std::vector<Polynomial> numerators;
  Polynomial denominator;
};

/// Forest-product formula for an A-compatible graph. Throws InputError when
/// `g` is not A-compatible and SingularSystemError on a zero denominator.
BlockSolution solve_block(const LinearSystem& sys, const BlockStructure& bs, const Multidigraph& g);
BlockSolution solve_block_serial(const LinearSystem& sys, const BlockStructure& bs, const Multidigraph& g);

struct StarWitness {
  int block = 0;  // i
  int target = 0; // l
  EdgeId edge;
};

struct StarCheck {
  bool holds = true;
  std::optional<StarWitness> witness;
};

/// Every path from j_i to a node l through a negative edge passes m+1.
StarCheck check_condition_star(const Multidigraph& g, const BlockStructure& bs);

/// Rows l in N_i, i > 0, with a path to a negative edge not touching m+1.
std::set<int> zero_components(const Multidigraph& g, const BlockStructure& bs);

struct BlockCertificate {
  BlockSolution solution;
  PGraphWitness witness;
  PolyMatrix laplacian;
  std::set<int> zeros;
  bool from_heuristic = true;
};

struct BlockCertifyResult {
  std::optional<BlockCertificate> certificate;
  std::vector<std::string> hypothesis_failures;
  std::string reason;
};

/// Looks for an A-compatible P-graph satisfying (*) and certifies the solution.
/// The heuristic Laplacian is tried first, then up to `budget` alternative fillings
/// of the distinguished rows.
BlockCertifyResult certify_block_nonneg(const LinearSystem& sys, const BlockStructure& bs,
                                        std::size_t budget = 4096);

}  // namespace forestsolve
