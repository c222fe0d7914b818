#pragma once

// Rooted spanning forests of a multidigraph and the sums over them.

#include <set>
#include <vector>

#include "forestsolve/multigraph.hpp"

namespace forestsolve {

struct Forest {
  std::vector<EdgeId> edges;  // sorted
  std::vector<int> roots;     // sorted
  std::vector<int> root_of;   // root_of[v] for v in 1..n; slot 0 unused

  friend bool operator==(const Forest& a, const Forest& b) { return a.edges == b.edges && a.roots == b.roots; }
};

/// Spanning forests whose roots are exactly B: every node outside B keeps one
/// outgoing edge and nothing closes a cycle. Ordered by edge-id sequence.
std::vector<Forest> enumerate_rooted_forests(const Multidigraph& g, const std::set<int>& roots);
std::vector<Forest> enumerate_rooted_forests_serial(const Multidigraph& g, const std::set<int>& roots);

/// The forests rooted at B in which every tree holds exactly one node of F.
/// Throws InputError when |F| != |B| or a node is out of range.
std::vector<Forest> enumerate_forests(const Multidigraph& g, const std::set<int>& f, const std::set<int>& b);

/// Keeps the forests of `rooted` whose trees each hold exactly one node of F.
std::vector<Forest> filter_by_f(const std::vector<Forest>& rooted, const std::set<int>& f);

/// Inversions of the map F -> B sending a node to the root of its tree.
int inversion_count(const Forest& forest, const std::set<int>& f);

Polynomial forest_label(const Multidigraph& g, const Forest& forest);
Polynomial forest_sum(const Multidigraph& g, const std::vector<Forest>& forests);

Polynomial upsilon(const Multidigraph& g, const std::set<int>& f, const std::set<int>& b);
Polynomial upsilon_signed(const Multidigraph& g, const std::set<int>& f, const std::set<int>& b);
/// Sum over the spanning trees rooted at j.
Polynomial upsilon_rooted(const Multidigraph& g, int j);
/// Sum over all forests rooted at B, whatever F.
Polynomial upsilon_roots(const Multidigraph& g, const std::set<int>& b);

struct MinorCheck {
  Polynomial minor;        // det of L without rows F and columns B
  Polynomial signed_sum;   // (-1)^epsilon times the inversion-signed forest sum
  int epsilon = 0;
  bool holds = false;
};

MinorCheck all_minors_check(const Multidigraph& g, const std::set<int>& f, const std::set<int>& b);

/// Same check when the laplacian and the forests rooted at B are already known.
MinorCheck all_minors_check(const Multidigraph& g, const PolyMatrix& laplacian,
                            const std::vector<Forest>& rooted_at_b, const std::set<int>& f,
                            const std::set<int>& b);

}  // namespace forestsolve
