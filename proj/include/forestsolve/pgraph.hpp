#pragma once

// Edge partitions, P-graphs and the nonnegative expansion of tree sums.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "forestsolve/forests.hpp"
#include "forestsolve/linsys.hpp"
#include "forestsolve/multigraph.hpp"

namespace forestsolve {

/// Negative edge -> the positive edges it is paired with. A negative edge
/// missing from the map is paired with nothing.
using Mu = std::map<EdgeId, std::vector<EdgeId>>;

struct Violation {
  std::string condition;  // "(i)", "(ii)", "(iii a)", "(iii b)", "(iii c)", "(iv)", "domain"
  std::vector<EdgeId> edges;
  std::string detail;
};

struct PGraphWitness {
  Multidigraph graph;
  Mu mu;
  std::map<EdgeId, Polynomial> group_sums;  // label of e plus the labels of mu(e)
};

std::vector<Violation> validate_partition(const Multidigraph& g, const Mu& mu);

/// Some cycle through two or more negative edges, if any.
std::optional<Cycle> cycle_with_two_negatives(const Multidigraph& g);

/// A witness when (g, mu) is an edge partition whose group sums are all
/// certified nonnegative.
std::optional<PGraphWitness> is_pgraph(const Multidigraph& g, const Mu& mu);

struct PGraphSearch {
  std::optional<PGraphWitness> witness;
  std::string reason;  // empty on success
};

/// Looks for a map mu on a fixed graph, without rewriting edges. Backtracks
/// over the assignment of positive edges; `budget` caps the visited states.
PGraphSearch find_mu(const Multidigraph& g, std::size_t budget = 1000000);

/// Looks for a P-graph with Laplacian L. Negative parts of each entry become one
/// edge, positive parts one edge per monomial, and mu is found per source node
/// and monomial as a transportation problem; positive edges shared by several
/// negative edges are split.
PGraphSearch search_pgraph(const PolyMatrix& laplacian);
std::optional<PGraphWitness> find_pgraph(const PolyMatrix& laplacian);

/// Forest built from an edge set in which no node has two outgoing edges;
/// nullopt when the set has a cycle. Roots are the nodes without outgoing edge.
std::optional<Forest> forest_from_edges(const Multidigraph& g, std::vector<EdgeId> edges);

/// The largest E inside zeta ∩ im(mu) whose replacement by mu*(E) is still a
/// forest with the same roots.
std::vector<EdgeId> max_replacement_set(const PGraphWitness& w, const Forest& zeta);

/// Forests rooted at B whose maximal replacement set is empty.
std::vector<Forest> lambda_forests(const PGraphWitness& w, const std::set<int>& roots);

/// zeta with its maximal replacement set swapped for the paired negative edges.
Forest psi(const PGraphWitness& w, const Forest& zeta);

/// Every forest obtained from zeta by swapping each negative edge e for any
/// member of {e} ∪ mu(e).
std::vector<Forest> psi_fiber(const PGraphWitness& w, const Forest& zeta);

/// Tree sum rooted at i from the nonnegative expansion over lambda forests.
Polynomial positive_upsilon(const PGraphWitness& w, int i);

/// Some tree of lambda(i) has all its group sums strictly positive.
bool nonzero_component(const PGraphWitness& w, int i);

struct Certificate {
  Solution solution;                   // reduced x_i
  std::vector<Polynomial> numerators;  // tree sums rooted at i, nonnegative
  Polynomial denominator;              // tree sum rooted at m+1, nonnegative
  PGraphWitness witness;
};

struct CertifyResult {
  std::optional<Certificate> certificate;
  std::string reason;
};

/// Throws SingularSystemError when a witness exists but det(A) = 0.
CertifyResult certify_nonneg(const LinearSystem& sys);

}  // namespace forestsolve
