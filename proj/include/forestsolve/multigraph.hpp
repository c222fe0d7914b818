#pragma once

// Labeled multidigraphs on nodes 1..m+1 and their Laplacians.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "forestsolve/matrix.hpp"
#include "forestsolve/symring.hpp"

namespace forestsolve {

struct EdgeId {
  std::uint32_t value = 0;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

struct Edge {
  EdgeId id;
  int source = 0;
  int target = 0;
  Polynomial label;

  bool negative() const { return label.sign().kind == SignKind::Nonpos; }
  bool positive() const { return label.sign().kind == SignKind::Nonneg; }
};

class Multidigraph {
 public:
  explicit Multidigraph(int node_count = 1);

  int node_count() const { return node_count_; }
  /// The distinguished last node m+1.
  int sink() const { return node_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Appends an edge with a fresh id. Rejects self-loops, zero labels and
  /// endpoints outside 1..node_count with InputError.
  EdgeId add_edge(int source, int target, Polynomial label);
  /// Same checks; the id must be unused. Later fresh ids stay above it.
  void add_edge_with_id(EdgeId id, int source, int target, Polynomial label);

  /// nullptr when absent.
  const Edge* find(EdgeId id) const;
  /// Throws InputError when absent.
  const Edge& edge(EdgeId id) const;

  /// Indices into edges(), per node (1-based; slot 0 unused), in id order.
  std::vector<std::vector<std::size_t>> out_index() const;

  EdgeId next_id() const { return EdgeId{next_id_}; }

 private:
  void check_edge(int source, int target, const Polynomial& label) const;

  int node_count_;
  std::uint32_t next_id_ = 0;
  std::vector<Edge> edges_;  // sorted by id
};

PolyMatrix laplacian_of(const Multidigraph& g);

/// One edge j->i labeled L_ij per nonzero off-diagonal entry. Throws InputError
/// when L is not square or some column sum is nonzero.
Multidigraph canonical_graph(const PolyMatrix& laplacian);

struct SplitResult {
  Multidigraph graph;
  std::vector<EdgeId> parts;  // ids of the replacement edges, in the order given
};

/// Replaces edge `e` by parallel edges with the given labels. Throws InputError
/// when a part is zero or the parts do not sum to the label.
SplitResult split_edge(const Multidigraph& g, EdgeId e, const std::vector<Polynomial>& parts);

struct MergeResult {
  Multidigraph graph;
  std::map<EdgeId, EdgeId> old_to_new;  // every edge of the input
};

/// Merges each bundle of parallel negative edges into one edge carrying the
/// smallest id of the bundle and the sum of the labels.
MergeResult merge_parallel_negative(const Multidigraph& g);

using Cycle = std::vector<EdgeId>;

/// Every elementary directed cycle once, starting with the edge that leaves the
/// cycle's smallest node. Parallel edges give distinct cycles.
std::vector<Cycle> simple_cycles(const Multidigraph& g);

/// Is there a directed path from `from` to `to` whose nodes avoid `avoid`?
/// from == to is always reachable.
bool reaches_avoiding(const Multidigraph& g, int from, int to, int avoid);

/// Nodes reachable from `from` without entering `avoid` (0 for no restriction).
std::vector<bool> reachable_from(const Multidigraph& g, int from, int avoid = 0);

struct DotOptions {
  std::string name = "G";
  bool dash_negative = true;
};

std::string to_dot(const Multidigraph& g, const DotOptions& options = {});

}  // namespace forestsolve
