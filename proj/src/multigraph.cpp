#include "forestsolve/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "forestsolve/error.hpp"

namespace forestsolve {

Multidigraph::Multidigraph(int node_count) : node_count_(node_count) {
  if (node_count < 1) throw InputError("a multidigraph needs at least one node");
}

void Multidigraph::check_edge(int source, int target, const Polynomial& label) const {
  if (source < 1 || source > node_count_ || target < 1 || target > node_count_) {
    throw InputError("edge " + std::to_string(source) + "->" + std::to_string(target) +
                     " has an endpoint outside 1.." + std::to_string(node_count_));
  }
  if (source == target) throw InputError("self-loop at node " + std::to_string(source));
  if (label.is_zero()) {
    throw InputError("zero label on edge " + std::to_string(source) + "->" + std::to_string(target));
  }
}

EdgeId Multidigraph::add_edge(int source, int target, Polynomial label) {
  check_edge(source, target, label);
  EdgeId id{next_id_++};
  edges_.push_back({id, source, target, std::move(label)});
  return id;
}

void Multidigraph::add_edge_with_id(EdgeId id, int source, int target, Polynomial label) {
  check_edge(source, target, label);
  auto pos = std::lower_bound(edges_.begin(), edges_.end(), id,
                              [](const Edge& e, EdgeId v) { return e.id < v; });
  if (pos != edges_.end() && pos->id == id) throw InputError("duplicate edge id " + std::to_string(id.value));
  edges_.insert(pos, Edge{id, source, target, std::move(label)});
  next_id_ = std::max(next_id_, id.value + 1);
}

const Edge* Multidigraph::find(EdgeId id) const {
  auto pos = std::lower_bound(edges_.begin(), edges_.end(), id,
                              [](const Edge& e, EdgeId v) { return e.id < v; });
  return (pos != edges_.end() && pos->id == id) ? &*pos : nullptr;
}

const Edge& Multidigraph::edge(EdgeId id) const {
  const Edge* e = find(id);
  if (!e) throw InputError("unknown edge id " + std::to_string(id.value));
  return *e;
}

std::vector<std::vector<std::size_t>> Multidigraph::out_index() const {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(node_count_) + 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) out[static_cast<std::size_t>(edges_[k].source)].push_back(k);
  return out;
}

PolyMatrix laplacian_of(const Multidigraph& g) {
  const auto n = static_cast<std::size_t>(g.node_count());
  PolyMatrix l(n, n);
  for (const Edge& e : g.edges()) {
    auto i = static_cast<std::size_t>(e.target - 1);
    auto j = static_cast<std::size_t>(e.source - 1);
    l(i, j) += e.label;
    l(j, j) -= e.label;
  }
  return l;
}

Multidigraph canonical_graph(const PolyMatrix& laplacian) {
  if (!laplacian.square() || laplacian.rows() == 0) throw InputError("a Laplacian must be a nonempty square matrix");
  auto sums = column_sums(laplacian);
  for (std::size_t j = 0; j < sums.size(); ++j) {
    if (!sums[j].is_zero()) {
      throw InputError("column " + std::to_string(j + 1) + " of the Laplacian sums to " + sums[j].to_string());
    }
  }
  Multidigraph g(static_cast<int>(laplacian.rows()));
  // Edge ids follow the column-major position of the entry.
  for (std::size_t j = 0; j < laplacian.cols(); ++j) {
    for (std::size_t i = 0; i < laplacian.rows(); ++i) {
      if (i != j && !laplacian(i, j).is_zero()) {
        g.add_edge(static_cast<int>(j) + 1, static_cast<int>(i) + 1, laplacian(i, j));
      }
    }
  }
  return g;
}

SplitResult split_edge(const Multidigraph& g, EdgeId e, const std::vector<Polynomial>& parts) {
  const Edge& old = g.edge(e);
  if (parts.empty()) throw InputError("split needs at least one part");
  Polynomial total;
  for (const auto& p : parts) {
    if (p.is_zero()) throw InputError("split part is zero");
    total += p;
  }
  if (total != old.label) {
    throw InputError("split parts sum to " + total.to_string() + ", not " + old.label.to_string());
  }
  SplitResult out{Multidigraph(g.node_count()), {}};
  for (const Edge& x : g.edges()) {
    if (x.id != e) out.graph.add_edge_with_id(x.id, x.source, x.target, x.label);
  }
  std::uint32_t next = g.next_id().value;
  for (const auto& p : parts) {
    EdgeId id{next++};
    out.graph.add_edge_with_id(id, old.source, old.target, p);
    out.parts.push_back(id);
  }
  return out;
}

MergeResult merge_parallel_negative(const Multidigraph& g) {
  std::map<std::pair<int, int>, std::vector<const Edge*>> bundles;
  for (const Edge& e : g.edges()) {
    if (e.negative()) bundles[{e.source, e.target}].push_back(&e);
  }
  MergeResult out{Multidigraph(g.node_count()), {}};
  for (const Edge& e : g.edges()) {
    if (!e.negative()) {
      out.graph.add_edge_with_id(e.id, e.source, e.target, e.label);
      out.old_to_new[e.id] = e.id;
    }
  }
  for (const auto& [key, list] : bundles) {
    Polynomial sum;
    for (const Edge* e : list) {
      sum += e->label;
      out.old_to_new[e->id] = list.front()->id;
    }
    out.graph.add_edge_with_id(list.front()->id, key.first, key.second, sum);
  }
  return out;
}

namespace {

struct CycleSearch {
  const Multidigraph& g;
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> on_path;
  std::vector<EdgeId> path;
  std::vector<Cycle> found;
  int start = 0;

  void extend(int node) {
    for (std::size_t k : out[static_cast<std::size_t>(node)]) {
      const Edge& e = g.edges()[k];
      if (e.target == start) {
        path.push_back(e.id);
        found.push_back(path);
        path.pop_back();
      } else if (e.target > start && !on_path[static_cast<std::size_t>(e.target)]) {
        on_path[static_cast<std::size_t>(e.target)] = true;
        path.push_back(e.id);
        extend(e.target);
        path.pop_back();
        on_path[static_cast<std::size_t>(e.target)] = false;
      }
    }
  }
};

}  // namespace

std::vector<Cycle> simple_cycles(const Multidigraph& g) {
  CycleSearch s{g, g.out_index(), std::vector<bool>(static_cast<std::size_t>(g.node_count()) + 1), {}, {}, 0};
  for (int v = 1; v <= g.node_count(); ++v) {
    s.start = v;
    s.on_path[static_cast<std::size_t>(v)] = true;
    s.extend(v);
    s.on_path[static_cast<std::size_t>(v)] = false;
  }
  return s.found;
}

std::vector<bool> reachable_from(const Multidigraph& g, int from, int avoid) {
  std::vector<bool> seen(static_cast<std::size_t>(g.node_count()) + 1, false);
  if (from == avoid) return seen;
  auto out = g.out_index();
  std::deque<int> queue{from};
  seen[static_cast<std::size_t>(from)] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (std::size_t k : out[static_cast<std::size_t>(v)]) {
      int t = g.edges()[k].target;
      if (t == avoid || seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = true;
      queue.push_back(t);
    }
  }
  return seen;
}

bool reaches_avoiding(const Multidigraph& g, int from, int to, int avoid) {
  if (from == to) return true;
  return reachable_from(g, from, avoid)[static_cast<std::size_t>(to)];
}

std::string to_dot(const Multidigraph& g, const DotOptions& options) {
  std::ostringstream os;
  os << "digraph " << options.name << " {\n";
  for (int v = 1; v <= g.node_count(); ++v) {
    os << "  " << v;
    if (v == g.sink()) os << " [shape=doublecircle]";
    os << ";\n";
  }
  for (const Edge& e : g.edges()) {
    os << "  " << e.source << " -> " << e.target << " [label=\"" << e.label.to_string() << "\"";
    if (options.dash_negative && e.negative()) os << ", style=dashed";
    os << ", id=\"e" << e.id.value << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace forestsolve
