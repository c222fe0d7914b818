#include "forestsolve/forests.hpp"

#include <algorithm>

#include "forestsolve/error.hpp"

namespace forestsolve {

namespace {

struct ForestSearch {
  const Multidigraph& g;
  std::vector<std::vector<std::size_t>> out;
  std::vector<int> free_nodes;  // nodes outside B, ascending
  std::vector<bool> is_root;
  std::vector<int> target;      // chosen target per node, 0 when unassigned
  std::vector<std::size_t> chosen;
  std::vector<Forest>* sink = nullptr;

  bool closes_cycle(int v, int t) const {
    while (!is_root[static_cast<std::size_t>(t)] && target[static_cast<std::size_t>(t)] != 0) {
      if (t == v) return true;
      t = target[static_cast<std::size_t>(t)];
    }
    return t == v;
  }

  void emit() {
    Forest f;
    for (std::size_t k : chosen) f.edges.push_back(g.edges()[k].id);
    std::sort(f.edges.begin(), f.edges.end());
    const auto n = static_cast<std::size_t>(g.node_count());
    f.root_of.assign(n + 1, 0);
    for (std::size_t v = 1; v <= n; ++v) {
      if (is_root[v]) f.roots.push_back(static_cast<int>(v));
      std::size_t r = v;
      while (!is_root[r]) r = static_cast<std::size_t>(target[r]);
      f.root_of[v] = static_cast<int>(r);
    }
    sink->push_back(std::move(f));
  }

  void assign(std::size_t depth) {
    if (depth == free_nodes.size()) {
      emit();
      return;
    }
    int v = free_nodes[depth];
    for (std::size_t k : out[static_cast<std::size_t>(v)]) {
      int t = g.edges()[k].target;
      if (closes_cycle(v, t)) continue;
      target[static_cast<std::size_t>(v)] = t;
      chosen.push_back(k);
      assign(depth + 1);
      chosen.pop_back();
      target[static_cast<std::size_t>(v)] = 0;
    }
  }
};

ForestSearch make_search(const Multidigraph& g, const std::set<int>& roots) {
  const auto n = static_cast<std::size_t>(g.node_count());
  ForestSearch s{g, g.out_index(), {}, std::vector<bool>(n + 1, false), std::vector<int>(n + 1, 0), {}, nullptr};
  for (int r : roots) {
    if (r < 1 || r > g.node_count()) throw InputError("root " + std::to_string(r) + " is not a node");
    s.is_root[static_cast<std::size_t>(r)] = true;
  }
  for (int v = 1; v <= g.node_count(); ++v) {
    if (!s.is_root[static_cast<std::size_t>(v)]) s.free_nodes.push_back(v);
  }
  return s;
}

void sort_forests(std::vector<Forest>& forests) {
  std::sort(forests.begin(), forests.end(), [](const Forest& a, const Forest& b) { return a.edges < b.edges; });
}

}  // namespace

std::vector<Forest> enumerate_rooted_forests_serial(const Multidigraph& g, const std::set<int>& roots) {
  ForestSearch s = make_search(g, roots);
  std::vector<Forest> result;
  s.sink = &result;
  s.assign(0);
  sort_forests(result);
  return result;
}

std::vector<Forest> enumerate_rooted_forests(const Multidigraph& g, const std::set<int>& roots) {
  ForestSearch base = make_search(g, roots);
  if (base.free_nodes.empty()) {
    std::vector<Forest> result;
    base.sink = &result;
    base.assign(0);
    return result;
  }
  // Split on the outgoing edge of the first free node.
  const std::vector<std::size_t> first = base.out[static_cast<std::size_t>(base.free_nodes.front())];
  std::vector<std::vector<Forest>> slots(first.size());
  const auto count = static_cast<long>(first.size());
#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < count; ++c) {
    ForestSearch s = base;
    s.sink = &slots[static_cast<std::size_t>(c)];
    std::size_t k = first[static_cast<std::size_t>(c)];
    int v = s.free_nodes.front();
    s.target[static_cast<std::size_t>(v)] = g.edges()[k].target;
    s.chosen.push_back(k);
    s.assign(1);
  }
  std::vector<Forest> result;
  for (auto& slot : slots) {
    for (auto& f : slot) result.push_back(std::move(f));
  }
  sort_forests(result);
  return result;
}

std::vector<Forest> filter_by_f(const std::vector<Forest>& rooted, const std::set<int>& f) {
  std::vector<Forest> kept;
  for (const Forest& forest : rooted) {
    std::vector<int> hits;
    for (int v : f) hits.push_back(forest.root_of[static_cast<std::size_t>(v)]);
    std::sort(hits.begin(), hits.end());
    if (hits == forest.roots) kept.push_back(forest);
  }
  return kept;
}

namespace {

void check_sets(const Multidigraph& g, const std::set<int>& f, const std::set<int>& b) {
  if (f.size() != b.size()) {
    throw InputError("|F| = " + std::to_string(f.size()) + " differs from |B| = " + std::to_string(b.size()));
  }
  for (const auto* s : {&f, &b}) {
    for (int v : *s) {
      if (v < 1 || v > g.node_count()) throw InputError("node " + std::to_string(v) + " is out of range");
    }
  }
}

}  // namespace

std::vector<Forest> enumerate_forests(const Multidigraph& g, const std::set<int>& f, const std::set<int>& b) {
  check_sets(g, f, b);
  return filter_by_f(enumerate_rooted_forests(g, b), f);
}

int inversion_count(const Forest& forest, const std::set<int>& f) {
  std::vector<int> image;
  for (int v : f) image.push_back(forest.root_of[static_cast<std::size_t>(v)]);
  int inv = 0;
  for (std::size_t a = 0; a < image.size(); ++a) {
    for (std::size_t c = a + 1; c < image.size(); ++c) {
      if (image[a] > image[c]) ++inv;
    }
  }
  return inv;
}

Polynomial forest_label(const Multidigraph& g, const Forest& forest) {
  Polynomial p(1L);
  for (EdgeId id : forest.edges) p *= g.edge(id).label;
  return p;
}

Polynomial forest_sum(const Multidigraph& g, const std::vector<Forest>& forests) {
  Polynomial total;
  for (const Forest& f : forests) total += forest_label(g, f);
  return total;
}

Polynomial upsilon(const Multidigraph& g, const std::set<int>& f, const std::set<int>& b) {
  return forest_sum(g, enumerate_forests(g, f, b));
}

namespace {

Polynomial signed_sum(const Multidigraph& g, const std::vector<Forest>& forests, const std::set<int>& f) {
  Polynomial total;
  for (const Forest& forest : forests) {
    if (inversion_count(forest, f) % 2 == 0) total += forest_label(g, forest);
    else total -= forest_label(g, forest);
  }
  return total;
}

}  // namespace

Polynomial upsilon_signed(const Multidigraph& g, const std::set<int>& f, const std::set<int>& b) {
  return signed_sum(g, enumerate_forests(g, f, b), f);
}

Polynomial upsilon_rooted(const Multidigraph& g, int j) {
  return forest_sum(g, enumerate_rooted_forests(g, {j}));
}

Polynomial upsilon_roots(const Multidigraph& g, const std::set<int>& b) {
  return forest_sum(g, enumerate_rooted_forests(g, b));
}

MinorCheck all_minors_check(const Multidigraph& g, const PolyMatrix& laplacian,
                            const std::vector<Forest>& rooted_at_b, const std::set<int>& f,
                            const std::set<int>& b) {
  check_sets(g, f, b);
  MinorCheck r;
  r.minor = determinant(submatrix(laplacian, f, b));
  r.epsilon = g.node_count() - static_cast<int>(f.size());
  for (int i : f) r.epsilon += i;
  for (int j : b) r.epsilon += j;
  Polynomial s = signed_sum(g, filter_by_f(rooted_at_b, f), f);
  r.signed_sum = (r.epsilon % 2 == 0) ? s : -s;
  r.holds = r.minor == r.signed_sum;
  return r;
}

MinorCheck all_minors_check(const Multidigraph& g, const std::set<int>& f, const std::set<int>& b) {
  check_sets(g, f, b);
  return all_minors_check(g, laplacian_of(g), enumerate_rooted_forests(g, b), f, b);
}

}  // namespace forestsolve
