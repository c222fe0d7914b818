#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "forestsolve/error.hpp"
#include "forestsolve/forests.hpp"

using namespace forestsolve;
using fx::P;

namespace {

Multidigraph random_graph(std::mt19937_64& rng, int max_nodes, int max_edges) {
  int n = fx::pick(rng, 1, max_nodes);
  Multidigraph g(n);
  if (n == 1) return g;
  int edges = fx::pick(rng, 0, max_edges);
  for (int e = 0; e < edges; ++e) {
    int s = fx::pick(rng, 1, n);
    int t = fx::pick(rng, 1, n - 1);
    if (t >= s) ++t;
    int label = fx::pick(rng, -3, 2);
    g.add_edge(s, t, Polynomial(label >= 0 ? label + 1 : label));
  }
  return g;
}

// Every edge subset in which exactly the nodes outside B have one outgoing edge
// and no cycle closes.
std::vector<std::vector<EdgeId>> brute_forests(const Multidigraph& g, const std::set<int>& roots) {
  std::vector<std::vector<EdgeId>> out;
  const auto& edges = g.edges();
  for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
    std::vector<int> next(static_cast<std::size_t>(g.node_count()) + 1, 0);
    bool ok = true;
    std::vector<EdgeId> chosen;
    for (std::size_t k = 0; k < edges.size() && ok; ++k) {
      if (!(mask >> k & 1u)) continue;
      int s = edges[k].source;
      if (roots.count(s) || next[static_cast<std::size_t>(s)]) ok = false;
      next[static_cast<std::size_t>(s)] = edges[k].target;
      chosen.push_back(edges[k].id);
    }
    for (int v = 1; v <= g.node_count() && ok; ++v) {
      if (!roots.count(v) && !next[static_cast<std::size_t>(v)]) ok = false;
    }
    for (int v = 1; v <= g.node_count() && ok; ++v) {
      int cur = v;
      for (int steps = 0; steps <= g.node_count() && !roots.count(cur); ++steps) cur = next[static_cast<std::size_t>(cur)];
      if (!roots.count(cur)) ok = false;
    }
    if (ok) out.push_back(chosen);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("trees of the small example") {
  Multidigraph g = canonical_graph(bordered_laplacian(fx::tree_example()));
  CHECK(upsilon_rooted(g, 2) == P("2*z2*z4*z5"));
  CHECK(upsilon_rooted(g, 4) == P("(z1 + 2*z2)*z3*z4"));
}

TEST_CASE("enumerator matches brute force") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 150; ++round) {
    Multidigraph g = random_graph(rng, 5, 8);
    int n = g.node_count();
    for (std::uint32_t rmask = 0; rmask < (1u << n); ++rmask) {
      std::set<int> roots;
      for (int v = 1; v <= n; ++v) {
        if (rmask >> (v - 1) & 1u) roots.insert(v);
      }
      auto fast = enumerate_rooted_forests(g, roots);
      auto serial = enumerate_rooted_forests_serial(g, roots);
      REQUIRE(fast.size() == serial.size());
      std::vector<std::vector<EdgeId>> got;
      for (std::size_t k = 0; k < fast.size(); ++k) {
        CHECK(fast[k] == serial[k]);
        CHECK(fast[k].roots == std::vector<int>(roots.begin(), roots.end()));
        got.push_back(fast[k].edges);
      }
      CHECK(got == brute_forests(g, roots));
    }
  }
}

TEST_CASE("forest roots and inversions") {
  Multidigraph g(3);
  g.add_edge(1, 3, P("a"));
  g.add_edge(2, 3, P("b"));
  g.add_edge(2, 1, P("c"));
  auto forests = enumerate_forests(g, {1, 2}, {1, 3});
  // 2 hangs below 1 (then F-node 2 shares node 1's tree: rejected) or below 3
  REQUIRE(forests.size() == 1);
  CHECK(forest_label(g, forests[0]) == P("b"));
  CHECK(inversion_count(forests[0], {1, 2}) == 0);
  auto swapped = enumerate_forests(g, {1, 2}, {2, 3});
  REQUIRE(swapped.size() == 1);
  CHECK(forest_label(g, swapped[0]) == P("a"));
  CHECK(inversion_count(swapped[0], {1, 2}) == 1);  // 1 -> 3, 2 -> 2
  CHECK_THROWS_AS(enumerate_forests(g, {1}, {1, 2}), InputError);
  CHECK_THROWS_AS(enumerate_forests(g, {4}, {1}), InputError);
}

TEST_CASE("empty root set and isolated nodes") {
  Multidigraph g(2);
  g.add_edge(1, 2, P("a"));
  g.add_edge(2, 1, P("b"));
  CHECK(enumerate_rooted_forests(g, {}).empty());
  CHECK(upsilon_roots(g, {1, 2}) == Polynomial(1));
  Multidigraph single(1);
  CHECK(upsilon_rooted(single, 1) == Polynomial(1));
}

TEST_CASE("all-minors identity on random graphs") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 60; ++round) {
    Multidigraph g = random_graph(rng, 5, 9);
    int n = g.node_count();
    for (std::uint32_t fm = 0; fm < (1u << n); ++fm) {
      for (std::uint32_t bm = 0; bm < (1u << n); ++bm) {
        if (__builtin_popcount(fm) != __builtin_popcount(bm) || __builtin_popcount(fm) > 3) continue;
        std::set<int> f, b;
        for (int v = 1; v <= n; ++v) {
          if (fm >> (v - 1) & 1u) f.insert(v);
          if (bm >> (v - 1) & 1u) b.insert(v);
        }
        MinorCheck c = all_minors_check(g, f, b);
        CHECK(c.holds);
        CHECK(c.minor == c.signed_sum);
      }
    }
  }
}

TEST_CASE("symbolic all-minors identity") {
  Multidigraph g(4);
  g.add_edge(1, 2, P("a"));
  g.add_edge(2, 3, P("-b"));
  g.add_edge(3, 1, P("c"));
  g.add_edge(3, 4, P("d + e"));
  g.add_edge(1, 4, P("f"));
  g.add_edge(4, 2, P("g"));
  g.add_edge(1, 2, P("h"));
  for (const std::set<int>& f : std::vector<std::set<int>>{{1}, {2, 4}, {1, 3}, {4}, {1, 2, 3}}) {
    for (const std::set<int>& b : std::vector<std::set<int>>{{4}, {2, 4}, {1, 3}, {3}, {2, 3, 4}}) {
      if (f.size() != b.size()) continue;
      CHECK(all_minors_check(g, f, b).holds);
    }
  }
  // principal minor of order 3 picks up a sign
  CHECK(determinant(submatrix(laplacian_of(g), {4}, {4})) == -upsilon_rooted(g, 4));
}
