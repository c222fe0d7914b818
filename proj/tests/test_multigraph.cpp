#include <doctest.h>

#include "fixtures.hpp"
#include "forestsolve/error.hpp"

using namespace forestsolve;
using fx::P;

TEST_CASE("edges are validated") {
  Multidigraph g(3);
  CHECK_THROWS_AS(g.add_edge(1, 1, P("z1")), InputError);
  CHECK_THROWS_AS(g.add_edge(1, 4, P("z1")), InputError);
  CHECK_THROWS_AS(g.add_edge(0, 2, P("z1")), InputError);
  CHECK_THROWS_AS(g.add_edge(1, 2, P("0")), InputError);
  EdgeId a = g.add_edge(1, 2, P("z1"));
  EdgeId b = g.add_edge(1, 2, P("z2"));
  CHECK(a < b);
  CHECK(g.edge_count() == 2);
  CHECK_THROWS_AS(g.add_edge_with_id(a, 2, 3, P("z3")), InputError);
  g.add_edge_with_id(EdgeId{10}, 2, 3, P("z3"));
  CHECK(g.next_id().value == 11);
  CHECK(g.find(EdgeId{5}) == nullptr);
  CHECK_THROWS_AS(g.edge(EdgeId{5}), InputError);
  CHECK(g.out_index()[1].size() == 2);
}

TEST_CASE("laplacian of a multigraph") {
  Multidigraph g(3);
  g.add_edge(1, 2, P("z1"));
  g.add_edge(1, 2, P("z2"));
  g.add_edge(2, 3, P("-z3"));
  PolyMatrix l = laplacian_of(g);
  CHECK(l(1, 0) == P("z1 + z2"));
  CHECK(l(0, 0) == P("-z1 - z2"));
  CHECK(l(2, 1) == P("-z3"));
  CHECK(l(1, 1) == P("z3"));
  for (const auto& s : column_sums(l)) CHECK(s.is_zero());
}

TEST_CASE("canonical graph round trip") {
  PolyMatrix l = bordered_laplacian(fx::tree_example());
  Multidigraph g = canonical_graph(l);
  CHECK(laplacian_of(g) == l);
  CHECK(g.edge_count() == 6);
  PolyMatrix bad(2, 2);
  bad(0, 1) = P("z1");
  CHECK_THROWS_AS(canonical_graph(bad), InputError);
}

TEST_CASE("split and merge keep the laplacian") {
  Multidigraph g(3);
  EdgeId e = g.add_edge(1, 3, P("z1 + 2*z2"));
  g.add_edge(1, 2, P("-z1"));
  g.add_edge(1, 2, P("-z2"));
  auto split = split_edge(g, e, {P("z1"), P("2*z2")});
  CHECK(split.parts.size() == 2);
  CHECK(laplacian_of(split.graph) == laplacian_of(g));
  CHECK_THROWS_AS(split_edge(g, e, {P("z1"), P("z2")}), InputError);
  auto merged = merge_parallel_negative(g);
  CHECK(merged.graph.edge_count() == 2);
  CHECK(laplacian_of(merged.graph) == laplacian_of(g));
  CHECK(merged.old_to_new.size() == 3);
}

TEST_CASE("simple cycles") {
  Multidigraph g(3);
  g.add_edge(1, 2, P("1"));
  g.add_edge(2, 1, P("1"));
  g.add_edge(2, 1, P("2"));
  g.add_edge(2, 3, P("1"));
  g.add_edge(3, 1, P("1"));
  auto cycles = simple_cycles(g);
  CHECK(cycles.size() == 3);  // two parallel 2-cycles and the triangle
  for (const auto& c : cycles) CHECK(g.edge(c.front()).source == 1);
  Multidigraph dag(3);
  dag.add_edge(1, 2, P("1"));
  dag.add_edge(2, 3, P("1"));
  CHECK(simple_cycles(dag).empty());
}

TEST_CASE("reachability with an avoided node") {
  Multidigraph g(4);
  g.add_edge(1, 2, P("1"));
  g.add_edge(2, 3, P("1"));
  g.add_edge(1, 4, P("1"));
  g.add_edge(4, 3, P("1"));
  CHECK(reaches_avoiding(g, 1, 3, 2));
  CHECK_FALSE(reaches_avoiding(g, 2, 1, 0));
  CHECK(reaches_avoiding(g, 2, 2, 0));
  auto r = reachable_from(g, 1, 4);
  CHECK(r[3]);
  CHECK_FALSE(r[4]);
}

TEST_CASE("dot export is deterministic") {
  Multidigraph g(3);
  g.add_edge(1, 3, P("z1"));
  g.add_edge(2, 1, P("-z2"));
  std::string dot = to_dot(g);
  CHECK(dot == to_dot(g));
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("dashed") != std::string::npos);
  CHECK(dot.find("\"-z2\"") != std::string::npos);
}
