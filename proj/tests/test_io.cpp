#include <doctest.h>

#include "fixtures.hpp"
#include "forestsolve/error.hpp"
#include "forestsolve/io.hpp"

using namespace forestsolve;
using fx::P;

TEST_CASE("system JSON round trip") {
  LinearSystem sys = fx::tree_example();
  Json j = system_to_json(sys);
  LinearSystem back = system_from_json(j);
  CHECK(back.a == sys.a);
  CHECK(back.b == sys.b);
  CHECK(back.variables == sys.variables);
}

TEST_CASE("numbers and default variables") {
  LinearSystem sys = system_from_json(parse_json(R"({"A": [[-4, 2], [1, "-1"]], "b": [1, 1]})"));
  CHECK(sys.a(0, 0) == Polynomial(-4));
  CHECK(sys.variables == std::vector<std::string>{"x1", "x2"});
}

TEST_CASE("malformed systems") {
  CHECK_THROWS_AS(system_from_json(parse_json(R"({"A": [[1]]})")), InputError);
  CHECK_THROWS_AS(system_from_json(parse_json(R"({"A": [[1, 2]], "b": [1]})")), InputError);
  CHECK_THROWS_AS(system_from_json(parse_json(R"({"A": [["z1 +"]], "b": [1]})")), InputError);
  CHECK_THROWS_AS(system_from_json(parse_json(R"({"A": [[1.5]], "b": [1]})")), InputError);
  CHECK_THROWS_AS(system_from_json(parse_json(R"({"A": [[1]], "b": [1], "variables": ["a", "b"]})")), InputError);
  try {
    parse_json("{\n  \"A\": [1,,]\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("block JSON") {
  BlockInput in = block_system_from_json(parse_json(R"({
    "A": [["-z2", "z3", "0"], ["1", "1", "0"], ["0", "z3", "-z4"]],
    "b": ["0", "-z1", "z5"],
    "blocks": {"sizes": [2], "m0": 1}})"));
  CHECK(in.blocks.j == std::vector<int>{2});
  CHECK_THROWS_AS(block_system_from_json(parse_json(R"({"A": [[1]], "b": [1], "blocks": {"sizes": [2], "m0": 0}})")),
                  InputError);
}

TEST_CASE("graph JSON") {
  Multidigraph g(3);
  g.add_edge(1, 2, P("-z1"));
  g.add_edge(2, 3, P("z1 + z2"));
  Json j = graph_to_json(g);
  CHECK(j["edges"][1]["label"] == "z1 + z2");
  Multidigraph back = graph_from_json(j);
  CHECK(laplacian_of(back) == laplacian_of(g));
  CHECK(back.edges()[1].id == g.edges()[1].id);
  CHECK_THROWS_AS(graph_from_json(parse_json(R"({"nodes": 2, "edges": [{"src": 1, "tgt": 1, "label": "a"}]})")),
                  InputError);
  CHECK_THROWS_AS(graph_from_json(parse_json(R"({"nodes": 0, "edges": []})")), InputError);
}

TEST_CASE("witness JSON lists mu and group sums") {
  auto r = certify_nonneg(fx::tree_example());
  REQUIRE(r.certificate.has_value());
  Json w = witness_to_json(r.certificate->witness);
  CHECK(w["mu"].size() == 2);
  CHECK(w["group_sums"].size() == 2);
  CHECK(solution_to_json(r.certificate->solution)[0] == "z5/(z1 + 2*z2)");
}
