#include <doctest.h>

#include "fixtures.hpp"
#include "forestsolve/error.hpp"

using namespace forestsolve;
using fx::P;

TEST_CASE("network parsing") {
  Network net = parse_network(fx::crn_text());
  CHECK(net.species == std::vector<std::string>{"X1", "X5", "X3", "X6", "X2", "X4"});
  CHECK(net.reactions.size() == 11);
  CHECK(net.reactions[1].rate == "k2");
  CHECK(net.reactions[1].reactants == std::vector<std::pair<std::string, unsigned>>{{"X3", 1}});

  Network one = parse_network("A -> B ; k1");
  CHECK(one.species.size() == 2);
  CHECK(one.reactions.size() == 1);
  CHECK(parse_network("A <-> B ; k1, k2").reactions.size() == 2);

  Network multi = parse_network("species: C, B, A\n2 A + B -> 0 ; k\n");
  CHECK(multi.species == std::vector<std::string>{"C", "B", "A"});
  CHECK(multi.reactions[0].reactants == std::vector<std::pair<std::string, unsigned>>{{"A", 2}, {"B", 1}});
  CHECK(multi.reactions[0].products.empty());
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_network("A -> B"), ParseError);
  CHECK_THROWS_AS(parse_network("A -> B ; k1, k2"), ParseError);
  CHECK_THROWS_AS(parse_network("A <-> B ; k1"), ParseError);
  CHECK_THROWS_AS(parse_network("A -> A ; k"), ParseError);
  CHECK_THROWS_AS(parse_network("species: A\nA -> B ; k"), ParseError);
  try {
    parse_network("A -> B ; k1\nA => B ; k2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("mass-action equations") {
  Network net = parse_network(std::string("species: X1, X2, X3, X4, X5, X6\n") + fx::crn_text());
  auto odes = mass_action_odes(net);
  REQUIRE(odes.size() == 6);
  CHECK(odes[0] == P("-k1*x1*x5 + (k2 + k3)*x3 - k8*x1 + k9*x2"));
  CHECK(odes[4] == P("-k1*x1*x5 - k4*x2*x5 + k2*x3 + k5*x4 + k7*x6"));
  CHECK(odes[5] == P("k3*x3 + k6*x4 - k7*x6"));
  auto ab = mass_action_odes(parse_network("A -> B ; k1"));
  CHECK(ab[0] == P("-k1*xA"));
  CHECK(ab[1] == P("k1*xA"));
  CHECK(mass_action_odes(Network{}).empty());
}

TEST_CASE("conservation laws") {
  Network net = parse_network(std::string("species: X1, X2, X3, X4, X5, X6\n") + fx::crn_text());
  auto laws = conservation_laws(net);
  using V = std::vector<Rational>;
  REQUIRE(laws.size() == 2);
  CHECK(laws[0] == V{1, 1, 1, 1, 0, 0});
  CHECK(laws[1] == V{0, 0, 1, 1, 1, 1});
  auto n = stoichiometric_matrix(net);
  for (const auto& l : laws) {
    for (std::size_t r = 0; r < n.cols(); ++r) {
      Rational dot = 0;
      for (std::size_t s = 0; s < n.rows(); ++s) dot += l[s] * n(s, r);
      CHECK(dot == 0);
    }
  }
  CHECK(conservation_laws(parse_network("A -> B ; k1")) == std::vector<V>{V{1, 1}});
  CHECK(conservation_laws(parse_network("0 -> A ; k1")).empty());
}

TEST_CASE("steady-state system of the network") {
  Network net = parse_network(std::string("species: X1, X2, X3, X4, X5, X6\n") + fx::crn_text());
  SteadySystem s = build_steady_system(net, fx::crn_task());
  const LinearSystem& sys = s.system;
  CHECK(sys.variables == std::vector<std::string>{"x1", "x2", "x3", "x4", "x6"});
  CHECK(sys.a(0, 0) == P("-k1*x5 - k8"));
  CHECK(sys.a(0, 2) == P("k2 + k3"));
  CHECK(sys.a(2, 2) == P("-k2 - k3 - k10"));
  CHECK(sys.a(3, 3) == Polynomial(1));
  CHECK(sys.a(4, 4) == P("-k7"));
  CHECK(sys.b[3] == P("-T1"));
  for (std::size_t r : {0, 1, 2, 4}) CHECK(sys.b[r].is_zero());
  CHECK(s.blocks.sizes == std::vector<int>{4});
  CHECK(s.blocks.m0 == 1);
  CHECK(s.blocks.j == std::vector<int>{4});
  CHECK(s.row_origin[3] == "conservation T1");
}

TEST_CASE("steady-state parameterization") {
  Network net = parse_network(std::string("species: X1, X2, X3, X4, X5, X6\n") + fx::crn_text());
  ParameterizationReport rep = parameterize(net, fx::crn_task());
  REQUIRE(rep.certified);
  CHECK(solutions_equal(rep.solution, fx::crn_solution()));
  CHECK(residual_check(rep.steady.system, rep.solution));
  REQUIRE(rep.certificate.has_value());
  // the heuristic row of the conservation equation
  CHECK(rep.certificate->laplacian(3, 1) == P("k4*x5"));
  CHECK(rep.certificate->laplacian(3, 2) == P("k10"));
  CHECK(rep.certificate->laplacian(3, 3) == P("-k5 - 2*k6 - k11"));
  std::vector<std::string> vars{"k1", "k2", "k3", "k4", "k5", "k6", "k7", "k8", "k9", "k10", "k11", "T1", "x5"};
  Assignment ones;
  for (const auto& v : vars) ones[v] = 1;
  CHECK(rep.solution[1].evaluate(ones) > 0);
}

TEST_CASE("task validation") {
  Network net = parse_network(std::string("species: X1, X2, X3, X4, X5, X6\n") + fx::crn_text());
  SteadyStateTask nonlinear = fx::crn_task();
  nonlinear.solve_for = {"X1", "X2", "X3", "X4", "X5"};
  nonlinear.parameters = {"X6"};
  nonlinear.dropped = {"X6"};
  try {
    build_steady_system(net, nonlinear);
    FAIL("expected a nonlinearity error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("x1*x5") != std::string::npos);
  }
  SteadyStateTask not_redundant = fx::crn_task();
  not_redundant.conservation[0].replaces = "X6";  // X1..X4 alone cannot produce dX5/dt
  try {
    build_steady_system(net, not_redundant);
    FAIL("expected a redundancy error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("X5") != std::string::npos);
  }
  SteadyStateTask counts = fx::crn_task();
  counts.dropped.clear();
  CHECK_THROWS_AS(build_steady_system(net, counts), InputError);
  SteadyStateTask law = fx::crn_task();
  law.conservation[0].law[0] = 2;
  CHECK_THROWS_AS(build_steady_system(net, law), InputError);
  SteadyStateTask unknown = fx::crn_task();
  unknown.solve_for[0] = "Y";
  CHECK_THROWS_AS(build_steady_system(net, unknown), InputError);
}

TEST_CASE("one species held by its total") {
  Network net = parse_network("species: A\n");
  SteadyStateTask task{{"A"}, {}, {{{Rational(1)}, "T", "A"}}, {}};
  ParameterizationReport rep = parameterize(net, task);
  REQUIRE(rep.solution.size() == 1);
  CHECK(rat_equal(rep.solution[0], RationalExpr(P("T"))));
}
