#include <doctest.h>

#include "fixtures.hpp"
#include "forestsolve/error.hpp"

using namespace forestsolve;
using fx::P;

TEST_CASE("bordered laplacian shape") {
  LinearSystem sys = fx::tree_example();
  PolyMatrix l = bordered_laplacian(sys);
  REQUIRE(l.rows() == 4);
  CHECK(l(1, 3) == P("z5"));
  CHECK(l(3, 3) == P("-z5"));
  CHECK(l(3, 0) == P("z1 + 2*z2"));
  for (const auto& s : column_sums(l)) CHECK(s.is_zero());
}

TEST_CASE("tree solution of the small example") {
  LinearSystem sys = fx::tree_example();
  Solution x = solve_by_trees(sys);
  CHECK(solutions_equal(x, fx::tree_example_solution()));
  CHECK(solutions_equal(x, cramer_oracle(sys)));
  CHECK(residual_check(sys, x));
  Multidigraph g = canonical_graph(bordered_laplacian(sys));
  CHECK(solutions_equal(solve_by_trees_serial(sys, g), x));
  CHECK(x[0].to_string() == "z5/(z1 + 2*z2)");
}

TEST_CASE("m = 1") {
  LinearSystem sys = fx::make_system({{"-z1"}}, {"z2"});
  Solution x = solve_by_trees(sys);
  REQUIRE(x.size() == 1);
  CHECK(rat_equal(x[0], fx::R("z2", "z1")));
}

TEST_CASE("singular and malformed systems") {
  CHECK_THROWS_AS(solve_by_trees(fx::make_system({{"1", "1"}, {"1", "1"}}, {"1", "0"})), SingularSystemError);
  CHECK_THROWS_AS(cramer_oracle(fx::make_system({{"z1", "z1"}, {"z2", "z2"}}, {"1", "0"})), SingularSystemError);
  LinearSystem bad = fx::tree_example();
  bad.b.pop_back();
  CHECK_THROWS_AS(bad.validate(), InputError);
  LinearSystem sys = fx::tree_example();
  Multidigraph wrong(4);
  wrong.add_edge(1, 2, P("z1"));
  CHECK_THROWS_AS(solve_by_trees(sys, wrong), InputError);
}

TEST_CASE("a split graph gives the same solution") {
  LinearSystem sys = fx::tree_example();
  Multidigraph g = canonical_graph(bordered_laplacian(sys));
  EdgeId wide{};
  for (const auto& e : g.edges()) {
    if (e.label == P("z1 + 2*z2")) wide = e.id;
  }
  auto split = split_edge(g, wide, {P("z1"), P("z2"), P("z2")});
  CHECK(solutions_equal(solve_by_trees(sys, split.graph), fx::tree_example_solution()));
}

TEST_CASE("row permutation") {
  LinearSystem sys = fx::tree_example();
  LinearSystem p = permute_rows(sys, {3, 1, 2});
  CHECK(p.a(0, 0) == sys.a(2, 0));
  CHECK(p.b[2] == sys.b[1]);
  CHECK(solutions_equal(solve_by_trees(p), fx::tree_example_solution()));
  CHECK_THROWS_AS(permute_rows(sys, {1, 1, 2}), InputError);
  CHECK_THROWS_AS(permute_rows(sys, {1, 2}), InputError);
}

TEST_CASE("trees agree with Cramer on random systems") {
  std::mt19937_64 rng(17);
  int solved = 0;
  for (int round = 0; round < 80; ++round) {
    std::size_t m = static_cast<std::size_t>(fx::pick(rng, 1, 4));
    LinearSystem sys{PolyMatrix(m, m), std::vector<Polynomial>(m), default_variables(m)};
    const char* syms[] = {"a", "b", "c"};
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        int v = fx::pick(rng, -3, 3);
        sys.a(r, c) = fx::pick(rng, 0, 4) == 0 ? Polynomial(v) * Polynomial::variable(syms[fx::pick(rng, 0, 2)]) : Polynomial(v);
      }
      sys.b[r] = Polynomial(fx::pick(rng, -3, 3));
    }
    if (determinant(sys.a).is_zero()) continue;
    ++solved;
    Solution x = solve_by_trees(sys);
    CHECK(solutions_equal(x, cramer_oracle(sys)));
    CHECK(residual_check(sys, x));
  }
  CHECK(solved > 30);
}
