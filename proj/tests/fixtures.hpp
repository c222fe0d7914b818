#pragma once

// Worked systems shared by the unit and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "forestsolve/crn.hpp"

namespace fx {

using namespace forestsolve;

inline Polynomial P(const std::string& s) { return Polynomial::parse(s); }
inline RationalExpr R(const std::string& num, const std::string& den) { return RationalExpr(P(num), P(den)); }

inline LinearSystem make_system(const std::vector<std::vector<std::string>>& a, const std::vector<std::string>& b) {
  const std::size_t m = b.size();
  LinearSystem sys{PolyMatrix(m, m), {}, default_variables(m)};
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) sys.a(r, c) = P(a[r][c]);
    sys.b.push_back(P(b[r]));
  }
  return sys;
}

// Three unknowns, one source term.
inline LinearSystem tree_example() {
  return make_system({{"-z2", "0", "z4"}, {"-z1", "-z3", "0"}, {"-z2", "z3", "-z4"}}, {"0", "z5", "0"});
}

inline Solution tree_example_solution() {
  return {R("z5", "z1 + 2*z2"), R("2*z2*z5", "(z1 + 2*z2)*z3"), R("z2*z5", "(z1 + 2*z2)*z4")};
}

// Nonnegative solution, but the diagonal rules out every P-graph.
inline LinearSystem m_matrix() { return make_system({{"-4", "2"}, {"1", "-1"}}, {"1", "1"}); }

struct BlockExample {
  LinearSystem system;
  BlockStructure blocks;
};

inline BlockExample small_block() {
  return {make_system({{"-z2", "z3", "0"}, {"1", "1", "0"}, {"0", "z3", "-z4"}}, {"0", "-z1", "z5"}), {{2}, 1, {2}}};
}

inline BlockExample five_block() {
  return {make_system({{"-z1", "z2", "0", "0", "0"},
                       {"1", "1", "0", "0", "0"},
                       {"0", "z2", "-z3 - z4", "z5", "0"},
                       {"0", "0", "z3", "-z5", "0"},
                       {"0", "0", "z3", "z5", "-z6"}},
                      {"0", "-z7", "z8", "0", "z9"}),
          {{2}, 3, {2}}};
}

inline Solution five_block_solution() {
  return {R("z7*z2", "z2 + z1"),
          R("z1*z7", "z2 + z1"),
          R("z1*z2*z7 + (z1 + z2)*z8", "z4*(z1 + z2)"),
          R("z3*(z1*z2*z7 + (z1 + z2)*z8)", "z4*(z1 + z2)*z5"),
          R("2*z1*z2*z3*z7 + (z1 + z2)*(2*z3*z8 + z4*z9)", "z6*z4*(z1 + z2)")};
}

// x2 is forced to zero by its own row; the explicit distinguished row gives a
// negative edge out of node 2 that reaches no sink-free cycle.
inline BlockExample zero_block() {
  return {make_system({{"1", "1", "0"}, {"0", "-z2", "0"}, {"u", "z1 + z2", "-v"}}, {"-T", "0", "w"}), {{2}, 1, {1}}};
}

inline std::vector<std::vector<Polynomial>> zero_block_rows() { return {{P("-u"), P("-z1"), P("0"), P("0")}}; }

inline const char* crn_text() {
  return "# two substrates, one enzyme\n"
         "X1 + X5 <-> X3 ; k1, k2\n"
         "X3 -> X1 + X6 ; k3\n"
         "X2 + X5 <-> X4 ; k4, k5\n"
         "X4 -> X2 + X6 ; k6\n"
         "X6 -> X5 ; k7\n"
         "X1 <-> X2 ; k8, k9\n"
         "X3 <-> X4 ; k10, k11\n";
}

inline SteadyStateTask crn_task() {
  return {{"X1", "X2", "X3", "X4", "X6"},
          {"X5"},
          {{{Rational(1), Rational(1), Rational(1), Rational(1), Rational(0), Rational(0)}, "T1", "X4"}},
          {"X5"}};
}

inline Polynomial crn_q() {
  return P("k1*k4*(k10 + k11)*x5^2"
           " + ((k2 + k3)*k4*(k8 + k11) + (k5 + k6)*k1*(k9 + k10) + (k10 + k11)*(k1*k9 + k4*k8))*x5"
           " + (k8 + k9)*((k2 + k3)*(k5 + k6 + k11) + k10*(k5 + k6))");
}

inline Solution crn_solution() {
  Polynomial q = crn_q();
  auto over_q = [&](const std::string& num) { return RationalExpr(P(num), q); };
  return {
      over_q("T1*((k2 + k3)*k4*k11*x5 + k9*((k2 + k3)*(k5 + k6) + (k2 + k3)*k11 + (k5 + k6)*k10))"),
      over_q("T1*((k5 + k6)*k1*k10*x5 + k8*((k2 + k3)*(k5 + k6) + (k2 + k3)*k11 + (k5 + k6)*k10))"),
      over_q("T1*x5*(k1*k4*k11*x5 + k1*k9*(k5 + k6 + k11) + k4*k8*k11)"),
      over_q("T1*x5*(k1*k4*k10*x5 + k4*k8*(k2 + k3 + k10) + k1*k9*k10)"),
      RationalExpr(P("T1*x5*(k1*k4*(k3*k11 + k6*k10)*x5 + k1*k3*k9*(k5 + k11) + k4*k8*(k2*k6 + k3*k11)"
                     " + k6*(k3 + k10)*(k1*k9 + k4*k8))"),
                   P("k7") * q),
  };
}

// Random helpers with results independent of the standard library's
// distribution implementations.
inline int pick(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Assignment random_point(std::mt19937_64& rng, const std::vector<std::string>& vars) {
  Assignment a;
  for (const auto& v : vars) {
    Rational x(pick(rng, 1, 40), pick(rng, 1, 12));
    x.canonicalize();
    a[v] = x;
  }
  return a;
}

}  // namespace fx
