#include <doctest.h>

#include <sstream>

#include "commands.hpp"
#include "forestsolve/io.hpp"

using namespace forestsolve;
using cli::RunConfig;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(RunConfig config) {
  std::ostringstream out, err;
  int code = cli::run(config, out, err);
  return {code, out.str(), err.str()};
}

RunConfig with(const std::string& command, const std::string& file) {
  RunConfig c;
  c.command = command;
  if (!file.empty()) c.input = std::string(FORESTSOLVE_DATA_DIR) + "/" + file;
  return c;
}

}  // namespace

TEST_CASE("solve prints the components") {
  RunConfig c = with("solve", "tree_example.json");
  c.format = cli::Format::Text;
  Outcome o = run(c);
  CHECK(o.code == 0);
  CHECK(o.out.find("x1 = z5/(z1 + 2*z2)") != std::string::npos);
  c.format = cli::Format::Json;
  c.oracle = true;
  o = run(c);
  CHECK(o.code == 0);
  Json j = parse_json(o.out);
  CHECK(j["oracle"]["agrees"] == true);
  CHECK(j["solution"].size() == 3);
}

TEST_CASE("oracle flag leaves the result unchanged") {
  RunConfig c = with("solve", "tree_example.json");
  Json plain = parse_json(run(c).out);
  c.oracle = true;
  Json checked = parse_json(run(c).out);
  checked.erase("oracle");
  CHECK(plain == checked);
}

TEST_CASE("certify and its negative control") {
  Outcome ok = run(with("certify", "tree_example.json"));
  CHECK(ok.code == 0);
  CHECK(parse_json(ok.out)["certified"] == true);
  Outcome no = run(with("certify", "m_matrix.json"));
  CHECK(no.code == 1);
  CHECK(no.err.find("no P-graph witness") != std::string::npos);
  Json j = parse_json(no.out);
  CHECK(j["certified"] == false);
  CHECK(j["witness"].is_null());
}

TEST_CASE("dot output") {
  RunConfig c = with("certify", "tree_example.json");
  c.format = cli::Format::Dot;
  Outcome o = run(c);
  CHECK(o.code == 0);
  CHECK(o.out.find("digraph") == 0);
  CHECK(o.out.find("dashed") != std::string::npos);
  RunConfig g = with("graph-dot", "graph.json");
  g.format = cli::Format::Dot;
  CHECK(run(g).out.find("doublecircle") != std::string::npos);
}

TEST_CASE("block commands") {
  Outcome s = run(with("block-solve", "small_block.json"));
  CHECK(s.code == 0);
  CHECK(parse_json(s.out)["denominator"] == "z2*z4 + z3*z4");
  RunConfig c = with("block-certify", "five_block.json");
  c.oracle = true;
  Outcome o = run(c);
  CHECK(o.code == 0);
  Json j = parse_json(o.out);
  CHECK(j["certified"] == true);
  CHECK(j["oracle"]["agrees"] == true);
}

TEST_CASE("mtt-check") {
  RunConfig c = with("mtt-check", "");
  c.random = 40;
  Outcome a = run(c);
  CHECK(a.code == 0);
  CHECK(parse_json(a.out)["mismatches"] == 0);
  CHECK(run(c).out == a.out);
  c.nodes = 1;
  CHECK(run(c).code == 0);
}

TEST_CASE("crn-param") {
  RunConfig c = with("crn-param", "network.txt");
  c.solve_for = {"X1", "X2", "X3", "X4", "X6"};
  c.parameters = {"X5"};
  c.conserve = {"1:T1:X4"};
  c.drop = {"X5"};
  c.oracle = true;
  Outcome o = run(c);
  CHECK(o.code == 0);
  Json j = parse_json(o.out);
  CHECK(j["certified"] == true);
  CHECK(j["blocks"]["j"][0] == 4);
  c.conserve = {"[1,1,1,1,0,0]:T1:X4"};
  CHECK(run(c).out == o.out);
  c.conserve = {"3:T1:X4"};
  CHECK(run(c).code == 2);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run(with("solve", "missing.json")).code == 2);
  RunConfig c = with("solve", "tree_example.json");
  c.permute_rows = {1, 1, 2};
  CHECK(run(c).code == 2);
  c.permute_rows = {2, 3, 1};
  CHECK(run(c).code == 0);
  RunConfig b = with("block-solve", "tree_example.json");
  CHECK(run(b).code == 2);
  RunConfig budget = with("certify", "tree_example.json");
  budget.budget = 0;
  CHECK(run(budget).code == 2);
}
