#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace forestsolve::cli {

enum class Format { Json, Text, Dot };

struct RunConfig {
  std::string command;
  std::string input;   // empty or "-" reads stdin
  std::string output;  // empty writes stdout
  Format format = Format::Json;
  bool oracle = false;
  std::uint64_t seed = 7;
  std::size_t budget = 4096;
  std::vector<int> permute_rows;

  // mtt-check
  int random = 200;
  int nodes = 5;
  int max_edges = 10;

  // crn-param
  std::vector<std::string> solve_for;
  std::vector<std::string> parameters;
  std::vector<std::string> conserve;  // "<law>:<total>:<species>"
  std::vector<std::string> drop;
};

enum Exit : int { Ok = 0, NotCertified = 1, BadInput = 2, Internal = 3 };

/// Runs one command. The report goes to `out`, messages to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace forestsolve::cli
