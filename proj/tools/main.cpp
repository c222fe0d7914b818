#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "commands.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("forestsolve");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* level = std::getenv("FORESTSOLVE_LOG");
  spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
}

}  // namespace

int main(int argc, char** argv) {
  using forestsolve::cli::Format;
  setup_logging();

  CLI::App app{"Symbolic linear systems solved and certified through spanning forests"};
  app.require_subcommand(1);

  forestsolve::cli::RunConfig config;
  std::string format = "json";
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"text", Format::Text}, {"dot", Format::Dot}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", config.input, "Input file (default: stdin)");
    sub->add_option("-o,--output", config.output, "Output file (default: stdout)");
    sub->add_option("-f,--format", format, "Output format: json, text or dot")->check(CLI::IsMember({"json", "text", "dot"}));
    sub->add_flag("--oracle", config.oracle, "Cross-check against Cramer's rule");
    sub->add_option("--seed", config.seed, "Seed for randomized checks")->capture_default_str();
    sub->add_option("--budget", config.budget, "Search budget")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto with_permute = [&](CLI::App* sub) {
    sub->add_option("--permute-rows", config.permute_rows, "New equation order, 1-based")->delimiter(',');
  };

  auto* solve = app.add_subcommand("solve", "Solve A x + b = 0 through tree sums");
  auto* certify = app.add_subcommand("certify", "Certify a nonnegative solution with a P-graph");
  auto* block_solve = app.add_subcommand("block-solve", "Solve a block system through forest products");
  auto* block_certify = app.add_subcommand("block-certify", "Certify a block system with an A-compatible P-graph");
  auto* mtt = app.add_subcommand("mtt-check", "Randomized all-minors matrix-tree check");
  auto* crn = app.add_subcommand("crn-param", "Steady-state parameterization of a reaction network");
  auto* dot = app.add_subcommand("graph-dot", "Graphviz rendering of a graph or of a system's canonical graph");
  for (auto* sub : {solve, certify, block_solve, block_certify, mtt, crn, dot}) common(sub);
  with_permute(solve);
  with_permute(certify);

  mtt->add_option("--random", config.random, "Number of random graphs")->check(CLI::NonNegativeNumber)->capture_default_str();
  mtt->add_option("--nodes", config.nodes, "Largest node count")->check(CLI::PositiveNumber)->capture_default_str();
  mtt->add_option("--edges", config.max_edges, "Largest edge count")->check(CLI::NonNegativeNumber)->capture_default_str();

  crn->add_option("--solve-for", config.solve_for, "Species solved for, in variable order")->delimiter(',')->required();
  crn->add_option("--parameters", config.parameters, "Species kept symbolic")->delimiter(',');
  crn->add_option("--conserve", config.conserve, "<law index or [c1,...]>:<total>:<species>");
  crn->add_option("--drop", config.drop, "Species whose equation is dropped")->delimiter(',');

  CLI11_PARSE(app, argc, argv);
  config.command = app.get_subcommands().front()->get_name();
  config.format = formats.at(format);

  if (config.output.empty()) return forestsolve::cli::run(config, std::cout, std::cerr);
  std::ostringstream buffer;
  int code = forestsolve::cli::run(config, buffer, std::cerr);
  std::ofstream file(config.output, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot write " << config.output << "\n";
    return forestsolve::cli::BadInput;
  }
  file << buffer.str();
  return code;
}
