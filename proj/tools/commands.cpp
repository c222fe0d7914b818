#include "commands.hpp"

#include <spdlog/spdlog.h>

#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "forestsolve/crn.hpp"
#include "forestsolve/error.hpp"
#include "forestsolve/io.hpp"

namespace forestsolve::cli {

namespace {

std::string read_input(const RunConfig& config) {
  if (config.input.empty() || config.input == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(config.input, std::ios::binary);
  if (!file) throw InputError("cannot read " + config.input);
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

void print_solution(std::ostream& out, const std::vector<std::string>& names, const Solution& x) {
  for (std::size_t i = 0; i < x.size(); ++i) out << names[i] << " = " << x[i].to_string() << "\n";
}

std::string no_witness(const std::string& reason) { return "no P-graph witness: " + reason; }

Json set_to_json(const std::set<int>& s) { return Json(std::vector<int>(s.begin(), s.end())); }

// Adds the oracle verdict; a disagreement is an internal failure.
void oracle_check(const LinearSystem& sys, const Solution& x, Json& report) {
  Solution ref = cramer_oracle(sys);
  bool agrees = solutions_equal(x, ref) && residual_check(sys, x);
  report["oracle"] = {{"agrees", agrees}};
  if (!agrees) throw InvariantError("solution disagrees with Cramer's rule");
}

LinearSystem load_system(const RunConfig& config) {
  LinearSystem sys = system_from_json(parse_json(read_input(config)));
  if (!config.permute_rows.empty()) sys = permute_rows(sys, config.permute_rows);
  return sys;
}

int cmd_solve(const RunConfig& config, std::ostream& out) {
  LinearSystem sys = load_system(config);
  Multidigraph g = canonical_graph(bordered_laplacian(sys));
  if (config.format == Format::Dot) {
    out << to_dot(g);
    return Ok;
  }
  Solution x = solve_by_trees(sys, g);
  Json report;
  report["variables"] = sys.variables;
  report["solution"] = solution_to_json(x);
  if (config.oracle) oracle_check(sys, x, report);
  if (config.format == Format::Text) {
    print_solution(out, sys.variables, x);
  } else {
    emit(out, report);
  }
  return Ok;
}

int cmd_certify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  LinearSystem sys = load_system(config);
  CertifyResult result = certify_nonneg(sys);
  if (!result.certificate) err << no_witness(result.reason) << "\n";
  if (config.format == Format::Dot) {
    if (result.certificate) out << to_dot(result.certificate->witness.graph, {"P", true});
    return result.certificate ? Ok : NotCertified;
  }
  Json report;
  report["certified"] = result.certificate.has_value();
  if (result.certificate) {
    report["witness"] = witness_to_json(result.certificate->witness);
    report["solution"] = solution_to_json(result.certificate->solution);
    if (config.oracle) oracle_check(sys, result.certificate->solution, report);
  } else {
    report["witness"] = nullptr;
    report["solution"] = nullptr;
    report["reason"] = no_witness(result.reason);
  }
  if (config.format == Format::Text) {
    if (result.certificate) {
      out << "certified nonnegative\n";
      print_solution(out, sys.variables, result.certificate->solution);
    } else {
      out << no_witness(result.reason) << "\n";
    }
  } else {
    emit(out, report);
  }
  return result.certificate ? Ok : NotCertified;
}

BlockInput load_block(const RunConfig& config) {
  BlockInput in = block_system_from_json(parse_json(read_input(config)));
  auto problems = validate_block_form(in.system, in.blocks);
  if (!problems.empty()) {
    std::string msg = "not a block system:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw InputError(msg);
  }
  return in;
}

int cmd_block_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  BlockInput in = load_block(config);
  auto ac = build_acompatible(in.system, in.blocks);
  if (!ac) {
    err << "no A-compatible graph: the default filling of the distinguished rows links two blocks\n";
    return NotCertified;
  }
  if (config.format == Format::Dot) {
    out << to_dot(ac->graph);
    return Ok;
  }
  BlockSolution s = solve_block(in.system, in.blocks, ac->graph);
  Json report;
  report["variables"] = in.system.variables;
  report["solution"] = solution_to_json(s.solution);
  report["denominator"] = s.denominator.to_string();
  report["laplacian"] = matrix_to_json(ac->laplacian);
  report["zero_components"] = set_to_json(zero_components(ac->graph, in.blocks));
  if (config.oracle) oracle_check(in.system, s.solution, report);
  if (config.format == Format::Text) {
    print_solution(out, in.system.variables, s.solution);
  } else {
    emit(out, report);
  }
  return Ok;
}

int cmd_block_certify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  BlockInput in = load_block(config);
  BlockCertifyResult result = certify_block_nonneg(in.system, in.blocks, config.budget);
  const auto& cert = result.certificate;
  if (!cert) err << no_witness(result.reason) << "\n";
  if (config.format == Format::Dot) {
    if (cert) out << to_dot(cert->witness.graph, {"P", true});
    return cert ? Ok : NotCertified;
  }
  Json report;
  report["certified"] = cert.has_value();
  if (cert) {
    report["witness"] = witness_to_json(cert->witness);
    report["laplacian"] = matrix_to_json(cert->laplacian);
    report["solution"] = solution_to_json(cert->solution.solution);
    report["zero_components"] = set_to_json(cert->zeros);
    if (config.oracle) oracle_check(in.system, cert->solution.solution, report);
  } else {
    report["witness"] = nullptr;
    report["solution"] = nullptr;
    report["hypothesis_failures"] = result.hypothesis_failures;
    report["reason"] = no_witness(result.reason);
  }
  if (config.format == Format::Text) {
    if (cert) {
      out << "certified nonnegative\n";
      print_solution(out, in.system.variables, cert->solution.solution);
      for (int z : cert->zeros) out << in.system.variables[static_cast<std::size_t>(z - 1)] << " vanishes\n";
    } else {
      for (const auto& f : result.hypothesis_failures) out << f << "\n";
      out << no_witness(result.reason) << "\n";
    }
  } else {
    emit(out, report);
  }
  return cert ? Ok : NotCertified;
}

void subsets(int n, int k, int first, std::vector<int>& cur, std::vector<std::set<int>>& acc) {
  if (static_cast<int>(cur.size()) == k) {
    acc.emplace_back(cur.begin(), cur.end());
    return;
  }
  for (int v = first; v <= n; ++v) {
    cur.push_back(v);
    subsets(n, k, v + 1, cur, acc);
    cur.pop_back();
  }
}

int cmd_mtt_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::mt19937_64 rng(config.seed);
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  std::size_t checks = 0;
  std::size_t mismatches = 0;
  Json counterexample = nullptr;
  for (int round = 0; round < config.random; ++round) {
    int n = pick(1, config.nodes);
    Multidigraph g(n);
    int edges = n > 1 ? pick(0, config.max_edges) : 0;
    for (int e = 0; e < edges; ++e) {
      int s = pick(1, n);
      int t = pick(1, n - 1);
      if (t >= s) ++t;
      int label = pick(-3, 2);
      if (label >= 0) ++label;
      g.add_edge(s, t, Polynomial(label));
    }
    PolyMatrix lap = laplacian_of(g);
    for (int k = 0; k <= std::min(3, n); ++k) {
      std::vector<std::set<int>> sets;
      std::vector<int> cur;
      subsets(n, k, 1, cur, sets);
      for (const auto& b : sets) {
        auto rooted = enumerate_rooted_forests(g, b);
        for (const auto& f : sets) {
          MinorCheck c = all_minors_check(g, lap, rooted, f, b);
          ++checks;
          if (c.holds) continue;
          ++mismatches;
          if (counterexample.is_null()) {
            counterexample = {{"graph", graph_to_json(g)},
                              {"F", set_to_json(f)},
                              {"B", set_to_json(b)},
                              {"minor", c.minor.to_string()},
                              {"signed_sum", c.signed_sum.to_string()}};
          }
        }
      }
    }
  }
  Json report;
  report["seed"] = config.seed;
  report["graphs"] = config.random;
  report["checks"] = checks;
  report["mismatches"] = mismatches;
  report["counterexample"] = counterexample;
  if (config.format == Format::Text) {
    out << checks << " checks on " << config.random << " graphs, " << mismatches << " mismatches\n";
  } else {
    emit(out, report);
  }
  if (mismatches) {
    err << "all-minors identity failed on " << mismatches << " minors\n";
    return Internal;
  }
  return Ok;
}

std::vector<Rational> parse_law(const std::string& text, const std::vector<std::vector<Rational>>& laws) {
  if (!text.empty() && text.front() == '[') {
    Json v = parse_json(text);
    std::vector<Rational> law;
    for (const auto& c : v) {
      if (!c.is_number_integer()) throw InputError("conservation vector entries must be integers");
      law.emplace_back(c.get<long>());
    }
    return law;
  }
  std::size_t k = 0;
  try {
    k = std::stoul(text);
  } catch (const std::exception&) {
    throw InputError("bad conservation law reference '" + text + "'");
  }
  if (k < 1 || k > laws.size()) {
    throw InputError("conservation law " + text + " does not exist (" + std::to_string(laws.size()) + " found)");
  }
  return laws[k - 1];
}

int cmd_crn(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Network net = parse_network(read_input(config));
  auto laws = conservation_laws(net);
  SteadyStateTask task{config.solve_for, config.parameters, {}, config.drop};
  for (const auto& item : config.conserve) {
    auto second = item.rfind(':');
    auto first = second == std::string::npos ? std::string::npos : item.rfind(':', second - 1);
    if (first == std::string::npos || second == 0) throw InputError("--conserve expects <law>:<total>:<species>, got '" + item + "'");
    task.conservation.push_back(
        {parse_law(item.substr(0, first), laws), item.substr(first + 1, second - first - 1), item.substr(second + 1)});
  }
  ParameterizationReport rep = parameterize(net, task, config.budget);
  const LinearSystem& sys = rep.steady.system;
  if (!rep.certified) {
    for (const auto& d : rep.diagnostics) err << d << "\n";
  }
  if (config.format == Format::Dot) {
    if (rep.certificate) out << to_dot(rep.certificate->witness.graph, {"P", true});
    return rep.certified ? Ok : NotCertified;
  }
  Json report;
  report["species"] = net.species;
  Json jl = Json::array();
  for (const auto& l : laws) {
    Json row = Json::array();
    for (const auto& c : l) row.push_back(c.get_str());
    jl.push_back(row);
  }
  report["conservation_laws"] = jl;
  report["system"] = system_to_json(sys);
  report["row_origin"] = rep.steady.row_origin;
  report["blocks"] = {{"sizes", rep.steady.blocks.sizes}, {"m0", rep.steady.blocks.m0}, {"j", rep.steady.blocks.j}};
  report["certified"] = rep.certified;
  report["solution"] = rep.solution.empty() ? Json(nullptr) : solution_to_json(rep.solution);
  if (rep.certificate) {
    report["denominator"] = rep.certificate->solution.denominator.to_string();
    report["laplacian"] = matrix_to_json(rep.certificate->laplacian);
    report["witness"] = witness_to_json(rep.certificate->witness);
    report["zero_components"] = set_to_json(rep.certificate->zeros);
  } else {
    report["witness"] = nullptr;
  }
  report["diagnostics"] = rep.diagnostics;
  if (config.oracle && !rep.solution.empty()) oracle_check(sys, rep.solution, report);
  if (config.format == Format::Text) {
    out << (rep.certified ? "certified nonnegative\n" : "not certified\n");
    if (!rep.solution.empty()) print_solution(out, sys.variables, rep.solution);
  } else {
    emit(out, report);
  }
  return rep.certified ? Ok : NotCertified;
}

int cmd_graph_dot(const RunConfig& config, std::ostream& out) {
  Json j = parse_json(read_input(config));
  Multidigraph g = j.contains("nodes") ? graph_from_json(j) : canonical_graph(bordered_laplacian(system_from_json(j)));
  if (config.format == Format::Json) {
    emit(out, graph_to_json(g));
  } else {
    out << to_dot(g);
  }
  return Ok;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.budget == 0) throw InputError("--budget must be positive");
    spdlog::debug("running {}", config.command);
    if (config.command == "solve") return cmd_solve(config, out);
    if (config.command == "certify") return cmd_certify(config, out, err);
    if (config.command == "block-solve") return cmd_block_solve(config, out, err);
    if (config.command == "block-certify") return cmd_block_certify(config, out, err);
    if (config.command == "mtt-check") return cmd_mtt_check(config, out, err);
    if (config.command == "crn-param") return cmd_crn(config, out, err);
    if (config.command == "graph-dot") return cmd_graph_dot(config, out);
    throw InputError("unknown command '" + config.command + "'");
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return BadInput;
  } catch (const SingularSystemError& e) {
    err << "error: " << e.what() << "\n";
    return BadInput;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return Internal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return Internal;
  }
}

}  // namespace forestsolve::cli
