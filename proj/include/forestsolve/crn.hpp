#pragma once

// Mass-action reaction networks and their steady-state linear systems.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forestsolve/blocksys.hpp"

namespace forestsolve {

struct Reaction {
  std::vector<std::pair<std::string, unsigned>> reactants;  // species, multiplicity
  std::vector<std::pair<std::string, unsigned>> products;
  std::string rate;
};

struct Network {
  std::vector<std::string> species;
  std::vector<Reaction> reactions;

  int species_index(std::string_view name) const;  // -1 when absent
};

/// One reaction per line: `R1 + 2 R2 -> P ; k3` or `A <-> B ; k1, k2`. `0`
/// denotes the empty complex, `#` starts a comment, and an optional line
/// `species: A, B, ...` fixes the species order (otherwise first appearance).
/// Throws ParseError.
Network parse_network(std::string_view text);

/// Concentration symbol of a species: "x" followed by the name, with a leading
/// 'X' dropped (X1 -> x1, A -> xA).
std::string concentration_symbol(std::string_view species);

/// Rows: species, columns: reactions.
Matrix<Rational> stoichiometric_matrix(const Network& net);

/// dx/dt, one polynomial per species.
std::vector<Polynomial> mass_action_odes(const Network& net);

/// Integer basis of the left kernel of the stoichiometric matrix.
std::vector<std::vector<Rational>> conservation_laws(const Network& net);

struct ConservationRow {
  std::vector<Rational> law;  // one coefficient per species
  std::string total;          // symbol of the conserved total
  std::string replaces;       // species whose equation it takes the place of
};

struct SteadyStateTask {
  std::vector<std::string> solve_for;     // species names
  std::vector<std::string> parameters;    // species kept symbolic (informational)
  std::vector<ConservationRow> conservation;
  std::vector<std::string> dropped;       // species whose equations are dropped
};

struct SteadySystem {
  LinearSystem system;
  BlockStructure blocks;             // proposed partition
  std::vector<std::string> row_origin;  // "d<species>/dt" or "conservation <total>"
};

/// Throws InputError when the retained equations are not linear in the unknowns
/// (naming the monomial), when a dropped or replaced equation is not a rational
/// combination of the retained ones, or when counts do not match.
SteadySystem build_steady_system(const Network& net, const SteadyStateTask& task);

struct ParameterizationReport {
  SteadySystem steady;
  bool certified = false;
  std::optional<BlockCertificate> certificate;
  Solution solution;  // filled whenever det(A) != 0
  std::vector<std::string> diagnostics;
};

ParameterizationReport parameterize(const Network& net, const SteadyStateTask& task, std::size_t budget = 4096);

}  // namespace forestsolve
