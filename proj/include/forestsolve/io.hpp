#pragma once

// JSON formats for systems, graphs and reports.

#include <json.hpp>

#include <optional>
#include <string>

#include "forestsolve/blocksys.hpp"
#include "forestsolve/crn.hpp"

namespace forestsolve {

using Json = nlohmann::ordered_json;

/// `{variables: [...], A: [[...]], b: [...]}`; entries are polynomial strings
/// (numbers are accepted too). `variables` defaults to x1..xm.
LinearSystem system_from_json(const Json& j);
Json system_to_json(const LinearSystem& sys);

/// The system plus `blocks: {sizes, m0, j}`; `j` is optional.
struct BlockInput {
  LinearSystem system;
  BlockStructure blocks;
};
BlockInput block_system_from_json(const Json& j);

/// `{nodes: n, edges: [{src, tgt, label}]}`; ids follow the order of `edges`
/// unless an edge carries an explicit `id`.
Multidigraph graph_from_json(const Json& j);
Json graph_to_json(const Multidigraph& g);

Json solution_to_json(const Solution& x);
Json witness_to_json(const PGraphWitness& w);
Json matrix_to_json(const PolyMatrix& m);

/// Throws ParseError with the position of the syntax error.
Json parse_json(const std::string& text);

}  // namespace forestsolve
