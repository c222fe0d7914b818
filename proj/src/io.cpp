#include "forestsolve/io.hpp"

#include "forestsolve/error.hpp"

namespace forestsolve {

namespace {

Polynomial poly_from_json(const Json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return Polynomial::parse(v.get<std::string>());
    } catch (const ParseError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Polynomial(Rational(v.get<long>()));
  throw InputError(where + ": expected a polynomial string or an integer");
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<int> int_list(const Json& v, const char* key) {
  if (!v.is_array()) throw InputError(std::string("'") + key + "' must be an array of integers");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw InputError(std::string("'") + key + "' must be an array of integers");
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    int line = 1;
    int column = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("invalid JSON", line, column);
  }
}

LinearSystem system_from_json(const Json& j) {
  const Json& a = field(j, "A");
  const Json& b = field(j, "b");
  if (!a.is_array() || !b.is_array()) throw InputError("'A' and 'b' must be arrays");
  const std::size_t m = b.size();
  LinearSystem sys{PolyMatrix(m, m), std::vector<Polynomial>(m), {}};
  if (a.size() != m) throw InputError("A has " + std::to_string(a.size()) + " rows but b has " + std::to_string(m));
  for (std::size_t r = 0; r < m; ++r) {
    if (!a[r].is_array() || a[r].size() != m) throw InputError("row " + std::to_string(r + 1) + " of A has the wrong length");
    for (std::size_t c = 0; c < m; ++c) {
      sys.a(r, c) = poly_from_json(a[r][c], "A[" + std::to_string(r + 1) + "][" + std::to_string(c + 1) + "]");
    }
    sys.b[r] = poly_from_json(b[r], "b[" + std::to_string(r + 1) + "]");
  }
  if (j.contains("variables")) {
    for (const auto& v : j.at("variables")) {
      if (!v.is_string()) throw InputError("'variables' must hold strings");
      sys.variables.push_back(v.get<std::string>());
    }
  } else {
    sys.variables = default_variables(m);
  }
  sys.validate();
  return sys;
}

Json system_to_json(const LinearSystem& sys) {
  Json out;
  out["variables"] = sys.variables;
  out["A"] = matrix_to_json(sys.a);
  Json b = Json::array();
  for (const auto& p : sys.b) b.push_back(p.to_string());
  out["b"] = b;
  return out;
}

BlockInput block_system_from_json(const Json& j) {
  BlockInput in{system_from_json(j), {}};
  const Json& blocks = field(j, "blocks");
  in.blocks.sizes = int_list(field(blocks, "sizes"), "sizes");
  const Json& m0 = field(blocks, "m0");
  if (!m0.is_number_integer()) throw InputError("'m0' must be an integer");
  in.blocks.m0 = m0.get<int>();
  int total = in.blocks.m0;
  for (int s : in.blocks.sizes) {
    if (s <= 0) throw InputError("block sizes must be positive");
    total += s;
  }
  if (in.blocks.m0 < 0 || total != static_cast<int>(in.system.size())) {
    throw InputError("block sizes and m0 do not add up to the number of equations");
  }
  if (blocks.contains("j")) {
    in.blocks.j = int_list(blocks.at("j"), "j");
  } else {
    in.blocks.j = choose_j(in.system, in.blocks.sizes, in.blocks.m0);
  }
  return in;
}

Multidigraph graph_from_json(const Json& j) {
  const Json& nodes = field(j, "nodes");
  if (!nodes.is_number_integer() || nodes.get<int>() < 1) throw InputError("'nodes' must be a positive integer");
  Multidigraph g(nodes.get<int>());
  const Json& edges = field(j, "edges");
  if (!edges.is_array()) throw InputError("'edges' must be an array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Json& e = edges[k];
    std::string where = "edge " + std::to_string(k);
    const Json& src = field(e, "src");
    const Json& tgt = field(e, "tgt");
    if (!src.is_number_integer() || !tgt.is_number_integer()) throw InputError(where + ": endpoints must be integers");
    Polynomial label = poly_from_json(field(e, "label"), where);
    if (e.contains("id")) {
      if (!e.at("id").is_number_unsigned()) throw InputError(where + ": 'id' must be a nonnegative integer");
      g.add_edge_with_id(EdgeId{e.at("id").get<std::uint32_t>()}, src.get<int>(), tgt.get<int>(), label);
    } else {
      g.add_edge(src.get<int>(), tgt.get<int>(), label);
    }
  }
  return g;
}

Json graph_to_json(const Multidigraph& g) {
  Json out;
  out["nodes"] = g.node_count();
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"id", e.id.value}, {"src", e.source}, {"tgt", e.target}, {"label", e.label.to_string()}});
  }
  out["edges"] = edges;
  return out;
}

Json solution_to_json(const Solution& x) {
  Json out = Json::array();
  for (const auto& v : x) out.push_back(v.to_string());
  return out;
}

Json witness_to_json(const PGraphWitness& w) {
  Json out;
  out["edges"] = graph_to_json(w.graph)["edges"];
  Json mu = Json::array();
  for (const auto& [neg, group] : w.mu) {
    Json ids = Json::array();
    for (EdgeId e : group) ids.push_back(e.value);
    mu.push_back({{"negative", neg.value}, {"paired", ids}});
  }
  out["mu"] = mu;
  Json sums = Json::array();
  for (const auto& [neg, s] : w.group_sums) sums.push_back({{"negative", neg.value}, {"sum", s.to_string()}});
  out["group_sums"] = sums;
  return out;
}

Json matrix_to_json(const PolyMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    out.push_back(row);
  }
  return out;
}

}  // namespace forestsolve
