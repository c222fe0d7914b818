#include "forestsolve/crn.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "forestsolve/error.hpp"

namespace forestsolve {

int Network::species_index(std::string_view name) const {
  for (std::size_t k = 0; k < species.size(); ++k) {
    if (species[k] == name) return static_cast<int>(k);
  }
  return -1;
}

std::string concentration_symbol(std::string_view species) {
  if (species.size() > 1 && species.front() == 'X') return "x" + std::string(species.substr(1));
  return "x" + std::string(species);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct LineCursor {
  std::string_view text;
  int line;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError("network parse error: " + msg, line, static_cast<int>(at) + 1);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos); }

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_space();
    return pos >= text.size();
  }
  bool accept(std::string_view token) {
    skip_space();
    if (text.substr(pos, token.size()) == token) {
      pos += token.size();
      return true;
    }
    return false;
  }
  std::string identifier() {
    skip_space();
    std::size_t start = pos;
    if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos]))) fail("expected a name");
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    return std::string(text.substr(start, pos - start));
  }
  bool peek_digit() {
    skip_space();
    return pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));
  }
  unsigned integer() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos - start > 6) fail("stoichiometric coefficient too large", start);
    return static_cast<unsigned>(std::stoul(std::string(text.substr(start, pos - start))));
  }
};

using Complex = std::vector<std::pair<std::string, unsigned>>;

Complex parse_complex(LineCursor& c, std::vector<std::string>& seen) {
  Complex out;
  std::map<std::string, unsigned> merged;
  std::vector<std::string> order;
  for (;;) {
    c.skip_space();
    std::size_t at = c.pos;
    unsigned coef = 1;
    if (c.peek_digit()) {
      coef = c.integer();
      if (coef == 0) {
        c.skip_space();
        bool alone = c.pos >= c.text.size() || c.text[c.pos] == '-' || c.text[c.pos] == '<' || c.text[c.pos] == ';';
        if (!alone) c.fail("zero coefficient", at);
        return out;  // the empty complex
      }
    }
    std::string name = c.identifier();
    if (!merged.count(name)) order.push_back(name);
    merged[name] += coef;
    if (std::find(seen.begin(), seen.end(), name) == seen.end()) seen.push_back(name);
    if (!c.accept("+")) break;
  }
  for (const auto& name : order) out.emplace_back(name, merged[name]);
  return out;
}

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

}  // namespace

Network parse_network(std::string_view text) {
  Network net;
  std::vector<std::string> declared;
  std::vector<std::string> seen;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = strip_comment(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    LineCursor c{raw, line_no};
    if (c.at_end()) continue;
    if (c.accept("species:")) {
      for (;;) {
        std::string name = c.identifier();
        if (std::find(declared.begin(), declared.end(), name) != declared.end()) c.fail("species " + name + " declared twice");
        declared.push_back(name);
        if (!c.accept(",")) break;
      }
      if (!c.at_end()) c.fail("unexpected text after species list");
      continue;
    }
    Complex lhs = parse_complex(c, seen);
    bool reversible = false;
    if (c.accept("<->")) reversible = true;
    else if (!c.accept("->")) c.fail("expected '->' or '<->'");
    Complex rhs = parse_complex(c, seen);
    if (!c.accept(";")) c.fail("expected ';' before the rate constant");
    std::string k1 = c.identifier();
    std::string k2;
    if (reversible) {
      if (!c.accept(",")) c.fail("a reversible reaction needs two rate constants");
      k2 = c.identifier();
    }
    if (!c.at_end()) c.fail("unexpected text after the rate constant");
    auto sorted = [](Complex x) {
      std::sort(x.begin(), x.end());
      return x;
    };
    if (sorted(lhs) == sorted(rhs)) c.fail("reactants and products coincide", 0);
    net.reactions.push_back({lhs, rhs, k1});
    if (reversible) net.reactions.push_back({rhs, lhs, k2});
  }
  if (declared.empty()) {
    net.species = seen;
  } else {
    for (const auto& s : seen) {
      if (std::find(declared.begin(), declared.end(), s) == declared.end()) {
        throw ParseError("network parse error: species " + s + " is not declared", line_no, 1);
      }
    }
    net.species = declared;
  }
  return net;
}

// ---------------------------------------------------------------------------

Matrix<Rational> stoichiometric_matrix(const Network& net) {
  Matrix<Rational> n(net.species.size(), net.reactions.size(), Rational(0));
  for (std::size_t r = 0; r < net.reactions.size(); ++r) {
    for (const auto& [s, k] : net.reactions[r].reactants) n(static_cast<std::size_t>(net.species_index(s)), r) -= k;
    for (const auto& [s, k] : net.reactions[r].products) n(static_cast<std::size_t>(net.species_index(s)), r) += k;
  }
  return n;
}

std::vector<Polynomial> mass_action_odes(const Network& net) {
  std::vector<Polynomial> rhs(net.species.size());
  auto n = stoichiometric_matrix(net);
  for (std::size_t r = 0; r < net.reactions.size(); ++r) {
    Monomial m = Monomial::variable(net.reactions[r].rate);
    for (const auto& [s, k] : net.reactions[r].reactants) m = m * Monomial::variable(concentration_symbol(s), k);
    for (std::size_t s = 0; s < net.species.size(); ++s) {
      if (n(s, r) != 0) rhs[s] += Polynomial::term(n(s, r), m);
    }
  }
  return rhs;
}

namespace {

// Reduced row echelon form in place, visiting columns in `order`; returns the
// pivot columns in that order.
std::vector<std::size_t> rref(Matrix<Rational>& a, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col : order) {
    if (row == a.rows()) break;
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(p, j));
    Rational inv = 1 / a(row, col);
    for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<Rational> primitive(std::vector<Rational> v) {
  mpz_class num = 0;
  mpz_class den = 1;
  for (const auto& x : v) {
    num = gcd(num, mpz_class(abs(x.get_num())));
    den = lcm(den, mpz_class(x.get_den()));
  }
  if (num == 0) return v;
  Rational scale(den, num);
  scale.canonicalize();
  auto lead = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
  if (*lead < 0) scale = -scale;
  for (auto& x : v) x *= scale;
  return v;
}

std::vector<std::vector<Rational>> kernel(const Matrix<Rational>& m, const std::vector<std::size_t>& order) {
  Matrix<Rational> a = m;
  auto pivots = rref(a, order);
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free : order) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(primitive(v));
  }
  return basis;
}

std::size_t rank_of(Matrix<Rational> a) {
  std::vector<std::size_t> order(a.cols());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  return rref(a, order).size();
}

}  // namespace

std::vector<std::vector<Rational>> conservation_laws(const Network& net) {
  auto n = stoichiometric_matrix(net);
  const std::size_t ns = n.rows();
  const std::size_t nr = n.cols();
  Matrix<Rational> t(nr, ns, Rational(0));
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nr; ++j) t(j, i) = n(i, j);
  }
  std::vector<std::size_t> order(ns);
  for (std::size_t j = 0; j < ns; ++j) order[j] = j;
  auto fallback = kernel(t, order);
  const std::size_t dim = fallback.size();
  if (dim == 0) return fallback;

  // Support-minimal nonnegative laws: fix dim-1 coordinates to zero and keep
  // the one-dimensional kernels that are nonnegative.
  std::vector<std::vector<Rational>> candidates;
  std::vector<std::size_t> zeros(dim - 1);
  for (std::size_t k = 0; k < zeros.size(); ++k) zeros[k] = k;
  std::size_t visited = 0;
  for (bool more = zeros.size() <= ns; more && visited < 100000; ++visited) {
    Matrix<Rational> z(nr + zeros.size(), ns, Rational(0));
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < ns; ++j) z(i, j) = t(i, j);
    }
    for (std::size_t k = 0; k < zeros.size(); ++k) z(nr + k, zeros[k]) = 1;
    auto ker = kernel(z, order);
    if (ker.size() == 1 &&
        std::all_of(ker[0].begin(), ker[0].end(), [](const Rational& x) { return x >= 0; }) &&
        std::find(candidates.begin(), candidates.end(), ker[0]) == candidates.end()) {
      candidates.push_back(ker[0]);
    }
    // next combination
    std::size_t k = zeros.size();
    while (k > 0 && zeros[k - 1] == ns - zeros.size() + k - 1) --k;
    if (k == 0) {
      more = false;
    } else {
      ++zeros[k - 1];
      for (std::size_t q = k; q < zeros.size(); ++q) zeros[q] = zeros[q - 1] + 1;
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) { return x > y; });
  for (const auto& v : fallback) candidates.push_back(v);

  std::vector<std::vector<Rational>> basis;
  for (const auto& v : candidates) {
    if (basis.size() == dim) break;
    Matrix<Rational> m(basis.size() + 1, ns, Rational(0));
    for (std::size_t r = 0; r < basis.size(); ++r) {
      for (std::size_t j = 0; j < ns; ++j) m(r, j) = basis[r][j];
    }
    for (std::size_t j = 0; j < ns; ++j) m(basis.size(), j) = v[j];
    if (rank_of(m) == basis.size() + 1) basis.push_back(v);
  }
  std::sort(basis.begin(), basis.end(), [](const auto& x, const auto& y) { return x > y; });
  return basis;
}

// ---------------------------------------------------------------------------

namespace {

int resolve_species(const Network& net, const std::string& name) {
  int k = net.species_index(name);
  if (k >= 0) return k;
  for (std::size_t s = 0; s < net.species.size(); ++s) {
    if (concentration_symbol(net.species[s]) == name) return static_cast<int>(s);
  }
  throw InputError("unknown species '" + name + "'");
}

// Is `target` a rational combination of `basis`?
bool in_span(const std::vector<Polynomial>& basis, const Polynomial& target) {
  std::vector<Monomial> monos;
  auto collect = [&](const Polynomial& p) {
    for (const auto& t : p.terms()) {
      if (std::find(monos.begin(), monos.end(), t.monomial) == monos.end()) monos.push_back(t.monomial);
    }
  };
  for (const auto& p : basis) collect(p);
  collect(target);
  auto to_matrix = [&](std::size_t extra) {
    Matrix<Rational> m(basis.size() + extra, monos.size(), Rational(0));
    auto fill = [&](std::size_t row, const Polynomial& p) {
      for (const auto& t : p.terms()) {
        auto col = static_cast<std::size_t>(std::find(monos.begin(), monos.end(), t.monomial) - monos.begin());
        m(row, col) = t.coefficient;
      }
    };
    for (std::size_t r = 0; r < basis.size(); ++r) fill(r, basis[r]);
    if (extra) fill(basis.size(), target);
    return m;
  };
  return rank_of(to_matrix(0)) == rank_of(to_matrix(1));
}

}  // namespace

SteadySystem build_steady_system(const Network& net, const SteadyStateTask& task) {
  const std::size_t ns = net.species.size();
  auto n = stoichiometric_matrix(net);
  auto odes = mass_action_odes(net);

  std::vector<int> unknowns;
  for (const auto& s : task.solve_for) {
    int k = resolve_species(net, s);
    if (std::find(unknowns.begin(), unknowns.end(), k) != unknowns.end()) throw InputError("species " + s + " listed twice");
    unknowns.push_back(k);
  }
  std::vector<std::string> symbols;
  for (int k : unknowns) symbols.push_back(concentration_symbol(net.species[static_cast<std::size_t>(k)]));
  for (const auto& p : task.parameters) {
    int k = resolve_species(net, p);
    if (std::find(unknowns.begin(), unknowns.end(), k) != unknowns.end()) {
      throw InputError("species " + p + " is both an unknown and a parameter");
    }
  }

  std::set<int> dropped;
  for (const auto& s : task.dropped) dropped.insert(resolve_species(net, s));
  std::map<int, const ConservationRow*> replaced;
  for (const auto& c : task.conservation) {
    if (c.law.size() != ns) throw InputError("a conservation law needs one coefficient per species");
    for (std::size_t r = 0; r < net.reactions.size(); ++r) {
      Rational dot = 0;
      for (std::size_t s = 0; s < ns; ++s) dot += c.law[s] * n(s, r);
      if (dot != 0) throw InputError("the vector given for total " + c.total + " is not a conservation law");
    }
    if (!is_valid_variable_name(c.total)) throw InputError("invalid total symbol '" + c.total + "'");
    int k = resolve_species(net, c.replaces);
    if (dropped.count(k) || !replaced.emplace(k, &c).second) {
      throw InputError("the equation of " + c.replaces + " is already dropped or replaced");
    }
  }

  std::vector<Polynomial> retained;
  for (std::size_t s = 0; s < ns; ++s) {
    if (!dropped.count(static_cast<int>(s)) && !replaced.count(static_cast<int>(s))) retained.push_back(odes[s]);
  }
  for (std::size_t s = 0; s < ns; ++s) {
    if ((dropped.count(static_cast<int>(s)) || replaced.count(static_cast<int>(s))) && !in_span(retained, odes[s])) {
      throw InputError("the equation of " + net.species[s] +
                       " is not a rational combination of the retained equations");
    }
  }

  const std::size_t m = unknowns.size();
  const std::size_t rows = ns - dropped.size();
  if (rows != m) {
    throw InputError(std::to_string(rows) + " equations remain for " + std::to_string(m) + " unknowns");
  }
  SteadySystem out{LinearSystem{PolyMatrix(m, m), std::vector<Polynomial>(m), symbols}, {}, {}};
  std::size_t row = 0;
  for (std::size_t s = 0; s < ns; ++s) {
    if (dropped.count(static_cast<int>(s))) continue;
    if (auto it = replaced.find(static_cast<int>(s)); it != replaced.end()) {
      const ConservationRow& c = *it->second;
      Polynomial b = -Polynomial::variable(c.total);
      for (std::size_t q = 0; q < ns; ++q) {
        if (c.law[q] == 0) continue;
        auto u = std::find(unknowns.begin(), unknowns.end(), static_cast<int>(q));
        if (u != unknowns.end()) {
          out.system.a(row, static_cast<std::size_t>(u - unknowns.begin())) = Polynomial(c.law[q]);
        } else {
          b += Polynomial::term(c.law[q], Monomial::variable(concentration_symbol(net.species[q])));
        }
      }
      out.system.b[row] = b;
      out.row_origin.push_back("conservation " + c.total);
    } else {
      for (const auto& t : odes[s].terms()) {
        int hit = -1;
        unsigned degree = 0;
        for (std::size_t u = 0; u < m; ++u) {
          unsigned e = t.monomial.degree_in(symbols[u]);
          if (e > 0) hit = static_cast<int>(u);
          degree += e;
        }
        if (degree > 1) {
          throw InputError("the equation of " + net.species[s] + " is not linear in the unknowns: term " +
                           Polynomial::term(t.coefficient, t.monomial).to_string());
        }
        if (hit < 0) {
          out.system.b[row] += Polynomial::term(t.coefficient, t.monomial);
        } else {
          Monomial rest = t.monomial.quotient(Monomial::variable(symbols[static_cast<std::size_t>(hit)]));
          out.system.a(row, static_cast<std::size_t>(hit)) += Polynomial::term(t.coefficient, rest);
        }
      }
      out.row_origin.push_back("d" + net.species[s] + "/dt");
    }
    ++row;
  }

  std::set<int> conservation_rows;
  for (std::size_t r = 0; r < out.row_origin.size(); ++r) {
    if (out.row_origin[r].rfind("conservation", 0) == 0) conservation_rows.insert(static_cast<int>(r) + 1);
  }
  out.blocks = BlockStructure{{}, static_cast<int>(m), {}};
  for (int m0 = static_cast<int>(m) - 1; m0 >= 0; --m0) {
    auto bs = detect_blocks(out.system, m0);
    if (!bs || bs->d() == 0) continue;
    bool ok = true;
    for (int i = 1; i <= bs->d() && ok; ++i) {
      int hits = 0;
      for (int r : bs->block(i)) hits += conservation_rows.count(r) ? 1 : 0;
      ok = hits == 1 && conservation_rows.count(bs->j[static_cast<std::size_t>(i - 1)]);
    }
    if (ok) {
      out.blocks = *bs;
      break;
    }
  }
  return out;
}

ParameterizationReport parameterize(const Network& net, const SteadyStateTask& task, std::size_t budget) {
  ParameterizationReport report{build_steady_system(net, task), false, std::nullopt, {}, {}};
  const LinearSystem& sys = report.steady.system;
  BlockCertifyResult cert = certify_block_nonneg(sys, report.steady.blocks, budget);
  if (cert.certificate) {
    report.certified = true;
    report.solution = cert.certificate->solution.solution;
    if (!residual_check(sys, report.solution)) throw InvariantError("parameterization does not solve the steady-state system");
    for (int z : cert.certificate->zeros) {
      report.diagnostics.push_back(sys.variables[static_cast<std::size_t>(z - 1)] + " vanishes identically");
    }
    report.certificate = std::move(cert.certificate);
    return report;
  }
  report.diagnostics = cert.hypothesis_failures;
  report.diagnostics.push_back(cert.reason);
  try {
    report.solution = cramer_oracle(sys);
  } catch (const SingularSystemError&) {
    report.diagnostics.push_back("det(A) = 0");
  }
  return report;
}

}  // namespace forestsolve
