#include "forestsolve/blocksys.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "forestsolve/error.hpp"
#include "forestsolve/forests.hpp"

namespace forestsolve {

int BlockStructure::m() const {
  int total = m0;
  for (int s : sizes) total += s;
  return total;
}

std::vector<int> BlockStructure::block(int i) const {
  std::vector<int> nodes;
  if (i == 0) {
    for (int v = m() - m0 + 1; v <= m() + 1; ++v) nodes.push_back(v);
    return nodes;
  }
  int start = 1;
  for (int k = 1; k < i; ++k) start += sizes[static_cast<std::size_t>(k - 1)];
  for (int v = start; v < start + sizes[static_cast<std::size_t>(i - 1)]; ++v) nodes.push_back(v);
  return nodes;
}

int BlockStructure::block_of(int node) const {
  int end = 0;
  for (int i = 1; i <= d(); ++i) {
    end += sizes[static_cast<std::size_t>(i - 1)];
    if (node <= end) return i;
  }
  return 0;
}

std::set<int> BlockStructure::f() const {
  std::set<int> out(j.begin(), j.end());
  out.insert(m() + 1);
  return out;
}

namespace {

std::string entry_name(const char* what, std::size_t i, std::size_t j) {
  return std::string(what) + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

}  // namespace

std::vector<std::string> validate_block_form(const LinearSystem& sys, const BlockStructure& bs) {
  std::vector<std::string> out;
  const int m = static_cast<int>(sys.size());
  if (bs.m0 < 0) out.push_back("m0 is negative");
  for (int s : bs.sizes) {
    if (s <= 0) out.push_back("block sizes must be positive");
  }
  if (bs.m() != m) {
    out.push_back("block sizes and m0 add up to " + std::to_string(bs.m()) + ", not m = " + std::to_string(m));
  }
  if (static_cast<int>(bs.j.size()) != bs.d()) {
    out.push_back("expected " + std::to_string(bs.d()) + " distinguished rows, got " + std::to_string(bs.j.size()));
  }
  if (!out.empty()) return out;
  for (int i = 1; i <= bs.d(); ++i) {
    auto nodes = bs.block(i);
    int ji = bs.j[static_cast<std::size_t>(i - 1)];
    if (bs.block_of(ji) != i || ji > m) {
      out.push_back("j_" + std::to_string(i) + " = " + std::to_string(ji) + " is not in block " + std::to_string(i));
    }
    for (int r : nodes) {
      for (int c = 1; c <= m; ++c) {
        if (bs.block_of(c) != i && !sys.a(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1)).is_zero()) {
          out.push_back(entry_name("A", static_cast<std::size_t>(r), static_cast<std::size_t>(c)) +
                        " lies outside block " + std::to_string(i));
        }
      }
      if (r != ji && !sys.b[static_cast<std::size_t>(r - 1)].is_zero()) {
        out.push_back("b[" + std::to_string(r) + "] is nonzero but row " + std::to_string(r) +
                      " is not the distinguished row of block " + std::to_string(i));
      }
    }
  }
  return out;
}

std::vector<int> choose_j(const LinearSystem& sys, const std::vector<int>& sizes, int m0) {
  BlockStructure bs{sizes, m0, {}};
  std::vector<int> j;
  for (int i = 1; i <= bs.d(); ++i) {
    auto nodes = bs.block(i);
    std::vector<int> nonzero;
    for (int r : nodes) {
      if (r <= static_cast<int>(sys.size()) && !sys.b[static_cast<std::size_t>(r - 1)].is_zero()) nonzero.push_back(r);
    }
    if (nonzero.size() > 1) {
      throw InputError("block " + std::to_string(i) + " has " + std::to_string(nonzero.size()) +
                       " nonzero entries of b; at most one is allowed");
    }
    j.push_back(nonzero.empty() ? nodes.front() : nonzero.front());
  }
  return j;
}

std::optional<BlockStructure> detect_blocks(const LinearSystem& sys, int m0) {
  const int m = static_cast<int>(sys.size());
  if (m0 < 0 || m0 > m) return std::nullopt;
  const int n1 = m - m0;
  // reach[r] = furthest row that must share a block with r.
  std::vector<int> lo(static_cast<std::size_t>(n1) + 2);
  std::vector<int> hi(static_cast<std::size_t>(n1) + 2);
  for (int r = 1; r <= n1; ++r) {
    lo[static_cast<std::size_t>(r)] = r;
    hi[static_cast<std::size_t>(r)] = r;
    for (int c = 1; c <= m; ++c) {
      if (sys.a(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1)).is_zero()) continue;
      if (c > n1) return std::nullopt;
      lo[static_cast<std::size_t>(r)] = std::min(lo[static_cast<std::size_t>(r)], c);
      hi[static_cast<std::size_t>(r)] = std::max(hi[static_cast<std::size_t>(r)], c);
    }
  }
  // A cut after row c is allowed when no row's span crosses it.
  std::vector<bool> cut(static_cast<std::size_t>(n1) + 1, true);
  for (int r = 1; r <= n1; ++r) {
    for (int c = lo[static_cast<std::size_t>(r)]; c < hi[static_cast<std::size_t>(r)]; ++c) cut[static_cast<std::size_t>(c)] = false;
  }
  BlockStructure bs;
  bs.m0 = m0;
  int start = 1;
  for (int c = 1; c <= n1; ++c) {
    if (cut[static_cast<std::size_t>(c)]) {
      bs.sizes.push_back(c - start + 1);
      start = c + 1;
    }
  }
  try {
    bs.j = choose_j(sys, bs.sizes, m0);
  } catch (const InputError&) {
    return std::nullopt;
  }
  if (!validate_block_form(sys, bs).empty()) return std::nullopt;
  return bs;
}

namespace {

void require_block_form(const LinearSystem& sys, const BlockStructure& bs) {
  sys.validate();
  auto v = validate_block_form(sys, bs);
  if (!v.empty()) throw InputError("not in block form: " + v.front());
}

PolyMatrix close_columns(PolyMatrix l) {
  const std::size_t n = l.rows();
  for (std::size_t c = 0; c < n; ++c) {
    Polynomial s;
    for (std::size_t r = 0; r + 1 < n; ++r) s += l(r, c);
    l(n - 1, c) = -s;
  }
  return l;
}

}  // namespace

PolyMatrix acompatible_with_rows(const LinearSystem& sys, const BlockStructure& bs,
                                 const std::vector<std::vector<Polynomial>>& rows) {
  require_block_form(sys, bs);
  const std::size_t m = sys.size();
  if (rows.size() != static_cast<std::size_t>(bs.d())) throw InputError("one row per block is required");
  PolyMatrix l(m + 1, m + 1);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) l(r, c) = sys.a(r, c);
    l(r, m) = sys.b[r];
  }
  for (int k = 1; k <= bs.d(); ++k) {
    const auto& row = rows[static_cast<std::size_t>(k - 1)];
    if (row.size() != m + 1) throw InputError("a distinguished row needs m+1 entries");
    auto jk = static_cast<std::size_t>(bs.j[static_cast<std::size_t>(k - 1)] - 1);
    for (std::size_t c = 0; c <= m; ++c) l(jk, c) = row[c];
  }
  return close_columns(std::move(l));
}

std::optional<ACompatible> build_acompatible(const LinearSystem& sys, const BlockStructure& bs) {
  require_block_form(sys, bs);
  const std::size_t m = sys.size();
  std::vector<std::vector<Polynomial>> rows;
  for (int k = 1; k <= bs.d(); ++k) {
    int jk = bs.j[static_cast<std::size_t>(k - 1)];
    std::vector<Polynomial> row(m + 1);
    for (int i : bs.block(k)) {
      Polynomial s;
      for (std::size_t r = 0; r < m; ++r) {
        if (static_cast<int>(r) + 1 != jk) s += sys.a(r, static_cast<std::size_t>(i - 1));
      }
      row[static_cast<std::size_t>(i - 1)] = (i == jk) ? -s.positive_part() : -s.negative_part();
    }
    rows.push_back(std::move(row));
  }
  ACompatible out{acompatible_with_rows(sys, bs, rows), Multidigraph(static_cast<int>(m) + 1)};
  out.graph = canonical_graph(out.laplacian);
  if (!validate_acompatible(out.graph, bs, sys).empty()) return std::nullopt;
  return out;
}

std::vector<std::string> validate_acompatible(const Multidigraph& g, const BlockStructure& bs,
                                              const LinearSystem& sys) {
  std::vector<std::string> out;
  const int m = static_cast<int>(sys.size());
  if (g.node_count() != m + 1) {
    out.push_back("graph has " + std::to_string(g.node_count()) + " nodes, expected " + std::to_string(m + 1));
    return out;
  }
  for (const Edge& e : g.edges()) {
    int from = bs.block_of(e.source);
    int to = bs.block_of(e.target);
    if (to >= 1 && from != to) {
      out.push_back("(i) edge " + std::to_string(e.source) + "->" + std::to_string(e.target) + " enters block " +
                    std::to_string(to) + " from block " + std::to_string(from));
    }
  }
  PolyMatrix l = laplacian_of(g);
  std::set<int> f = bs.f();
  for (int r = 1; r <= m; ++r) {
    if (f.count(r)) continue;
    for (int c = 1; c <= m + 1; ++c) {
      const Polynomial& want = c <= m ? sys.a(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1))
                                      : sys.b[static_cast<std::size_t>(r - 1)];
      if (l(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1)) != want) {
        out.push_back("(ii) " + entry_name("L", static_cast<std::size_t>(r), static_cast<std::size_t>(c)) +
                      " differs from the system");
      }
    }
  }
  return out;
}

namespace {

// Root sets of the formula, each with its coefficient, per numerator and for the
// denominator.
struct Plan {
  std::vector<std::set<int>> root_sets;                       // distinct, in first-use order
  std::vector<std::pair<std::size_t, Polynomial>> denominator;  // (root set, coefficient)
  std::vector<std::vector<std::pair<std::size_t, Polynomial>>> numerators;
};

Plan make_plan(const LinearSystem& sys, const BlockStructure& bs) {
  const int m = static_cast<int>(sys.size());
  const int d = bs.d();
  Plan plan;
  std::map<std::set<int>, std::size_t> index;
  auto slot = [&](const std::set<int>& b) {
    auto [it, fresh] = index.emplace(b, plan.root_sets.size());
    if (fresh) plan.root_sets.push_back(b);
    return it->second;
  };
  auto a = [&](int r, int c) -> const Polynomial& {
    return sys.a(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1));
  };
  // Blocks 1..d+1 with N_{d+1} = {m+1}; `skip` = k omits N_k (0 for none).
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i <= d; ++i) blocks.push_back(bs.block(i));
  blocks.push_back({m + 1});
  auto for_each_root_set = [&](int skip, auto&& visit) {
    std::vector<std::size_t> pick(blocks.size(), 0);
    for (;;) {
      std::set<int> b;
      Polynomial w(1L);
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (static_cast<int>(i) + 1 == skip) continue;
        int beta = blocks[i][pick[i]];
        b.insert(beta);
        if (static_cast<int>(i) < d) w *= a(bs.j[i], beta);
      }
      visit(b, w);
      std::size_t i = 0;
      for (; i < blocks.size(); ++i) {
        if (static_cast<int>(i) + 1 == skip) continue;
        if (++pick[i] < blocks[i].size()) break;
        pick[i] = 0;
      }
      if (i == blocks.size()) break;
    }
  };
  for_each_root_set(0, [&](const std::set<int>& b, const Polynomial& w) {
    if (!w.is_zero()) plan.denominator.emplace_back(slot(b), w);
  });
  plan.numerators.resize(static_cast<std::size_t>(m));
  for (int l = 1; l <= m; ++l) {
    for (int k = 1; k <= d + 1; ++k) {
      Polynomial minus_b = k <= d ? -sys.b[static_cast<std::size_t>(bs.j[static_cast<std::size_t>(k - 1)] - 1)]
                                  : Polynomial(1L);
      if (minus_b.is_zero()) continue;
      for_each_root_set(k, [&](const std::set<int>& b, const Polynomial& w) {
        if (b.count(l) || w.is_zero()) return;
        std::set<int> bl = b;
        bl.insert(l);
        plan.numerators[static_cast<std::size_t>(l - 1)].emplace_back(slot(bl), minus_b * w);
      });
    }
  }
  return plan;
}

BlockSolution assemble(const Plan& plan, const std::vector<Polynomial>& ups) {
  BlockSolution out;
  for (const auto& [k, w] : plan.denominator) out.denominator += w * ups[k];
  if (out.denominator.is_zero()) throw SingularSystemError("det(A) = 0: the block formula's denominator vanishes");
  for (const auto& terms : plan.numerators) {
    Polynomial num;
    for (const auto& [k, w] : terms) num += w * ups[k];
    out.solution.emplace_back(num, out.denominator);
    out.numerators.push_back(std::move(num));
  }
  return out;
}

void require_acompatible(const LinearSystem& sys, const BlockStructure& bs, const Multidigraph& g) {
  require_block_form(sys, bs);
  auto v = validate_acompatible(g, bs, sys);
  if (!v.empty()) throw InputError("graph is not A-compatible: " + v.front());
}

}  // namespace

BlockSolution solve_block_serial(const LinearSystem& sys, const BlockStructure& bs, const Multidigraph& g) {
  require_acompatible(sys, bs, g);
  Plan plan = make_plan(sys, bs);
  std::set<int> f = bs.f();
  std::vector<Polynomial> ups;
  for (const auto& b : plan.root_sets) ups.push_back(forest_sum(g, filter_by_f(enumerate_rooted_forests_serial(g, b), f)));
  return assemble(plan, ups);
}

BlockSolution solve_block(const LinearSystem& sys, const BlockStructure& bs, const Multidigraph& g) {
  require_acompatible(sys, bs, g);
  Plan plan = make_plan(sys, bs);
  std::set<int> f = bs.f();
  std::vector<Polynomial> ups(plan.root_sets.size());
  const auto count = static_cast<long>(ups.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < count; ++k) {
    const auto& b = plan.root_sets[static_cast<std::size_t>(k)];
    ups[static_cast<std::size_t>(k)] = forest_sum(g, filter_by_f(enumerate_rooted_forests_serial(g, b), f));
  }
  return assemble(plan, ups);
}

StarCheck check_condition_star(const Multidigraph& g, const BlockStructure& bs) {
  const int sink = g.node_count();
  const int m = sink - 1;
  for (int i = 1; i <= bs.d(); ++i) {
    auto from_j = reachable_from(g, bs.j[static_cast<std::size_t>(i - 1)], sink);
    for (const Edge& e : g.edges()) {
      if (!e.negative() || e.source == sink || e.target == sink) continue;
      if (!from_j[static_cast<std::size_t>(e.source)]) continue;
      auto from_t = reachable_from(g, e.target, sink);
      for (int l = 1; l <= m; ++l) {
        if (from_t[static_cast<std::size_t>(l)]) return {false, StarWitness{i, l, e.id}};
      }
    }
  }
  return {true, std::nullopt};
}

std::set<int> zero_components(const Multidigraph& g, const BlockStructure& bs) {
  const int sink = g.node_count();
  std::set<int> out;
  for (int i = 1; i <= bs.d(); ++i) {
    for (int l : bs.block(i)) {
      auto reach = reachable_from(g, l, sink);
      for (const Edge& e : g.edges()) {
        if (e.negative() && e.source != sink && e.target != sink && reach[static_cast<std::size_t>(e.source)]) {
          out.insert(l);
          break;
        }
      }
    }
  }
  return out;
}

namespace {

std::optional<BlockCertificate> try_laplacian(const LinearSystem& sys, const BlockStructure& bs,
                                              const PolyMatrix& l, std::string& why) {
  PGraphSearch found = search_pgraph(l);
  if (!found.witness) {
    why = found.reason;
    return std::nullopt;
  }
  const Multidigraph& g = found.witness->graph;
  if (auto v = validate_acompatible(g, bs, sys); !v.empty()) {
    why = v.front();
    return std::nullopt;
  }
  StarCheck star = check_condition_star(g, bs);
  if (!star.holds) {
    why = "condition (*) fails: j_" + std::to_string(star.witness->block) + " reaches node " +
          std::to_string(star.witness->target) + " through negative edge " +
          std::to_string(star.witness->edge.value) + " avoiding m+1";
    return std::nullopt;
  }
  BlockCertificate cert{solve_block(sys, bs, g), *found.witness, l, zero_components(g, bs), true};
  if (cert.solution.denominator.sign().kind == SignKind::Nonpos) {
    cert.solution.denominator = -cert.solution.denominator;
    for (auto& p : cert.solution.numerators) p = -p;
  }
  if (!cert.solution.denominator.sign().nonneg()) {
    throw InvariantError("certified block denominator is not nonnegative: " + cert.solution.denominator.to_string());
  }
  for (const auto& p : cert.solution.numerators) {
    if (!p.sign().nonneg()) throw InvariantError("certified block numerator is not nonnegative: " + p.to_string());
  }
  return cert;
}

}  // namespace

BlockCertifyResult certify_block_nonneg(const LinearSystem& sys, const BlockStructure& bs, std::size_t budget) {
  require_block_form(sys, bs);
  BlockCertifyResult result;
  const std::size_t m = sys.size();
  for (int jk : bs.j) {
    auto r = static_cast<std::size_t>(jk - 1);
    for (std::size_t c = 0; c < m; ++c) {
      if (!sys.a(r, c).sign().nonneg()) {
        result.hypothesis_failures.push_back(entry_name("A", r + 1, c + 1) + " = " + sys.a(r, c).to_string() +
                                             " in a distinguished row is not nonnegative");
      }
    }
    if (!sys.b[r].sign().nonpos()) {
      result.hypothesis_failures.push_back("b[" + std::to_string(jk) + "] = " + sys.b[r].to_string() +
                                           " is not nonpositive");
    }
  }
  if (!result.hypothesis_failures.empty()) {
    result.reason = "hypotheses of the block criterion do not hold";
    return result;
  }

  std::string why;
  if (auto built = build_acompatible(sys, bs)) {
    if (auto cert = try_laplacian(sys, bs, built->laplacian, why)) {
      result.certificate = std::move(cert);
      return result;
    }
  } else {
    why = "the heuristic Laplacian has an edge between blocks";
  }
  std::string first_reason = why;

  // Alternative fillings: in row j_k, column i takes minus any subset of the
  // terms of the remaining column sum; row m+1 absorbs the rest.
  std::vector<std::pair<int, std::vector<Polynomial>>> columns;  // (column, terms)
  for (int k = 1; k <= bs.d(); ++k) {
    int jk = bs.j[static_cast<std::size_t>(k - 1)];
    for (int i : bs.block(k)) {
      Polynomial s;
      for (std::size_t r = 0; r < m; ++r) {
        if (static_cast<int>(r) + 1 != jk) s += sys.a(r, static_cast<std::size_t>(i - 1));
      }
      columns.emplace_back(i, s.is_zero() ? std::vector<Polynomial>{} : s.monomial_split());
    }
  }
  for (const auto& col : columns) {
    if (col.second.size() >= 63) {
      result.reason = "too many terms for the alternative search (heuristic: " + first_reason + ")";
      return result;
    }
  }
  std::vector<std::uint64_t> mask(columns.size(), 0);
  std::size_t tried = 0;
  for (bool more = true; more;) {
    if (++tried > budget) {
      result.reason = "no A-compatible P-graph with condition (*) found within the search budget (heuristic: " +
                      first_reason + ")";
      return result;
    }
    std::vector<std::vector<Polynomial>> rows(static_cast<std::size_t>(bs.d()), std::vector<Polynomial>(m + 1));
    for (std::size_t q = 0; q < columns.size(); ++q) {
      int i = columns[q].first;
      Polynomial x;
      for (std::size_t t = 0; t < columns[q].second.size(); ++t) {
        if (mask[q] & (std::uint64_t{1} << t)) x -= columns[q].second[t];
      }
      rows[static_cast<std::size_t>(bs.block_of(i) - 1)][static_cast<std::size_t>(i - 1)] = x;
    }
    PolyMatrix l = acompatible_with_rows(sys, bs, rows);
    if (auto cert = try_laplacian(sys, bs, l, why)) {
      cert->from_heuristic = false;
      result.certificate = std::move(cert);
      return result;
    }
    std::size_t c = 0;
    for (; c < columns.size(); ++c) {
      if (++mask[c] < (std::uint64_t{1} << columns[c].second.size())) break;
      mask[c] = 0;
    }
    more = c < columns.size();
  }
  result.reason = "no A-compatible P-graph with condition (*) at monomial granularity (heuristic: " + first_reason + ")";
  return result;
}

}  // namespace forestsolve
