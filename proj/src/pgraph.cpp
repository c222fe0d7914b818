#include "forestsolve/pgraph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "forestsolve/error.hpp"

namespace forestsolve {

namespace {

std::string edge_text(const Edge& e) {
  return std::to_string(e.source) + "->" + std::to_string(e.target) + " [" + e.label.to_string() + "]";
}

// Whether every cycle through positive edge p also passes `through`.
bool cycles_pass(const Multidigraph& g, const Edge& p, int through) {
  if (p.target == through || p.source == through) return true;
  return !reaches_avoiding(g, p.target, p.source, through);
}

std::map<EdgeId, Polynomial> group_sums_of(const Multidigraph& g, const Mu& mu) {
  std::map<EdgeId, Polynomial> sums;
  for (const Edge& e : g.edges()) {
    if (!e.negative()) continue;
    Polynomial s = e.label;
    if (auto it = mu.find(e.id); it != mu.end()) {
      for (EdgeId p : it->second) s += g.edge(p).label;
    }
    sums[e.id] = s;
  }
  return sums;
}

}  // namespace

std::optional<Cycle> cycle_with_two_negatives(const Multidigraph& g) {
  // Parallel positive edges do not change which node cycles exist, so keep one
  // positive edge per ordered pair.
  Multidigraph h(g.node_count());
  std::set<std::pair<int, int>> positive_pairs;
  for (const Edge& e : g.edges()) {
    if (e.negative() || positive_pairs.insert({e.source, e.target}).second) {
      h.add_edge_with_id(e.id, e.source, e.target, e.label);
    }
  }
  for (const Cycle& c : simple_cycles(h)) {
    int negatives = 0;
    for (EdgeId id : c) negatives += h.edge(id).negative() ? 1 : 0;
    if (negatives >= 2) return c;
  }
  return std::nullopt;
}

std::vector<Violation> validate_partition(const Multidigraph& g, const Mu& mu) {
  std::vector<Violation> out;
  for (const Edge& e : g.edges()) {
    if (!e.negative() && !e.positive()) {
      out.push_back({"(i)", {e.id}, "label of " + edge_text(e) + " has mixed sign"});
    }
  }
  if (auto c = cycle_with_two_negatives(g)) {
    out.push_back({"(ii)", *c, "a cycle contains more than one negative edge"});
  }
  std::map<EdgeId, EdgeId> owner;
  for (const auto& [neg, parts] : mu) {
    const Edge* e = g.find(neg);
    if (!e || !e->negative()) {
      out.push_back({"domain", {neg}, "edge " + std::to_string(neg.value) + " is not a negative edge"});
      continue;
    }
    for (EdgeId pid : parts) {
      const Edge* p = g.find(pid);
      if (!p || !p->positive() || p->source != e->source) {
        out.push_back({"(iii a)", {neg, pid},
                       "edge " + std::to_string(pid.value) + " is not a positive edge leaving node " +
                           std::to_string(e->source)});
        continue;
      }
      if (!cycles_pass(g, *p, e->target)) {
        out.push_back({"(iii b)", {neg, pid},
                       "a cycle through " + edge_text(*p) + " avoids node " + std::to_string(e->target)});
      }
      auto [it, fresh] = owner.emplace(pid, neg);
      if (!fresh && it->second != neg) {
        out.push_back({"(iii c)", {it->second, neg, pid},
                       "edge " + std::to_string(pid.value) + " is paired with two negative edges"});
      } else if (!fresh) {
        out.push_back({"(iii c)", {neg, pid}, "edge " + std::to_string(pid.value) + " is listed twice"});
      }
    }
  }
  return out;
}

std::optional<PGraphWitness> is_pgraph(const Multidigraph& g, const Mu& mu) {
  if (!validate_partition(g, mu).empty()) return std::nullopt;
  PGraphWitness w{g, {}, group_sums_of(g, mu)};
  for (const auto& [neg, sum] : w.group_sums) {
    if (!sum.sign().nonneg()) return std::nullopt;
  }
  for (const auto& [neg, parts] : mu) {
    std::vector<EdgeId> sorted = parts;
    std::sort(sorted.begin(), sorted.end());
    w.mu[neg] = sorted;
  }
  for (const auto& [neg, sum] : w.group_sums) w.mu.try_emplace(neg);
  return w;
}

// ---------------------------------------------------------------------------
// Search on a fixed graph

namespace {

struct FixedSearch {
  const Multidigraph& g;
  std::size_t budget;
  std::size_t visited = 0;
  std::vector<const Edge*> negatives;
  std::vector<const Edge*> positives;
  std::vector<std::vector<int>> options;  // per positive: indices into negatives
  std::vector<Polynomial> sums;
  std::vector<int> choice;

  bool run(std::size_t k) {
    if (++visited > budget) return false;
    if (k == positives.size()) {
      return std::all_of(sums.begin(), sums.end(), [](const Polynomial& s) { return s.sign().nonneg(); });
    }
    for (int n : options[k]) {
      choice[k] = n;
      sums[static_cast<std::size_t>(n)] += positives[k]->label;
      if (run(k + 1)) return true;
      sums[static_cast<std::size_t>(n)] -= positives[k]->label;
    }
    choice[k] = -1;
    return run(k + 1);
  }
};

}  // namespace

PGraphSearch find_mu(const Multidigraph& g, std::size_t budget) {
  for (const Edge& e : g.edges()) {
    if (!e.negative() && !e.positive()) return {std::nullopt, "edge " + edge_text(e) + " has a mixed-sign label"};
  }
  if (cycle_with_two_negatives(g)) return {std::nullopt, "a cycle contains more than one negative edge"};
  Mu mu;
  for (int s = 1; s <= g.node_count(); ++s) {
    FixedSearch fs{g, budget, 0, {}, {}, {}, {}, {}};
    for (const Edge& e : g.edges()) {
      if (e.source != s) continue;
      (e.negative() ? fs.negatives : fs.positives).push_back(&e);
    }
    if (fs.negatives.empty()) continue;
    for (const Edge* p : fs.positives) {
      std::vector<int> opts;
      for (std::size_t n = 0; n < fs.negatives.size(); ++n) {
        if (cycles_pass(g, *p, fs.negatives[n]->target)) opts.push_back(static_cast<int>(n));
      }
      fs.options.push_back(opts);
    }
    for (const Edge* n : fs.negatives) fs.sums.push_back(n->label);
    fs.choice.assign(fs.positives.size(), -1);
    if (!fs.run(0)) {
      if (fs.visited > budget) return {std::nullopt, "search budget exhausted at node " + std::to_string(s)};
      return {std::nullopt, "no pairing of the edges leaving node " + std::to_string(s) +
                                " gives nonnegative group sums"};
    }
    for (std::size_t k = 0; k < fs.positives.size(); ++k) {
      if (fs.choice[k] >= 0) {
        mu[fs.negatives[static_cast<std::size_t>(fs.choice[k])]->id].push_back(fs.positives[k]->id);
      }
    }
  }
  auto w = is_pgraph(g, mu);
  if (!w) throw InvariantError("fixed-graph search produced an invalid edge partition");
  return {std::move(w), ""};
}

// ---------------------------------------------------------------------------
// Search over realizations of a Laplacian

namespace {

// Dense Edmonds-Karp; returns the flow matrix.
std::vector<std::vector<Rational>> max_flow(std::vector<std::vector<Rational>> cap, int s, int t) {
  const auto n = cap.size();
  std::vector<std::vector<Rational>> flow(n, std::vector<Rational>(n, 0));
  for (;;) {
    std::vector<int> parent(n, -1);
    parent[static_cast<std::size_t>(s)] = s;
    std::deque<int> queue{s};
    while (!queue.empty() && parent[static_cast<std::size_t>(t)] < 0) {
      auto u = static_cast<std::size_t>(queue.front());
      queue.pop_front();
      for (std::size_t v = 0; v < n; ++v) {
        if (parent[v] < 0 && cap[u][v] > 0) {
          parent[v] = static_cast<int>(u);
          queue.push_back(static_cast<int>(v));
        }
      }
    }
    if (parent[static_cast<std::size_t>(t)] < 0) break;
    Rational push = -1;
    for (int v = t; v != s; v = parent[static_cast<std::size_t>(v)]) {
      const Rational& c = cap[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])][static_cast<std::size_t>(v)];
      if (push < 0 || c < push) push = c;
    }
    for (int v = t; v != s; v = parent[static_cast<std::size_t>(v)]) {
      auto u = static_cast<std::size_t>(parent[static_cast<std::size_t>(v)]);
      auto w = static_cast<std::size_t>(v);
      cap[u][w] -= push;
      cap[w][u] += push;
      flow[u][w] += push;
      flow[w][u] -= push;
    }
  }
  return flow;
}

Rational coefficient_of(const Polynomial& p, const Monomial& m) {
  for (const auto& t : p.terms()) {
    if (t.monomial == m) return t.coefficient;
  }
  return 0;
}

}  // namespace

PGraphSearch search_pgraph(const PolyMatrix& laplacian) {
  Multidigraph canonical = canonical_graph(laplacian);  // validates shape and column sums
  const int n = canonical.node_count();
  for (int j = 1; j <= n; ++j) {
    const Polynomial& d = laplacian(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(j - 1));
    if (!d.sign().nonpos()) {
      return {std::nullopt, "diagonal entry L" + std::to_string(j) + std::to_string(j) + " = " + d.to_string() +
                                " is not nonpositive, so no P-graph has this Laplacian"};
    }
  }

  Multidigraph g0(n);
  for (const Edge& e : canonical.edges()) {
    Polynomial neg = e.label.negative_part();
    if (!neg.is_zero()) g0.add_edge(e.source, e.target, neg);
    Polynomial pos = e.label.positive_part();
    if (!pos.is_zero()) {
      for (const auto& part : pos.monomial_split()) g0.add_edge(e.source, e.target, part);
    }
  }
  if (auto c = cycle_with_two_negatives(g0)) {
    std::ostringstream os;
    os << "the cycle";
    for (EdgeId id : *c) os << ' ' << edge_text(g0.edge(id));
    os << " holds two negative edges";
    return {std::nullopt, os.str()};
  }

  // flows[p] = list of (negative edge, amount) served by positive edge p.
  std::map<EdgeId, std::vector<std::pair<EdgeId, Rational>>> flows;
  for (int s = 1; s <= n; ++s) {
    std::vector<const Edge*> negatives;
    std::vector<const Edge*> positives;
    for (const Edge& e : g0.edges()) {
      if (e.source == s) (e.negative() ? negatives : positives).push_back(&e);
    }
    if (negatives.empty()) continue;
    std::vector<Monomial> demanded;
    for (const Edge* e : negatives) {
      for (const auto& t : e->label.terms()) {
        if (std::find(demanded.begin(), demanded.end(), t.monomial) == demanded.end()) demanded.push_back(t.monomial);
      }
    }
    for (const Monomial& m : demanded) {
      std::vector<const Edge*> supply;
      for (const Edge* p : positives) {
        if (p->label.terms().front().monomial == m) supply.push_back(p);
      }
      const std::size_t np = supply.size();
      const std::size_t nn = negatives.size();
      const int src = 0;
      const int dst = static_cast<int>(np + nn + 1);
      std::vector<std::vector<Rational>> cap(np + nn + 2, std::vector<Rational>(np + nn + 2, 0));
      Rational demand = 0;
      for (std::size_t a = 0; a < np; ++a) {
        Rational c = supply[a]->label.terms().front().coefficient;
        cap[0][a + 1] = c;
        for (std::size_t b = 0; b < nn; ++b) {
          if (cycles_pass(g0, *supply[a], negatives[b]->target)) cap[a + 1][np + 1 + b] = c;
        }
      }
      for (std::size_t b = 0; b < nn; ++b) {
        Rational d = -coefficient_of(negatives[b]->label, m);
        cap[np + 1 + b][static_cast<std::size_t>(dst)] = d;
        demand += d;
      }
      auto flow = max_flow(cap, src, dst);
      Rational total = 0;
      for (std::size_t a = 0; a < np; ++a) total += flow[0][a + 1];
      if (total < demand) {
        std::string what = m.is_one() ? "constant terms" : "terms in " + m.to_string();
        return {std::nullopt, "no witness found at monomial granularity: usable positive " + what +
                                  " leaving node " + std::to_string(s) + " cover " + total.get_str() + " of the " +
                                  demand.get_str() + " required by its negative edges"};
      }
      for (std::size_t a = 0; a < np; ++a) {
        for (std::size_t b = 0; b < nn; ++b) {
          const Rational& f = flow[a + 1][np + 1 + b];
          if (f > 0) flows[supply[a]->id].emplace_back(negatives[b]->id, f);
        }
      }
    }
  }

  Multidigraph g = g0;
  Mu mu;
  for (auto& [pid, served] : flows) {
    if (served.size() == 1) {
      mu[served.front().first].push_back(pid);
      continue;
    }
    const Edge& p = g.edge(pid);
    const Term& t = p.label.terms().front();
    Rational leftover = t.coefficient;
    std::vector<Polynomial> parts;
    for (const auto& [neg, f] : served) {
      parts.push_back(Polynomial::term(f, t.monomial));
      leftover -= f;
    }
    if (leftover > 0) parts.front() += Polynomial::term(leftover, t.monomial);
    SplitResult split = split_edge(g, pid, parts);
    g = std::move(split.graph);
    for (std::size_t k = 0; k < served.size(); ++k) mu[served[k].first].push_back(split.parts[k]);
  }
  auto w = is_pgraph(g, mu);
  if (!w) throw InvariantError("P-graph search produced an invalid witness");
  if (laplacian_of(w->graph) != laplacian) throw InvariantError("P-graph witness changed the Laplacian");
  return {std::move(w), ""};
}

std::optional<PGraphWitness> find_pgraph(const PolyMatrix& laplacian) { return search_pgraph(laplacian).witness; }

// ---------------------------------------------------------------------------
// Replacement sets

std::optional<Forest> forest_from_edges(const Multidigraph& g, std::vector<EdgeId> edges) {
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<int> next(n + 1, 0);
  for (EdgeId id : edges) {
    const Edge& e = g.edge(id);
    if (next[static_cast<std::size_t>(e.source)] != 0) return std::nullopt;
    next[static_cast<std::size_t>(e.source)] = e.target;
  }
  Forest f;
  std::sort(edges.begin(), edges.end());
  f.edges = std::move(edges);
  f.root_of.assign(n + 1, 0);
  for (std::size_t v = 1; v <= n; ++v) {
    if (next[v] == 0) f.roots.push_back(static_cast<int>(v));
    std::size_t r = v;
    std::size_t steps = 0;
    while (next[r] != 0) {
      r = static_cast<std::size_t>(next[r]);
      if (++steps > n) return std::nullopt;
    }
    f.root_of[v] = static_cast<int>(r);
  }
  return f;
}

namespace {

std::map<EdgeId, EdgeId> mu_star(const PGraphWitness& w) {
  std::map<EdgeId, EdgeId> inv;
  for (const auto& [neg, parts] : w.mu) {
    for (EdgeId p : parts) inv[p] = neg;
  }
  return inv;
}

std::vector<EdgeId> replaced(const Forest& zeta, const std::vector<EdgeId>& remove,
                             const std::map<EdgeId, EdgeId>& inv) {
  std::vector<EdgeId> out;
  for (EdgeId id : zeta.edges) {
    if (std::find(remove.begin(), remove.end(), id) == remove.end()) out.push_back(id);
  }
  for (EdgeId id : remove) out.push_back(inv.at(id));
  return out;
}

}  // namespace

std::vector<EdgeId> max_replacement_set(const PGraphWitness& w, const Forest& zeta) {
  auto inv = mu_star(w);
  std::vector<EdgeId> candidates;
  for (EdgeId id : zeta.edges) {
    if (inv.count(id)) candidates.push_back(id);
  }
  if (candidates.size() > 20) throw InputError("too many replaceable edges in one forest");
  std::uint32_t union_mask = 0;
  for (std::uint32_t mask = 1; mask < (1U << candidates.size()); ++mask) {
    std::vector<EdgeId> e;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (mask & (1U << k)) e.push_back(candidates[k]);
    }
    if (forest_from_edges(w.graph, replaced(zeta, e, inv))) union_mask |= mask;
  }
  std::vector<EdgeId> out;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (union_mask & (1U << k)) out.push_back(candidates[k]);
  }
  return out;
}

std::vector<Forest> lambda_forests(const PGraphWitness& w, const std::set<int>& roots) {
  std::vector<Forest> out;
  for (Forest& f : enumerate_rooted_forests(w.graph, roots)) {
    if (max_replacement_set(w, f).empty()) out.push_back(std::move(f));
  }
  return out;
}

Forest psi(const PGraphWitness& w, const Forest& zeta) {
  auto e = max_replacement_set(w, zeta);
  auto f = forest_from_edges(w.graph, replaced(zeta, e, mu_star(w)));
  if (!f) throw InvariantError("replacement by the maximal set produced a cycle");
  return *f;
}

std::vector<Forest> psi_fiber(const PGraphWitness& w, const Forest& zeta) {
  std::vector<EdgeId> base;
  std::vector<std::vector<EdgeId>> choices;
  for (EdgeId id : zeta.edges) {
    if (w.graph.edge(id).negative()) {
      std::vector<EdgeId> opts{id};
      if (auto it = w.mu.find(id); it != w.mu.end()) opts.insert(opts.end(), it->second.begin(), it->second.end());
      choices.push_back(opts);
    } else {
      base.push_back(id);
    }
  }
  std::vector<Forest> out;
  std::vector<std::size_t> pick(choices.size(), 0);
  for (;;) {
    std::vector<EdgeId> edges = base;
    for (std::size_t k = 0; k < choices.size(); ++k) edges.push_back(choices[k][pick[k]]);
    auto f = forest_from_edges(w.graph, edges);
    if (!f) throw InvariantError("a fiber member is not a forest");
    out.push_back(std::move(*f));
    std::size_t k = 0;
    while (k < choices.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
    if (k == choices.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const Forest& a, const Forest& b) { return a.edges < b.edges; });
  return out;
}

Polynomial positive_upsilon(const PGraphWitness& w, int i) {
  Polynomial total;
  for (const Forest& zeta : lambda_forests(w, {i})) {
    Polynomial term(1L);
    for (EdgeId id : zeta.edges) {
      const Edge& e = w.graph.edge(id);
      term *= e.negative() ? w.group_sums.at(id) : e.label;
    }
    total += term;
  }
  return total;
}

bool nonzero_component(const PGraphWitness& w, int i) {
  for (const Forest& tau : lambda_forests(w, {i})) {
    bool all_positive = true;
    for (EdgeId id : tau.edges) {
      if (w.graph.edge(id).negative() && !w.group_sums.at(id).sign().positive()) {
        all_positive = false;
        break;
      }
    }
    if (all_positive) return true;
  }
  return false;
}

CertifyResult certify_nonneg(const LinearSystem& sys) {
  sys.validate();
  PGraphSearch found = search_pgraph(bordered_laplacian(sys));
  if (!found.witness) return {std::nullopt, found.reason};
  const PGraphWitness& w = *found.witness;
  const int n = w.graph.node_count();
  std::vector<Polynomial> ups;
  for (int i = 1; i <= n; ++i) {
    Polynomial p = positive_upsilon(w, i);
    if (p != upsilon_rooted(w.graph, i)) {
      throw InvariantError("nonnegative expansion disagrees with the tree sum at node " + std::to_string(i));
    }
    if (!p.sign().nonneg()) throw InvariantError("nonnegative expansion has a negative coefficient");
    ups.push_back(std::move(p));
  }
  Polynomial den = ups.back();
  ups.pop_back();
  if (den.is_zero()) throw SingularSystemError("det(A) = 0: the tree sum rooted at m+1 vanishes");
  Certificate cert{{}, ups, den, w};
  for (const auto& p : ups) cert.solution.emplace_back(p, den);
  return {std::move(cert), ""};
}

}  // namespace forestsolve
