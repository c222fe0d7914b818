#include "forestsolve/linsys.hpp"

#include <algorithm>

#include "forestsolve/error.hpp"
#include "forestsolve/forests.hpp"

namespace forestsolve {

void LinearSystem::validate() const {
  const std::size_t m = b.size();
  if (a.rows() != m || a.cols() != m) {
    throw InputError("A is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " but b has " +
                     std::to_string(m) + " entries");
  }
  if (variables.size() != m) {
    throw InputError("expected " + std::to_string(m) + " variable names, got " + std::to_string(variables.size()));
  }
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (!is_valid_variable_name(variables[i])) throw InputError("invalid variable name '" + variables[i] + "'");
    for (std::size_t k = 0; k < i; ++k) {
      if (variables[k] == variables[i]) throw InputError("duplicate variable name '" + variables[i] + "'");
    }
  }
}

std::vector<std::string> default_variables(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

PolyMatrix bordered_laplacian(const LinearSystem& sys) {
  const std::size_t m = sys.size();
  PolyMatrix l(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) l(i, j) = sys.a(i, j);
    l(i, m) = sys.b[i];
  }
  for (std::size_t j = 0; j <= m; ++j) {
    Polynomial s;
    for (std::size_t i = 0; i < m; ++i) s += l(i, j);
    l(m, j) = -s;
  }
  return l;
}

namespace {

void check_graph(const LinearSystem& sys, const Multidigraph& g) {
  sys.validate();
  if (laplacian_of(g) != bordered_laplacian(sys)) {
    throw InputError("the graph's Laplacian differs from the bordered Laplacian of the system");
  }
}

Solution ratios(const std::vector<Polynomial>& ups) {
  const std::size_t m = ups.size() - 1;
  if (ups[m].is_zero()) throw SingularSystemError("det(A) = 0: no spanning tree sum rooted at m+1");
  Solution x;
  x.reserve(m);
  for (std::size_t i = 0; i < m; ++i) x.emplace_back(ups[i], ups[m]);
  return x;
}

}  // namespace

Solution solve_by_trees_serial(const LinearSystem& sys, const Multidigraph& g) {
  check_graph(sys, g);
  std::vector<Polynomial> ups(sys.size() + 1);
  for (std::size_t i = 0; i <= sys.size(); ++i) {
    ups[i] = forest_sum(g, enumerate_rooted_forests_serial(g, {static_cast<int>(i) + 1}));
  }
  return ratios(ups);
}

Solution solve_by_trees(const LinearSystem& sys, const Multidigraph& g) {
  check_graph(sys, g);
  std::vector<Polynomial> ups(sys.size() + 1);
  const auto count = static_cast<long>(ups.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    ups[static_cast<std::size_t>(i)] =
        forest_sum(g, enumerate_rooted_forests_serial(g, {static_cast<int>(i) + 1}));
  }
  return ratios(ups);
}

Solution solve_by_trees(const LinearSystem& sys) {
  sys.validate();
  return solve_by_trees(sys, canonical_graph(bordered_laplacian(sys)));
}

Solution cramer_oracle(const LinearSystem& sys) {
  sys.validate();
  const std::size_t m = sys.size();
  Polynomial det = determinant(sys.a);
  if (det.is_zero()) throw SingularSystemError("det(A) = 0");
  Solution x;
  for (std::size_t i = 0; i < m; ++i) {
    PolyMatrix ai = sys.a;
    for (std::size_t r = 0; r < m; ++r) ai(r, i) = -sys.b[r];
    x.emplace_back(determinant(ai), det);
  }
  return x;
}

bool residual_check(const LinearSystem& sys, const Solution& x) {
  if (x.size() != sys.size()) return false;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    RationalExpr row(sys.b[i]);
    for (std::size_t j = 0; j < sys.size(); ++j) {
      if (!sys.a(i, j).is_zero()) row = row + RationalExpr(sys.a(i, j)) * x[j];
    }
    if (!row.is_zero()) return false;
  }
  return true;
}

bool solutions_equal(const Solution& a, const Solution& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!rat_equal(a[i], b[i])) return false;
  }
  return true;
}

LinearSystem permute_rows(const LinearSystem& sys, const std::vector<int>& order) {
  const std::size_t m = sys.size();
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  bool ok = sorted.size() == m;
  for (std::size_t k = 0; ok && k < m; ++k) ok = sorted[k] == static_cast<int>(k) + 1;
  if (!ok) throw InputError("row order must be a permutation of 1.." + std::to_string(m));
  LinearSystem out{PolyMatrix(m, m), std::vector<Polynomial>(m), sys.variables};
  for (std::size_t k = 0; k < m; ++k) {
    auto src = static_cast<std::size_t>(order[k] - 1);
    for (std::size_t j = 0; j < m; ++j) out.a(k, j) = sys.a(src, j);
    out.b[k] = sys.b[src];
  }
  return out;
}

}  // namespace forestsolve
