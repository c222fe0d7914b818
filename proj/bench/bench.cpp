#include <benchmark/benchmark.h>

#include "forestsolve/blocksys.hpp"

using namespace forestsolve;

namespace {

// Complete digraph with symbolic labels on n nodes.
Multidigraph complete(int n) {
  Multidigraph g(n);
  int k = 0;
  for (int s = 1; s <= n; ++s) {
    for (int t = 1; t <= n; ++t) {
      if (s != t) g.add_edge(s, t, Polynomial::variable("z" + std::to_string(++k)));
    }
  }
  return g;
}

// One block of size n with the conservation-like row first, and one free row.
struct Chain {
  LinearSystem sys;
  BlockStructure bs;
  Multidigraph graph;
};

Chain chain(int n) {
  const int m = n + 1;
  LinearSystem sys{PolyMatrix(m, m), std::vector<Polynomial>(static_cast<std::size_t>(m)), default_variables(m)};
  for (int c = 0; c < n; ++c) sys.a(0, c) = Polynomial(1);
  sys.b[0] = -Polynomial::variable("T");
  for (int r = 1; r < n; ++r) {
    sys.a(r, r - 1) = Polynomial::variable("a" + std::to_string(r));
    sys.a(r, r) = -Polynomial::variable("a" + std::to_string(r + 1)) - Polynomial::variable("c" + std::to_string(r));
    if (r + 1 < n) sys.a(r, r + 1) = Polynomial::variable("c" + std::to_string(r + 1));
  }
  sys.a(m - 1, n - 1) = Polynomial::variable("e");
  sys.a(m - 1, m - 1) = -Polynomial::variable("f");
  BlockStructure bs{{n}, 1, {1}};
  auto ac = build_acompatible(sys, bs);
  return {sys, bs, ac->graph};
}

void BM_forests_parallel(benchmark::State& state) {
  Multidigraph g = complete(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_rooted_forests(g, {1}));
}

void BM_forests_serial(benchmark::State& state) {
  Multidigraph g = complete(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_rooted_forests_serial(g, {1}));
}

void BM_block_parallel(benchmark::State& state) {
  Chain c = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_block(c.sys, c.bs, c.graph));
}

void BM_block_serial(benchmark::State& state) {
  Chain c = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_block_serial(c.sys, c.bs, c.graph));
}

}  // namespace

BENCHMARK(BM_forests_parallel)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_forests_serial)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_block_parallel)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_block_serial)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
