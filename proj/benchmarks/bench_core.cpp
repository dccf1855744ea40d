#include <benchmark/benchmark.h>

#include <random>

#include "grope/canonical.hpp"
#include "grope/clasper.hpp"
#include "grope/diagram_space.hpp"
#include "grope/graph_enumerate.hpp"
#include "grope/ihx.hpp"
#include "grope/lie.hpp"
#include "grope/snf.hpp"

namespace {

using namespace grope;

void BM_CanonicalForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<UnitrivalentGraph> graphs;
  for (int i = 0; i < 64; ++i) graphs.push_back(random_graph(rng, static_cast<int>(state.range(0))));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(graphs[i++ % graphs.size()]));
}
BENCHMARK(BM_CanonicalForm)->Arg(8)->Arg(14)->Arg(24);

void BM_EnumerateGraphs(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_connected_graphs(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateGraphs)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_IhxReduce(benchmark::State& state) {
  const RootedTree t = gen_symmetric(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ihx_reduce(t));
}
BENCHMARK(BM_IhxReduce)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_SmithNormalForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> entry(-9, 9);
  IntMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = entry(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);

void BM_TreeQuotient(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Quotient(tree_presentation(k)).free_rank());
}
BENCHMARK(BM_TreeQuotient)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_Cleanup(benchmark::State& state) {
  const ClasperState s = parse_clasper_state("((* *) *)\nleaf 0: e=2 k=2\nleaf 1: k=1 cl=1\nleaf 2: f=1 u=2\n");
  const int bound = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    InterferencePolicy p{bound ? InterferencePolicy::Mode::Adversarial : InterferencePolicy::Mode::Zero, bound,
                         seed++, 64u * static_cast<std::uint64_t>(bound)};
    benchmark::DoNotOptimize(cleanup(s, p, Strategy::Random, 6));
  }
}
BENCHMARK(BM_Cleanup)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_Magnus(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::vector<int> labels(k);
  for (int i = 0; i < k; ++i) labels[i] = i % 3 + 1;
  const GroupWord w = tree_to_bracket(gen_half(k), labels);
  for (auto _ : state) benchmark::DoNotOptimize(magnus(w, k));
}
BENCHMARK(BM_Magnus)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
