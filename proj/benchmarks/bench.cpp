#include <benchmark/benchmark.h>

#include "confsink/cycles.hpp"
#include "confsink/homology.hpp"
#include "confsink/random_instances.hpp"

using namespace confsink;

static void BM_EnumerateComplete(benchmark::State& state) {
  const Graph g = build_graph(GraphSpec::complete(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(CubeComplex::enumerate(g, 2).total_cells());
}
BENCHMARK(BM_EnumerateComplete)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_EnumerateBanana(benchmark::State& state) {
  const Graph g = build_graph(GraphSpec::banana(4));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(CubeComplex::enumerate(g, n).total_cells());
}
BENCHMARK(BM_EnumerateBanana)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_Homology(benchmark::State& state) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::banana(4)), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(homology(cx, {true, false}).euler_characteristic);
  state.counters["cells"] = static_cast<double>(cx.total_cells());
}
BENCHMARK(BM_Homology)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_RankOnly(benchmark::State& state) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::complete(5)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(homology(cx, {false, false}).euler_characteristic);
}
BENCHMARK(BM_RankOnly)->Unit(benchmark::kMillisecond);

static void BM_SmithRandom(benchmark::State& state) {
  Rng rng(42);
  const auto size = static_cast<std::size_t>(state.range(0));
  const auto m = random_matrix(rng, size, size, 5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m).size());
}
BENCHMARK(BM_SmithRandom)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_BasicClasses(benchmark::State& state) {
  const Graph g = build_graph(GraphSpec::complete(5));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_basic_classes(g, 2).classes.size());
}
BENCHMARK(BM_BasicClasses)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
