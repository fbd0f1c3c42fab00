#include <benchmark/benchmark.h>

#include "bungee/grid.hpp"
#include "bungee/registry.hpp"

namespace {

using namespace bungee;

void BM_Evaluate(benchmark::State& state) {
  const FunctionExpr f = parse("z+1+exp(-z)+2*pi*i");
  Complex z(0.3, -0.2);
  for (auto _ : state) {
    const EvalResult r = evaluate(f, z);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Evaluate);

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse("exp(-z-1)+1+pow(sin(z),3)/(cos(z)+2*i)"));
}
BENCHMARK(BM_Parse);

// Orbits that run to max_iter are the expensive case.
void BM_OrbitCompleted(benchmark::State& state) {
  const FunctionExpr f = parse("z*(cos(1)+i*sin(1))");
  ClassifierConfig cfg;
  cfg.max_iter = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classify_point(f, 1.0, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OrbitCompleted)->Arg(250)->Arg(1000)->Arg(4000);

void BM_OrbitBungee(benchmark::State& state) {
  const FunctionExpr f = parse("1/pow(z,2)");
  const ClassifierConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(classify_point(f, 0.5, cfg));
}
BENCHMARK(BM_OrbitBungee);

void BM_Grid(benchmark::State& state) {
  const FunctionExpr f = parse("z+1+exp(-z)");
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridSpec spec{-3, 3, -3, 3, n, n};
  const ClassifierConfig cfg;
  const auto workers = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(classify_grid(f, spec, cfg, workers));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_Grid)->Args({32, 1})->Args({32, 4})->Unit(benchmark::kMillisecond);

void BM_ExampleRun(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_example("ex_rational_bungee"));
}
BENCHMARK(BM_ExampleRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
