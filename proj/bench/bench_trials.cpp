#include <benchmark/benchmark.h>

#include "projcert/harness.hpp"

namespace {

const char* const kIds[] = {"thm1", "thm2", "thm6", "cb4", "p5"};

projcert::Config config(const benchmark::State& state) {
  projcert::Config cfg;
  cfg.trials = static_cast<int>(state.range(1));
  cfg.seed = 42;
  return cfg;
}

void BM_Serial(benchmark::State& state) {
  const char* id = kIds[state.range(0)];
  const projcert::Config cfg = config(state);
  for (auto _ : state) benchmark::DoNotOptimize(projcert::run_serial(cfg, id));
  state.SetLabel(id);
  state.SetItemsProcessed(state.iterations() * cfg.trials);
}

void BM_Parallel(benchmark::State& state) {
  const char* id = kIds[state.range(0)];
  const projcert::Config cfg = config(state);
  for (auto _ : state) benchmark::DoNotOptimize(projcert::run_parallel(cfg, id));
  state.SetLabel(id);
  state.SetItemsProcessed(state.iterations() * cfg.trials);
}

void args(benchmark::internal::Benchmark* b) {
  for (int i = 0; i < 5; ++i) b->Args({i, 1000});
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_Serial)->Apply(args);
BENCHMARK(BM_Parallel)->Apply(args);

BENCHMARK_MAIN();
