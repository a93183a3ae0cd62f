// Serial reference path vs OpenMP path for the sample-parallel kernels.

#include <benchmark/benchmark.h>

#include "bures/batch.hpp"
#include "bures/validation.hpp"

using namespace bures;

namespace {

void metric_batch_bench(benchmark::State& state, EngineKind engine, Execution exec) {
  const auto points = sample_batch(20240601, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = metric_batch(points, engine, exec);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["workers"] = exec == Execution::parallel ? parallel_workers() : 1;
}

void closed_form_check_bench(benchmark::State& state, Execution exec) {
  CheckSpec spec;
  spec.sample_count = static_cast<std::size_t>(state.range(0));
  spec.execution = exec;
  for (auto _ : state) {
    auto r = check_closed_forms(spec);
    benchmark::DoNotOptimize(r.max_deviation);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(metric_batch_bench, eigen_serial, EngineKind::eigen, Execution::serial)
    ->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(metric_batch_bench, eigen_parallel, EngineKind::eigen, Execution::parallel)
    ->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(metric_batch_bench, trace_serial, EngineKind::dittmann_trace, Execution::serial)
    ->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(metric_batch_bench, trace_parallel, EngineKind::dittmann_trace, Execution::parallel)
    ->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(closed_form_check_bench, serial, Execution::serial)->Arg(500)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(closed_form_check_bench, parallel, Execution::parallel)->Arg(500)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
