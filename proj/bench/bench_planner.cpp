// Parallel vs serial planner and sweep throughput.
#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "spotplan/catalog.hpp"
#include "spotplan/planner.hpp"
#include "spotplan/simulator.hpp"

namespace {

using namespace spotplan;

// The bundled catalog with every row cloned `copies` times under new names.
Catalog widened_catalog(int copies) {
  const Catalog base = bundled_simulated_catalog();
  std::vector<InstanceSpec> rows;
  for (int c = 0; c < copies; ++c) {
    for (InstanceSpec inst : base.instances()) {
      inst.name += "#" + std::to_string(c);
      rows.push_back(std::move(inst));
    }
  }
  return Catalog(std::move(rows));
}

Execution execution_arg(const benchmark::State& state) {
  return state.range(1) != 0 ? Execution::Parallel : Execution::Serial;
}

void BM_Recommend(benchmark::State& state) {
  const Catalog catalog = widened_catalog(static_cast<int>(state.range(0)));
  const ScalingSource scaling;
  const SaturationTable saturation = SaturationTable::bundled();
  PlanRequest request;
  request.pw = Money::parse("6");
  for (auto _ : state) {
    benchmark::DoNotOptimize(recommend(catalog, request, scaling, saturation, execution_arg(state)));
  }
  state.SetLabel(state.range(1) != 0 ? "parallel" : "serial");
}
BENCHMARK(BM_Recommend)->ArgsProduct({{1, 4, 16}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const Catalog catalog = widened_catalog(static_cast<int>(state.range(0)));
  const ScalingSource scaling;
  const SaturationTable saturation = SaturationTable::bundled();
  SweepSpec spec;
  spec.pw_max = Money::parse("5");
  spec.pw_step = Money::parse("0.25");
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(catalog, spec, scaling, saturation, execution_arg(state)));
  }
  state.SetLabel(state.range(1) != 0 ? "parallel" : "serial");
}
BENCHMARK(BM_Sweep)->ArgsProduct({{1, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
