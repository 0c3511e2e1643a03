#include <benchmark/benchmark.h>

#include "uavsched/datagen.hpp"
#include "uavsched/eat_scheduler.hpp"
#include "uavsched/priority_rules.hpp"
#include "uavsched/pso.hpp"
#include "uavsched/reference.hpp"

namespace {

using namespace uavsched;

ProblemInstance generated(int tasks) {
  const auto map = reference::map();
  GenSpec spec;
  spec.n_tasks = tasks;
  spec.seed = 1;
  return generate_instance(spec, map, reference::fleet(map), reference::stations(map));
}

void BM_BuildSchedule(benchmark::State& state) {
  const auto inst = generated(static_cast<int>(state.range(0)));
  const auto seq = priority_ordering(inst, PriorityRule::kMaxTaskTime);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_schedule(seq, inst));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildSchedule)->Arg(10)->Arg(50)->Arg(100)->Arg(500);

void BM_RunPso(benchmark::State& state) {
  const auto inst = generated(static_cast<int>(state.range(0)));
  PsoConfig config;
  config.swarm_size = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_pso(inst, config));
  }
}
BENCHMARK(BM_RunPso)
    ->ArgsProduct({{10, 50, 100}, {8, 40}})
    ->Unit(benchmark::kMillisecond);

void BM_RunPsoThreads(benchmark::State& state) {
  const auto inst = generated(100);
  PsoConfig config;
  config.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_pso(inst, config));
  }
}
BENCHMARK(BM_RunPsoThreads)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
