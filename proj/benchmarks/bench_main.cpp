#include <benchmark/benchmark.h>

#include "uavsim/harness.hpp"
#include "uavsim/heatmap.hpp"

namespace {

using namespace uavsim;

void BM_StepGame(benchmark::State& state) {
  GameState g = setup_match(1, FieldConfig{});
  for (auto _ : state) {
    g = step_game(std::move(g), 0.1);
    benchmark::DoNotOptimize(g.tick);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StepGame);

void BM_FixedPositions(benchmark::State& state) {
  SimConfig c;
  c.burn_in_ticks = state.range(0);
  const std::vector<Vec2> log = burn_in_collisions(c);
  for (auto _ : state) {
    auto placed = fixed_positions(log, 20, 8.0, c.field);
    benchmark::DoNotOptimize(placed.data());
  }
  state.counters["collisions"] = static_cast<double>(log.size());
}
BENCHMARK(BM_FixedPositions)->Arg(2'000)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_RunSimulation(benchmark::State& state) {
  SimConfig c;
  c.strategy = static_cast<StrategyMode>(state.range(0));
  c.n_drones = 20;
  c.ticks = 2'000;
  c.burn_in_ticks = 2'000;
  for (auto _ : state) {
    MetricsRecord m = run_simulation(c);
    benchmark::DoNotOptimize(m.dc);
  }
  state.SetLabel(std::string(strategy_name(c.strategy)));
}
BENCHMARK(BM_RunSimulation)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
