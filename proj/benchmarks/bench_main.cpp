#include <benchmark/benchmark.h>

#include "evogame/evogame.hpp"

using namespace evogame;

static void BM_StationaryDistribution(benchmark::State& state) {
  TransitionRates rates;
  for (int64_t i = 0; i < state.range(0); ++i) {
    rates.lambda.push_back(0.01 + 0.001 * static_cast<double>(i % 7));
    rates.mu.push_back(0.02 + 0.001 * static_cast<double>(i % 5));
  }
  for (auto _ : state) benchmark::DoNotOptimize(stationary_distribution(rates));
}
BENCHMARK(BM_StationaryDistribution)->Arg(2)->Arg(8)->Arg(64);

static void BM_WattsStrogatz(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(make_watts_strogatz(n, 4, 0.1, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WattsStrogatz)->Arg(1000)->Arg(10000);

static void BM_StrategyRound(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const Graph g = make_square_lattice(side);
  const auto spec = make_game_spec({"PDG", "SDG", "SHG"}, 1.5, 0.5);
  Rng rng(3);
  auto pop = init_population(g, spec, 2.0, 0.6, rng);
  for (auto& a : pop.agents) a.game_state = static_cast<std::uint32_t>(uniform01(rng) * 3.0);
  const UpdateParams params;
  for (auto _ : state) strategy_update_round(pop, g, spec, params, rng);
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(side * side));
}
BENCHMARK(BM_StrategyRound)->Arg(50)->Arg(200);

static void BM_EngineRun(benchmark::State& state) {
  SimConfig c;
  c.network.side = 30;
  c.horizon = static_cast<double>(state.range(0));
  c.schedule = state.range(1) == 0 ? ScheduleKind{FixedInterval{}} : ScheduleKind{ExponentialInterval{}};
  const Graph g = build_network(c.network, c.seed);
  for (auto _ : state) benchmark::DoNotOptimize(run(c, g));
}
BENCHMARK(BM_EngineRun)->Args({500, 0})->Args({500, 1})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
