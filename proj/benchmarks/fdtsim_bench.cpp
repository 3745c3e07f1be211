#include <benchmark/benchmark.h>

#include "fdtsim/adapters.hpp"
#include "fdtsim/evolve.hpp"
#include "fdtsim/experiment.hpp"
#include "fdtsim/graphs.hpp"
#include "fdtsim/pd.hpp"
#include "fdtsim/scenarios.hpp"

namespace {

using namespace fdtsim;

void BM_DecideNewcomb(benchmark::State& state) {
  const auto problem = scenarios::build_scenario(
      {scenarios::ScenarioId::kNewcomb, {}, graphs::Theory::kFdt});
  for (auto _ : state) benchmark::DoNotOptimize(graphs::decide(problem, graphs::Theory::kFdt));
}
BENCHMARK(BM_DecideNewcomb);

void BM_InferSmoking(benchmark::State& state) {
  const auto problem = scenarios::build_scenario({scenarios::ScenarioId::kSmokingCdt, {}, {}});
  const graphs::Assignment evidence{{"Cancer", "cancer"}};
  for (auto _ : state) benchmark::DoNotOptimize(graphs::infer(problem.model, evidence, "Gene"));
}
BENCHMARK(BM_InferSmoking);

void BM_SolvePdPolicy(benchmark::State& state) {
  const pd::PdConfig cfg;
  const pd::Shares shares{0.2, 0.3, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(pd::solve_fdt_pd_policy(cfg, shares));
}
BENCHMARK(BM_SolvePdPolicy);

void BM_Generation(benchmark::State& state, GameId game) {
  auto cfg = default_config(game);
  cfg.evolve.population = static_cast<std::size_t>(state.range(0));
  auto adapter = make_adapter(cfg);
  auto population = evolve::Population::from_shares(cfg.evolve.population, cfg.evolve.initial_shares);
  std::uint64_t generation = 0;
  for (auto _ : state) {
    evolve::run_generation(population, *adapter, cfg.evolve, generation);
    evolve::repopulate(population, cfg.evolve, generation);
    ++generation;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.evolve.population *
                                                                         cfg.evolve.rounds));
}
BENCHMARK_CAPTURE(BM_Generation, pd, GameId::kPd)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Generation, newcomb, GameId::kNewcomb)->Arg(3000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Generation, beauty, GameId::kBeauty)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
