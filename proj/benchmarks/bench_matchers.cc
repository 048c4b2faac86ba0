// Matcher throughput on square seeded scenarios. Preference lists and the
// indexed market are built outside the timed loop, as in the CLI timings.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>
#include <memory>

#include "parkshare/baselines.hpp"
#include "parkshare/bench.hpp"
#include "parkshare/hungarian.hpp"
#include "parkshare/matching.hpp"
#include "parkshare/scenario.hpp"

namespace {

using namespace parkshare;

struct Fixture {
  Scenario scenario;
  std::unique_ptr<PreparedScenario> prepared;
};

// Cached per (size, eta permille); benchmark runs each case several times.
const PreparedScenario& prepared(std::uint32_t n, int eta_permille) {
  static std::map<std::pair<std::uint32_t, int>, Fixture> cache;
  auto [it, fresh] = cache.try_emplace({n, eta_permille});
  if (fresh) {
    ScenarioConfig cfg;
    cfg.num_drivers = cfg.num_spots = n;
    cfg.edge_fraction = eta_permille / 1000.0;
    cfg.seed = 7;
    it->second.scenario = generate(cfg);
    it->second.prepared = std::make_unique<PreparedScenario>(it->second.scenario);
  }
  return *it->second.prepared;
}

void BM_Mm(benchmark::State& state) {
  const auto& p = prepared(std::uint32_t(state.range(0)), int(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(mm_match(p.market));
  state.SetComplexityN(state.range(0));
}

void BM_Greedy(benchmark::State& state) {
  const auto& p = prepared(std::uint32_t(state.range(0)), int(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_match(p.market));
  state.SetComplexityN(state.range(0));
}

void BM_Random(benchmark::State& state) {
  const auto& p = prepared(std::uint32_t(state.range(0)), int(state.range(1)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(random_match(p.market, seed++));
  state.SetComplexityN(state.range(0));
}

void BM_Km(benchmark::State& state) {
  const auto& p = prepared(std::uint32_t(state.range(0)), int(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(hungarian_match(p.market));
  state.SetComplexityN(state.range(0));
}

void BM_BuildIndex(benchmark::State& state) {
  const auto& p = prepared(std::uint32_t(state.range(0)), int(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(MarketIndex(p.profile));
  state.SetComplexityN(state.range(0));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int n = 100; n <= 500; n += 100) b->Args({n, 200});
}

BENCHMARK(BM_Mm)->Apply(sizes)->Complexity();
BENCHMARK(BM_Greedy)->Apply(sizes)->Complexity();
BENCHMARK(BM_Random)->Apply(sizes)->Complexity();
BENCHMARK(BM_Km)->Apply(sizes)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildIndex)->Apply(sizes)->Complexity();

// Density at a fixed size.
BENCHMARK(BM_Mm)->Args({250, 50})->Args({250, 200})->Args({250, 500})->Args({250, 1000});

}  // namespace

BENCHMARK_MAIN();
