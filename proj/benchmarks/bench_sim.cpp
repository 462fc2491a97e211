#include <benchmark/benchmark.h>

#include <vector>

#include "fleetsim/energy.hpp"
#include "fleetsim/engine.hpp"
#include "fleetsim/evaluation.hpp"
#include "fleetsim/learning.hpp"
#include "fleetsim/rng.hpp"

using namespace fleetsim;

static void BM_charge_step(benchmark::State& state) {
  UavParams p;
  Substream rng(1, "bench/charge");
  std::vector<double> socs, dts;
  for (int i = 0; i < 1024; ++i) {
    socs.push_back(rng.uniform(0.0, 100.0));
    dts.push_back(rng.uniform(1.0, 20000.0));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(charge_soc(socs[i & 1023], dts[i & 1023], p));
    ++i;
  }
}
BENCHMARK(BM_charge_step);

static void BM_policy_decision(benchmark::State& state) {
  Standardizer s;
  BidModel m = init_model(0.01, 2.0, TaskBounds{}, s);
  m.w = {-0.9, -0.5, 1.4};
  m.b = 0.2;
  Substream rng(2, "bench/policy");
  std::vector<FeatureVector> xs;
  for (int i = 0; i < 1024; ++i)
    xs.push_back({rng.uniform(1000.0, 6000.0), rng.uniform(0.5, 5.0),
                  rng.uniform(0.0, 100.0)});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decision_value(m, standardize(xs[i & 1023], s)));
    ++i;
  }
}
BENCHMARK(BM_policy_decision);

static void BM_sgd_step(benchmark::State& state) {
  Standardizer s;
  Substream rng(3, "bench/sgd");
  std::vector<LabelledSample> xs;
  for (int i = 0; i < 1024; ++i)
    xs.push_back({{rng.uniform(1000.0, 6000.0), rng.uniform(0.5, 5.0),
                   rng.uniform(0.0, 100.0)},
                  static_cast<int>(i & 1)});
  BidModel m = init_model(0.01, 2.0, TaskBounds{}, s);
  std::size_t i = 0;
  for (auto _ : state) {
    sgd_step(m, xs[i & 1023], s);
    benchmark::DoNotOptimize(m.w);
    ++i;
  }
}
BENCHMARK(BM_sgd_step);

static void BM_capability_oracle(benchmark::State& state) {
  UavParams p;
  Substream rng(4, "bench/oracle");
  std::vector<FeatureVector> xs;
  for (int i = 0; i < 1024; ++i)
    xs.push_back({rng.uniform(1000.0, 6000.0), rng.uniform(0.5, 5.0),
                  rng.uniform(0.0, 100.0)});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(capability_oracle(
        xs[i & 1023].distance_m, xs[i & 1023].mass_kg, xs[i & 1023].soc_pct,
        0.8, 0.5, p));
    ++i;
  }
}
BENCHMARK(BM_capability_oracle);

// One day of fleet operation, the unit the 8-week experiments scale from.
static void BM_engine_day(benchmark::State& state) {
  RunConfig cfg;
  cfg.fleet_size = static_cast<int>(state.range(0));
  cfg.horizon_s = 86400.0;
  cfg.mean_interarrival_s = 900.0;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    cfg.seed = seed++;
    benchmark::DoNotOptimize(run(cfg));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_engine_day)->Arg(5)->Arg(25)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
