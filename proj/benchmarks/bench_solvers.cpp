#include <benchmark/benchmark.h>

#include "ecplan/domains/pocman.hpp"
#include "ecplan/domains/rocksample.hpp"
#include "ecplan/solvers/despot.hpp"
#include "ecplan/solvers/pomcp.hpp"

using namespace ecplan;

static void BM_PomcpRocksample(benchmark::State& state) {
  const Rocksample model(12, 8, 1);
  Rng rng(1);
  const auto belief = sample_initial_belief(model, 1024, rng);
  PomcpConfig config;
  config.simulations = static_cast<int>(state.range(0));
  config.exploration = 5;
  for (auto _ : state) {
    Pomcp<Rocksample> pomcp(model, config);
    benchmark::DoNotOptimize(pomcp.search(belief, rng));
  }
}
BENCHMARK(BM_PomcpRocksample)->Arg(256)->Arg(1024);

static void BM_DespotPocman(benchmark::State& state) {
  const Pocman model(Maze::load(ECPLAN_ASSET_DIR "/mazes/maze_10x10.txt"), {});
  Rng rng(1);
  const auto belief = sample_initial_belief(model, 500, rng);
  DespotConfig config;
  config.scenarios = static_cast<int>(state.range(0));
  config.trials = 20;
  config.max_depth = 30;
  for (auto _ : state) {
    Despot<Pocman> despot(model, config);
    benchmark::DoNotOptimize(despot.search(belief, rng));
  }
}
BENCHMARK(BM_DespotPocman)->Arg(50)->Arg(100);

static void BM_BeliefUpdateRocksample(benchmark::State& state) {
  const Rocksample model(12, 8, 1);
  Rng rng(1);
  const auto belief = sample_initial_belief(model, 1024, rng);
  for (auto _ : state) benchmark::DoNotOptimize(belief_update(belief, Rocksample::kFirstCheck, Rocksample::kGood, model, rng));
}
BENCHMARK(BM_BeliefUpdateRocksample);
