#include <benchmark/benchmark.h>

#include "ecplan/domains/pocman.hpp"
#include "ecplan/domains/rocksample.hpp"
#include "ecplan/logic/parser.hpp"
#include "ecplan/macro/macro.hpp"

using namespace ecplan;

namespace {

logic::Program asset(const char* name) { return logic::load_program(std::string(ECPLAN_ASSET_DIR "/theories/") + name); }

MacroGenerator rocksample_gamma(const Rocksample& model, int max_length) {
  std::vector<std::optional<logic::GroundAtom>> atoms(static_cast<std::size_t>(model.action_count()));
  for (int d = 0; d < 4; ++d) atoms[static_cast<std::size_t>(d)] = logic::GroundAtom(direction_name(d));
  return MacroGenerator(asset("prelude.lp"), Hypothesis(asset("rocksample_theory.lp")),
                        TransitionAxioms(asset("rocksample_transitions.lp")), {}, atoms, max_length);
}

}  // namespace

static void BM_FeaturizeRocksample(benchmark::State& state) {
  const Rocksample model(12, 8, 1);
  Rng rng(1);
  const auto belief = sample_initial_belief(model, 1024, rng);
  for (auto _ : state) benchmark::DoNotOptimize(featurize_rocksample(belief, model));
}
BENCHMARK(BM_FeaturizeRocksample);

static void BM_GammaRocksample(benchmark::State& state) {
  const Rocksample model(12, 8, 1);
  Rng rng(1);
  const auto belief = sample_initial_belief(model, 1024, rng);
  const auto gamma = rocksample_gamma(model, static_cast<int>(state.range(0)));
  const auto features = featurize_rocksample(belief, model);
  for (auto _ : state) benchmark::DoNotOptimize(gamma.compute(features));
}
BENCHMARK(BM_GammaRocksample)->Arg(1)->Arg(10);

static void BM_GammaPocman(benchmark::State& state) {
  const Maze maze = Maze::load(ECPLAN_ASSET_DIR "/mazes/maze_10x10.txt");
  const Pocman model(maze, {});
  Rng rng(1);
  const auto belief = sample_initial_belief(model, 1024, rng);
  std::vector<std::optional<logic::GroundAtom>> atoms;
  for (int d = 0; d < 4; ++d) atoms.emplace_back(pocman_action_atom(d));
  const MacroGenerator gamma(asset("prelude.lp"), Hypothesis(asset("pocman_theory.lp")),
                             TransitionAxioms(asset("pocman_transitions.lp")), pocman_background(maze), atoms,
                             static_cast<int>(state.range(0)));
  const auto features = featurize_pocman(belief, maze, model.spawn(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(gamma.compute(features));
}
BENCHMARK(BM_GammaPocman)->Arg(1)->Arg(10);
