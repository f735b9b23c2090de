#include <benchmark/benchmark.h>

#include "ecplan/logic/evaluator.hpp"
#include "ecplan/logic/parser.hpp"

using namespace ecplan;

static void BM_EvaluateRocksampleTheory(benchmark::State& state) {
  auto program = logic::load_program(ECPLAN_ASSET_DIR "/theories/prelude.lp");
  program.merge(logic::load_program(ECPLAN_ASSET_DIR "/theories/rocksample_theory.lp"));
  const logic::Evaluator evaluator(program);
  logic::AtomSet facts;
  for (int r = 0; r < 8; ++r) {
    const auto i = std::to_string(r), d = std::to_string(r - 3);
    facts.merge(logic::parse_ground_atoms("delta_x(" + i + "," + d + ") delta_y(" + i + ",1) dist(" + i + ",4) guess(" +
                                          i + ",80)"));
  }
  for (auto _ : state) benchmark::DoNotOptimize(evaluator.run(facts, 1));
}
BENCHMARK(BM_EvaluateRocksampleTheory);

static void BM_ParseTheory(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(logic::load_program(ECPLAN_ASSET_DIR "/theories/pocman_transitions.lp"));
}
BENCHMARK(BM_ParseTheory);
