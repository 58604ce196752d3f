#include <benchmark/benchmark.h>


#include "bangl/prover.hpp"
#include "bangl/readings.hpp"

namespace {

using namespace bangl;

const char* kSequents[] = {
    "!N, N\\S, !N\\N, N\\S -> S,S",
    "N, !(N\\S)/N, N, N, !(N\\S)\\(N\\S) -> S,S",
    "!N, !(!(!N\\S)/N), !(!N\\N)/N, N, !N, !(!N\\S)\\(!N\\S) -> S,S",
};

// Arguments: sequent index, contraction level.
void BM_FirstProofAtLevel(benchmark::State& state) {
  const Sequent s = parse_sequent(kSequents[state.range(0)]);
  SearchConfig cfg;
  cfg.contraction_budget = 4;
  cfg.min_contractions = static_cast<std::size_t>(state.range(1));
  cfg.max_contractions = cfg.min_contractions;
  for (auto _ : state) benchmark::DoNotOptimize(prove(s, cfg));
}
BENCHMARK(BM_FirstProofAtLevel)
    ->Args({0, 1})
    ->Args({1, 1})
    ->Args({2, 2})
    ->Args({2, 3})
    ->Args({2, 4})
    ->Unit(benchmark::kMillisecond);

void BM_EnumerateLevel(benchmark::State& state) {
  const Sequent s = parse_sequent(kSequents[2]);
  SearchConfig cfg;
  cfg.contraction_budget = 4;
  cfg.min_contractions = 2;
  cfg.max_contractions = 2;
  cfg.max_solutions = static_cast<std::size_t>(state.range(0));
  cfg.normal_form = state.range(1) != 0;
  std::size_t found = 0;
  for (auto _ : state) {
    auto ds = prove(s, cfg);
    found = ds.size();
    benchmark::DoNotOptimize(ds);
  }
  state.counters["derivations"] = static_cast<double>(found);
}
BENCHMARK(BM_EnumerateLevel)->Args({100, 1})->Args({100000, 1})->Args({100000, 0})->Unit(benchmark::kMillisecond);

void BM_DistinctReadings(benchmark::State& state) {
  const Sequent s = parse_sequent(kSequents[2]);
  SearchConfig cfg;
  cfg.contraction_budget = 4;
  cfg.min_contractions = 2;
  cfg.max_contractions = 2;
  cfg.max_solutions = 100000;
  const auto ds = prove(s, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(distinct_readings(ds));
  state.counters["derivations"] = static_cast<double>(ds.size());
}
BENCHMARK(BM_DistinctReadings)->Unit(benchmark::kMillisecond);

}  // namespace
