#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cablemap/aggregate.hpp"

namespace {

using namespace cablemap;

void BM_PredictionScore(benchmark::State& state) {
  const PipelineConfig cfg;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  std::vector<std::array<double, 4>> inputs(512);
  for (auto& row : inputs) {
    row = {unit(rng), unit(rng), unit(rng), unit(rng)};
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& row = inputs[i % inputs.size()];
    benchmark::DoNotOptimize(
        score(row[0], row[1], row[2], row[3], 1, 0, 0.5, cfg));
    ++i;
  }
}
BENCHMARK(BM_PredictionScore);

void BM_PactPrune(benchmark::State& state) {
  const PipelineConfig cfg;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<CableCandidate> candidates(
      static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    candidates[i].cable_id = "c" + std::to_string(i);
    candidates[i].prediction_score = unit(rng);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) {
              return a.prediction_score > b.prediction_score;
            });
  for (auto _ : state) {
    auto pruned = pact_prune(candidates, cfg);
    benchmark::DoNotOptimize(pruned.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PactPrune)->Range(4, 256)->Complexity();

}  // namespace
