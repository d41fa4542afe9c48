#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cablemap/geoloc.hpp"

namespace {

using namespace cablemap;

std::vector<GeoObservation> observations(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> spread(-0.5, 0.5);
  std::vector<GeoObservation> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    GeoObservation o;
    o.ip = *IpAddress::parse("8.8.8.8");
    o.source = "src-" + std::to_string(i);
    o.location = GeoPoint(40.0 + spread(rng), -70.0 + spread(rng));
    out.push_back(std::move(o));
  }
  return out;
}

void BM_ClusterObservations(benchmark::State& state) {
  const PipelineConfig cfg;
  const auto obs = observations(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    const auto clusters = cluster_observations(obs, cfg);
    benchmark::DoNotOptimize(clusters.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClusterObservations)->Range(8, 256)->Complexity();

void BM_SolValidate(benchmark::State& state) {
  const PipelineConfig cfg;
  GeoObservation o;
  o.ip = *IpAddress::parse("8.8.8.8");
  o.source = "s";
  o.location = GeoPoint(40.0, -70.0);
  std::vector<LatencySample> evidence(
      static_cast<std::size_t>(state.range(0)), {GeoPoint(41.0, -70.0), 8.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(sol_validate(o, evidence, cfg));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolValidate)->Range(16, 1024)->Complexity();

}  // namespace
