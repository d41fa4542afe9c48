#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cablemap/geo.hpp"
#include "cablemap/geomap.hpp"
#include "cablemap/model.hpp"

namespace {

using namespace cablemap;

std::vector<GeoPoint> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lat(-80.0, 80.0);
  std::uniform_real_distribution<double> lon(-180.0, 180.0);
  std::vector<GeoPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(lat(rng), lon(rng));
  }
  return out;
}

CableDataset as_dataset(const std::vector<GeoPoint>& points) {
  CableDataset dataset;
  Cable cable;
  cable.id = "bench";
  cable.name = "bench";
  for (std::size_t i = 0; i < points.size(); ++i) {
    LandingPoint lp;
    lp.id = "lp-" + std::to_string(i);
    lp.location = points[i];
    lp.country = "QQ";
    lp.cable_ids = {"bench"};
    cable.landing_point_ids.push_back(lp.id);
    dataset.landing_points.emplace(lp.id, std::move(lp));
  }
  dataset.cables.emplace(cable.id, std::move(cable));
  return dataset;
}

void BM_Haversine(benchmark::State& state) {
  const auto points = random_points(1024, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    const double d =
        haversine_km(points[i % 1024], points[(i + 511) % 1024]);
    benchmark::DoNotOptimize(d);
    ++i;
  }
}
BENCHMARK(BM_Haversine);

void BM_BallTreeBuild(benchmark::State& state) {
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 2);
  const auto dataset = as_dataset(points);
  for (auto _ : state) {
    LandingPointIndex index(dataset);
    benchmark::DoNotOptimize(index.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BallTreeBuild)->Range(128, 4096)->Complexity();

void BM_RadiusQuery(benchmark::State& state) {
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 3);
  const auto dataset = as_dataset(points);
  const LandingPointIndex index(dataset);
  const auto queries = random_points(256, 4);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto hits = index.radius_query(queries[i % 256], 500.0);
    benchmark::DoNotOptimize(hits.size());
    ++i;
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RadiusQuery)->Range(128, 4096)->Complexity();

void BM_RadiusQueryLinear(benchmark::State& state) {
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 3);
  const auto queries = random_points(256, 4);
  std::size_t i = 0;
  for (auto _ : state) {
    const GeoPoint& q = queries[i % 256];
    std::size_t hits = 0;
    for (const GeoPoint& p : points) {
      if (haversine_km(q, p) <= 500.0) {
        ++hits;
      }
    }
    benchmark::DoNotOptimize(hits);
    ++i;
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RadiusQueryLinear)->Range(128, 4096)->Complexity();

}  // namespace
