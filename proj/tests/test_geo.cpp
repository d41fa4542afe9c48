#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "cablemap/geo.hpp"
#include "oracles.hpp"

using namespace cablemap;

TEST_CASE("haversine identity and antipodal") {
  CHECK(haversine_km(GeoPoint(0, 0), GeoPoint(0, 0)) == 0.0);
  const double antipodal = haversine_km(GeoPoint(0, 0), GeoPoint(0, 180));
  CHECK(std::abs(antipodal - std::numbers::pi * kEarthRadiusKm) < 0.1);
  CHECK(std::abs(antipodal - 20015.1) < 0.1);
}

TEST_CASE("haversine agrees with a law-of-cosines oracle on a city pair") {
  // Paris - New York.
  const GeoPoint paris(48.8566, 2.3522);
  const GeoPoint nyc(40.7128, -74.0060);
  const double impl = haversine_km(paris, nyc);
  const double ref = oracle::slc_distance_km(paris, nyc);
  CHECK(std::abs(impl - ref) / ref < 0.005);
  CHECK(impl > 5000.0);
  CHECK(impl < 7000.0);
}

TEST_CASE("haversine is a metric up to floating tolerance") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> lat(-90.0, 90.0);
  std::uniform_real_distribution<double> lon(-180.0, 180.0);
  for (int i = 0; i < 500; ++i) {
    const GeoPoint a(lat(rng), lon(rng));
    const GeoPoint b(lat(rng), lon(rng));
    const GeoPoint c(lat(rng), lon(rng));
    const double ab = haversine_km(a, b);
    const double ba = haversine_km(b, a);
    const double ac = haversine_km(a, c);
    const double cb = haversine_km(c, b);
    CHECK(haversine_km(a, a) == 0.0);
    CHECK(std::abs(ab - ba) <= 1e-6 * std::max(1.0, ab));
    CHECK(ab <= ac + cb + 1e-6 * std::max(1.0, ab));
  }
}

TEST_CASE("geopoint construction validates ranges") {
  CHECK_THROWS_AS(GeoPoint(91.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GeoPoint(-90.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GeoPoint(0.0, 181.0), std::invalid_argument);
  CHECK_THROWS_AS(GeoPoint(std::nan(""), 0.0), std::invalid_argument);
  CHECK_NOTHROW(GeoPoint(-90.0, 180.0));
}

TEST_CASE("sol distance bound") {
  CHECK(sol_distance_bound_km(10.0, 2.0e8) == 1000.0);
  CHECK(sol_distance_bound_km(0.1, 2.0e8) == 10.0);
  CHECK(sol_distance_bound_km(200.0, 2.0e8) == 20000.0);
  CHECK_THROWS_AS(sol_distance_bound_km(0.0, 2.0e8), std::invalid_argument);
  CHECK_THROWS_AS(sol_distance_bound_km(-1.0, 2.0e8), std::invalid_argument);
}

TEST_CASE("spherical centroid handles the antimeridian") {
  const GeoPoint a(10.0, 179.5);
  const GeoPoint b(10.0, -179.5);
  const std::vector<GeoPoint> points{a, b};
  const GeoPoint centroid = spherical_centroid(points);
  CHECK(std::abs(centroid.latitude_deg - 10.0) < 0.01);
  // Mean must sit on the 180 meridian, not at longitude 0.
  CHECK(std::abs(std::abs(centroid.longitude_deg) - 180.0) < 0.01);
}
