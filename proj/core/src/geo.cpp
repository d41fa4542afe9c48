#include "cablemap/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cablemap {

namespace {

double to_radians(double deg) { return deg * (std::numbers::pi / 180.0); }
double to_degrees(double rad) { return rad * (180.0 / std::numbers::pi); }

}  // namespace

GeoPoint::GeoPoint(double lat_deg, double lon_deg)
    : latitude_deg(lat_deg), longitude_deg(lon_deg) {
  if (!std::isfinite(lat_deg) || lat_deg < -90.0 || lat_deg > 90.0) {
    throw std::invalid_argument("latitude out of range");
  }
  if (!std::isfinite(lon_deg) || lon_deg < -180.0 || lon_deg > 180.0) {
    throw std::invalid_argument("longitude out of range");
  }
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = to_radians(a.latitude_deg);
  const double phi2 = to_radians(b.latitude_deg);
  const double dphi = to_radians(b.latitude_deg - a.latitude_deg);
  const double dlam = to_radians(b.longitude_deg - a.longitude_deg);

  const double sp = std::sin(dphi / 2.0);
  const double sl = std::sin(dlam / 2.0);
  const double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(std::min(1.0, h)));
}

double sol_distance_bound_km(double rtt_ms, double fiber_speed_mps) {
  if (!(rtt_ms > 0.0)) {
    throw std::invalid_argument("rtt must be positive");
  }
  if (!(fiber_speed_mps > 0.0)) {
    throw std::invalid_argument("fiber speed must be positive");
  }
  // (rtt_ms/2) ms -> s is /1000, m -> km is /1000 again.
  return rtt_ms * fiber_speed_mps / 2.0e6;
}

GeoPoint spherical_centroid(std::span<const GeoPoint> points) {
  if (points.empty()) {
    throw std::invalid_argument("centroid of empty point set");
  }
  if (points.size() == 1) {
    return points.front();
  }
  double x = 0.0, y = 0.0, z = 0.0;
  for (const GeoPoint& p : points) {
    const double phi = to_radians(p.latitude_deg);
    const double lam = to_radians(p.longitude_deg);
    x += std::cos(phi) * std::cos(lam);
    y += std::cos(phi) * std::sin(lam);
    z += std::sin(phi);
  }
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (norm < 1e-12) {
    return points.front();
  }
  const double lat = to_degrees(std::asin(std::clamp(z / norm, -1.0, 1.0)));
  const double lon = to_degrees(std::atan2(y, x));
  return GeoPoint(std::clamp(lat, -90.0, 90.0), std::clamp(lon, -180.0, 180.0));
}

}  // namespace cablemap
