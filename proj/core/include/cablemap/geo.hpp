#pragma once

#include <span>
#include <vector>

namespace cablemap {

// Mean Earth radius. All distance thresholds in the pipeline are expressed
// against this value, so it is fixed here rather than configurable.
inline constexpr double kEarthRadiusKm = 6371.0;

// A validated WGS-ish spherical coordinate. Latitude in [-90, 90] degrees,
// longitude in [-180, 180] degrees, both finite. Construction throws
// std::invalid_argument on violation.
struct GeoPoint {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;

  GeoPoint() = default;
  GeoPoint(double lat_deg, double lon_deg);

  bool operator==(const GeoPoint&) const = default;
};

// Great-circle distance between two points, in km.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

// Maximum one-way geodesic distance consistent with a measured round-trip
// time: (rtt/2) converted to seconds times the propagation speed in fiber.
// Throws std::invalid_argument on non-positive rtt or speed.
double sol_distance_bound_km(double rtt_ms, double fiber_speed_mps);

// Mean position of a point set, computed in 3-D Cartesian space and projected
// back to the sphere. Avoids longitude-wraparound bias near the antimeridian.
// Degenerate sets whose vector sum vanishes fall back to the first point.
// Precondition: points non-empty.
GeoPoint spherical_centroid(std::span<const GeoPoint> points);

}  // namespace cablemap
