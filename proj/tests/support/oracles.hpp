#pragma once

// Independent reference implementations used only to check the production
// code. Everything here deliberately takes the dumbest correct route:
// different formulas, exhaustive scans, no shared helpers.

#include <cstddef>
#include <string>
#include <vector>

#include "cablemap/geo.hpp"
#include "cablemap/model.hpp"

namespace cablemap::oracle {

// Great-circle distance via the spherical law of cosines (the production
// path uses the haversine form).
double slc_distance_km(const GeoPoint& a, const GeoPoint& b);

// Connected components of the eps-neighborhood graph by union-find, as sets
// of point indices sorted ascending; components sorted by smallest member.
std::vector<std::vector<std::size_t>> epsilon_components(
    const std::vector<GeoPoint>& points, double eps_km);

// Linear-scan radius query: indices of points within radius, unsorted.
std::vector<std::size_t> linear_radius_scan(const std::vector<GeoPoint>& points,
                                            const GeoPoint& center,
                                            double radius_km);

// Prediction score, written out the long way with distributed weights.
double prediction_score_reference(double c1, double c2, double d1, double d2, int o1,
                     int o2, double f);

// Indices retained by relative pruning, by exhaustive comparison.
std::vector<std::size_t> prune_reference(const std::vector<double>& scores,
                                         double pact);

}  // namespace cablemap::oracle
