#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cablemap/geo.hpp"
#include "cablemap/ip.hpp"

namespace cablemap {

// Terrestrial termination point of one or more submarine cables.
struct LandingPoint {
  std::string id;
  GeoPoint location;
  std::string country;             // ISO-3166 alpha-2
  std::set<std::string> cable_ids;  // cables terminating here, non-empty
};

struct Cable {
  std::string id;
  std::string name;
  std::vector<std::string> landing_point_ids;  // ordered, >= 2
  std::vector<std::string> owner_names;        // possibly empty
  std::optional<int> rfs_year;
};

// The physical-layer dataset the links map onto. Landing points carry back
// references to their cables; cables with unknown landing points or fewer
// than two of them are rejected at load time.
struct CableDataset {
  std::map<std::string, Cable> cables;
  std::map<std::string, LandingPoint> landing_points;

  // Countries with at least one landing point; a country absent from this
  // set is land-locked from the submarine-cable perspective.
  std::set<std::string> coastal_countries() const {
    std::set<std::string> out;
    for (const auto& [id, lp] : landing_points) out.insert(lp.country);
    return out;
  }
};

struct TracerouteHop {
  int index = 0;
  std::optional<IpAddress> ip;  // absent for a starred (non-responding) hop
  std::vector<double> rtts_ms;  // positive values only
};

struct TracerouteRecord {
  std::string id;
  GeoPoint probe_location;
  std::vector<TracerouteHop> hops;  // hop indices strictly increasing
};

inline bool valid_country_code(const std::string& cc) {
  return cc.size() == 2 && cc[0] >= 'A' && cc[0] <= 'Z' && cc[1] >= 'A' &&
         cc[1] <= 'Z';
}

}  // namespace cablemap
