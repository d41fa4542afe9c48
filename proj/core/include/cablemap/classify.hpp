#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cablemap/config.hpp"
#include "cablemap/geoloc.hpp"
#include "cablemap/geomap.hpp"
#include "cablemap/model.hpp"

namespace cablemap {

enum class GeoConfidence { kBoth, kOne, kNone };          // B / O / N
enum class SubmarineClass { kSubmarine, kUnconfirmed, kTerrestrial };  // S / U / T

struct CountryRecord {
  std::string continent;               // AF AS EU NA OC SA AN
  std::set<std::string> land_neighbors;
};

// Country -> continent and land-neighbor table. The neighbor relation is
// symmetrized at load time.
class CountryGeoData {
 public:
  CountryGeoData() = default;
  explicit CountryGeoData(std::map<std::string, CountryRecord> records);

  const CountryRecord* find(const std::string& country) const;

  // True when the two countries border each other or share a common land
  // neighbor (one-level search). A country counts as connected to itself.
  bool neighbor_connected(const std::string& a, const std::string& b) const;

  // Continents are land-connected only within themselves plus the EU-AS and
  // AS-AF pairs.
  static bool continents_connected(const std::string& a, const std::string& b);

  std::size_t size() const { return records_.size(); }

 private:
  std::map<std::string, CountryRecord> records_;
};

struct BonusLabel {
  GeoConfidence geo_confidence = GeoConfidence::kNone;
  SubmarineClass submarine_class = SubmarineClass::kUnconfirmed;
  double geo_cluster_score = 0.0;  // sum of the endpoint scores used, in [0,2]
};

// Geolocation confidence: number of endpoints whose best cluster score
// reaches good_geo_threshold. Both -> B, one -> O, none -> N.
GeoConfidence geo_confidence(const std::vector<GeoCluster>& clusters_a,
                             const std::vector<GeoCluster>& clusters_b,
                             const PipelineConfig& cfg);

// Submarine potential across all cluster combinations: disconnected
// continents or no neighbor path make a combination definitely submarine;
// combinations whose countries are both cable-landlocked, or whose endpoint
// separation is smaller than either endpoint's distance to the nearest
// landing point, are terrestrial; the remainder are unconfirmed. The link
// takes the most submarine-leaning combination verdict (S over U over T).
// nullopt when no combination has resolvable countries.
std::optional<SubmarineClass> submarine_class(
    const std::vector<GeoCluster>& clusters_a,
    const std::vector<GeoCluster>& clusters_b, const CountryGeoData& countries,
    const CableDataset& dataset, const LandingPointIndex& landing_index);

// Full label; nullopt marks the link Unclassified (an endpoint without
// clusters, or no classifiable combination).
std::optional<BonusLabel> classify_link(
    const std::vector<GeoCluster>& clusters_a,
    const std::vector<GeoCluster>& clusters_b, const CountryGeoData& countries,
    const CableDataset& dataset, const LandingPointIndex& landing_index,
    const PipelineConfig& cfg);

std::string to_string(GeoConfidence c);
std::string to_string(SubmarineClass c);
GeoConfidence geo_confidence_from_string(const std::string& s);
SubmarineClass submarine_class_from_string(const std::string& s);

// Composite display label per the seven-category table; T collapses B/O/N.
std::string composite_label(const BonusLabel& label);

}  // namespace cablemap
