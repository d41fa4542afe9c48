#include "cablemap/classify.hpp"

#include <algorithm>

#include "cablemap/errors.hpp"

namespace cablemap {

CountryGeoData::CountryGeoData(std::map<std::string, CountryRecord> records)
    : records_(std::move(records)) {
  // Symmetrize: a neighbor listing implies the reverse edge.
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [country, rec] : records_) {
    for (const std::string& n : rec.land_neighbors) {
      edges.emplace_back(n, country);
    }
  }
  for (auto& [country, neighbor] : edges) {
    auto it = records_.find(country);
    if (it != records_.end()) {
      it->second.land_neighbors.insert(neighbor);
    }
  }
}

const CountryRecord* CountryGeoData::find(const std::string& country) const {
  const auto it = records_.find(country);
  return it == records_.end() ? nullptr : &it->second;
}

bool CountryGeoData::neighbor_connected(const std::string& a,
                                        const std::string& b) const {
  if (a == b) {
    return true;
  }
  const CountryRecord* ra = find(a);
  const CountryRecord* rb = find(b);
  if (ra == nullptr || rb == nullptr) {
    return false;
  }
  if (ra->land_neighbors.contains(b)) {
    return true;
  }
  // One-level search: a shared land neighbor connects them.
  for (const std::string& n : ra->land_neighbors) {
    if (rb->land_neighbors.contains(n)) {
      return true;
    }
  }
  return false;
}

bool CountryGeoData::continents_connected(const std::string& a,
                                          const std::string& b) {
  if (a == b) {
    return true;
  }
  const auto pair_is = [&](const char* x, const char* y) {
    return (a == x && b == y) || (a == y && b == x);
  };
  return pair_is("EU", "AS") || pair_is("AS", "AF");
}

GeoConfidence geo_confidence(const std::vector<GeoCluster>& clusters_a,
                             const std::vector<GeoCluster>& clusters_b,
                             const PipelineConfig& cfg) {
  auto good = [&](const std::vector<GeoCluster>& clusters) {
    for (const GeoCluster& c : clusters) {
      if (c.cluster_score >= cfg.good_geo_threshold) {
        return true;
      }
    }
    return false;
  };
  const int count = (good(clusters_a) ? 1 : 0) + (good(clusters_b) ? 1 : 0);
  if (count == 2) return GeoConfidence::kBoth;
  if (count == 1) return GeoConfidence::kOne;
  return GeoConfidence::kNone;
}

namespace {

// Verdict for a single cluster combination, or nullopt when a country is
// unknown to the reference table.
std::optional<SubmarineClass> combination_class(
    const GeoCluster& ca, const GeoCluster& cb, const CountryGeoData& countries,
    const std::set<std::string>& coastal, const LandingPointIndex& index) {
  if (!ca.country || !cb.country) {
    return std::nullopt;
  }
  const CountryRecord* ra = countries.find(*ca.country);
  const CountryRecord* rb = countries.find(*cb.country);
  if (ra == nullptr || rb == nullptr) {
    return std::nullopt;
  }

  if (!CountryGeoData::continents_connected(ra->continent, rb->continent)) {
    return SubmarineClass::kSubmarine;
  }
  if (!countries.neighbor_connected(*ca.country, *cb.country)) {
    return SubmarineClass::kSubmarine;
  }

  const bool landlocked_a = !coastal.contains(*ca.country);
  const bool landlocked_b = !coastal.contains(*cb.country);
  if (landlocked_a && landlocked_b) {
    return SubmarineClass::kTerrestrial;
  }

  // Landing-point proximity: a link much shorter than the detour to the
  // coast has no business on a submarine cable.
  const auto near_a = index.nearest(ca.centroid);
  const auto near_b = index.nearest(cb.centroid);
  if (near_a && near_b) {
    const double span = haversine_km(ca.centroid, cb.centroid);
    const double to_coast = std::min(near_a->distance_km, near_b->distance_km);
    if (span < to_coast) {
      return SubmarineClass::kTerrestrial;
    }
  }
  return SubmarineClass::kUnconfirmed;
}

}  // namespace

std::optional<SubmarineClass> submarine_class(
    const std::vector<GeoCluster>& clusters_a,
    const std::vector<GeoCluster>& clusters_b, const CountryGeoData& countries,
    const CableDataset& dataset, const LandingPointIndex& landing_index) {
  const std::set<std::string> coastal = dataset.coastal_countries();
  bool any = false;
  bool any_submarine = false;
  bool any_unconfirmed = false;
  for (const GeoCluster& ca : clusters_a) {
    for (const GeoCluster& cb : clusters_b) {
      const auto verdict =
          combination_class(ca, cb, countries, coastal, landing_index);
      if (!verdict) {
        continue;
      }
      any = true;
      if (*verdict == SubmarineClass::kSubmarine) {
        any_submarine = true;
      } else if (*verdict == SubmarineClass::kUnconfirmed) {
        any_unconfirmed = true;
      }
    }
  }
  if (!any) {
    return std::nullopt;
  }
  if (any_submarine) return SubmarineClass::kSubmarine;
  if (any_unconfirmed) return SubmarineClass::kUnconfirmed;
  return SubmarineClass::kTerrestrial;
}

std::optional<BonusLabel> classify_link(
    const std::vector<GeoCluster>& clusters_a,
    const std::vector<GeoCluster>& clusters_b, const CountryGeoData& countries,
    const CableDataset& dataset, const LandingPointIndex& landing_index,
    const PipelineConfig& cfg) {
  if (clusters_a.empty() || clusters_b.empty()) {
    return std::nullopt;
  }
  const auto sub =
      submarine_class(clusters_a, clusters_b, countries, dataset, landing_index);
  if (!sub) {
    return std::nullopt;
  }
  BonusLabel label;
  label.submarine_class = *sub;
  label.geo_confidence = geo_confidence(clusters_a, clusters_b, cfg);
  auto best_score = [](const std::vector<GeoCluster>& clusters) {
    double best = 0.0;
    for (const GeoCluster& c : clusters) {
      best = std::max(best, c.cluster_score);
    }
    return best;
  };
  label.geo_cluster_score = best_score(clusters_a) + best_score(clusters_b);
  return label;
}

std::string to_string(GeoConfidence c) {
  switch (c) {
    case GeoConfidence::kBoth: return "B";
    case GeoConfidence::kOne: return "O";
    case GeoConfidence::kNone: return "N";
  }
  return "?";
}

std::string to_string(SubmarineClass c) {
  switch (c) {
    case SubmarineClass::kSubmarine: return "S";
    case SubmarineClass::kUnconfirmed: return "U";
    case SubmarineClass::kTerrestrial: return "T";
  }
  return "?";
}

GeoConfidence geo_confidence_from_string(const std::string& s) {
  if (s == "B") return GeoConfidence::kBoth;
  if (s == "O") return GeoConfidence::kOne;
  if (s == "N") return GeoConfidence::kNone;
  throw InputError("unknown geo confidence: " + s);
}

SubmarineClass submarine_class_from_string(const std::string& s) {
  if (s == "S") return SubmarineClass::kSubmarine;
  if (s == "U") return SubmarineClass::kUnconfirmed;
  if (s == "T") return SubmarineClass::kTerrestrial;
  throw InputError("unknown submarine class: " + s);
}

std::string composite_label(const BonusLabel& label) {
  if (label.submarine_class == SubmarineClass::kTerrestrial) {
    return "T";
  }
  return to_string(label.submarine_class) + "," + to_string(label.geo_confidence);
}

}  // namespace cablemap
