#pragma once

// Hand-checked reference geography for the classification tests: a small
// country table and a cable dataset with landing points on real coastlines.
// Austria and Hungary stay without landing points on purpose.

#include <string>
#include <vector>

#include "cablemap/classify.hpp"
#include "cablemap/geoloc.hpp"
#include "cablemap/model.hpp"

namespace cablemap::anchors {

inline CountryGeoData country_data() {
  std::map<std::string, CountryRecord> r;
  r["US"] = {"NA", {"CA", "MX"}};
  r["CA"] = {"NA", {"US"}};
  r["MX"] = {"NA", {"US"}};
  r["TW"] = {"AS", {}};
  r["JP"] = {"AS", {}};
  r["DK"] = {"EU", {"DE"}};
  r["DE"] = {"EU", {"DK", "NL", "BE", "LU", "FR", "CH", "AT", "CZ", "PL"}};
  r["NL"] = {"EU", {"DE", "BE"}};
  r["BE"] = {"EU", {"NL", "DE", "LU", "FR"}};
  r["FR"] = {"EU", {"BE", "LU", "DE", "CH", "IT", "ES", "AD", "MC"}};
  r["ES"] = {"EU", {"FR", "PT", "AD", "GI", "MA"}};
  r["PT"] = {"EU", {"ES"}};
  r["AD"] = {"EU", {"FR", "ES"}};
  r["GI"] = {"EU", {"ES"}};
  r["MA"] = {"AF", {"ES", "DZ"}};
  r["DZ"] = {"AF", {"MA", "TN"}};
  r["TN"] = {"AF", {"DZ"}};
  r["AT"] = {"EU", {"DE", "CZ", "SK", "HU", "SI", "IT", "CH", "LI"}};
  r["HU"] = {"EU", {"AT", "SK", "UA", "RO", "RS", "HR", "SI"}};
  r["CH"] = {"EU", {"DE", "FR", "IT", "AT", "LI"}};
  r["IT"] = {"EU", {"FR", "CH", "AT", "SI"}};
  r["SI"] = {"EU", {"AT", "IT", "HU", "HR"}};
  r["HR"] = {"EU", {"SI", "HU", "RS"}};
  r["RS"] = {"EU", {"HU", "HR", "RO"}};
  r["RO"] = {"EU", {"HU", "RS", "UA"}};
  r["SK"] = {"EU", {"AT", "HU", "CZ", "PL", "UA"}};
  r["CZ"] = {"EU", {"DE", "AT", "SK", "PL"}};
  r["PL"] = {"EU", {"DE", "CZ", "SK", "UA"}};
  r["UA"] = {"EU", {"PL", "SK", "HU", "RO"}};
  r["LU"] = {"EU", {"BE", "DE", "FR"}};
  r["LI"] = {"EU", {"CH", "AT"}};
  r["MC"] = {"EU", {"FR"}};
  r["GB"] = {"EU", {"IE"}};
  r["IE"] = {"EU", {"GB"}};
  return CountryGeoData(std::move(r));
}

inline CableDataset anchor_dataset() {
  struct Lp {
    const char* id;
    double lat, lon;
    const char* country;
  };
  const std::vector<Lp> lps = {
      {"lp-hermosa", 33.862, -118.399, "US"},
      {"lp-kahe", 21.354, -158.130, "US"},
      {"lp-toucheng", 24.850, 121.820, "TW"},
      {"lp-katwijk", 52.200, 4.390, "NL"},
      {"lp-norden", 53.590, 7.200, "DE"},
      {"lp-blaabjerg", 55.690, 8.110, "DK"},
      {"lp-bilbao", 43.260, -3.030, "ES"},
  };
  struct Cb {
    const char* id;
    const char* a;
    const char* b;
  };
  const std::vector<Cb> cbs = {
      {"cable-ca-hi", "lp-hermosa", "lp-kahe"},
      {"cable-tw-us", "lp-toucheng", "lp-hermosa"},
      {"cable-nl-de", "lp-katwijk", "lp-norden"},
      {"cable-dk-es", "lp-blaabjerg", "lp-bilbao"},
  };

  CableDataset dataset;
  for (const Cb& c : cbs) {
    Cable cable;
    cable.id = c.id;
    cable.name = c.id;
    cable.landing_point_ids = {c.a, c.b};
    dataset.cables.emplace(cable.id, std::move(cable));
  }
  for (const Lp& lp : lps) {
    LandingPoint out;
    out.id = lp.id;
    out.location = GeoPoint(lp.lat, lp.lon);
    out.country = lp.country;
    for (const Cb& c : cbs) {
      if (out.id == c.a || out.id == c.b) {
        out.cable_ids.insert(c.id);
      }
    }
    dataset.landing_points.emplace(out.id, std::move(out));
  }
  return dataset;
}

// Single full-confidence cluster at a location.
inline std::vector<GeoCluster> cluster_at(double lat, double lon,
                                          const std::string& country,
                                          double score = 1.0) {
  GeoCluster c;
  c.centroid = GeoPoint(lat, lon);
  c.members = {{"src", c.centroid, country}};
  c.cluster_score = score;
  c.country = country;
  return {c};
}

}  // namespace cablemap::anchors
