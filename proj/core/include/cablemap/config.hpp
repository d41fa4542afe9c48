#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cablemap {

enum class PactMode {
  kRelative,  // retain candidates with S >= max(S) - pact
  kAbsolute,  // retain candidates with S >= pact
};

// Every numeric constant of the pipeline in one auditable record. Defaults
// are the production values; a run is fully reproducible from this file plus
// the input datasets.
struct PipelineConfig {
  // Geolocation validation and clustering.
  double sol_margin = 0.05;          // tolerated fraction of SoL-violating samples
  double fiber_speed_mps = 2.0e8;    // propagation speed of light in fiber
  double dbscan_eps_km = 20.0;
  int dbscan_min_points = 1;
  double good_geo_threshold = 0.6;   // cluster score marking reliable geolocation

  // Recursive landing-point search.
  double radius_start_km = 500.0;
  double radius_step_km = 50.0;
  double radius_max_km = 1000.0;

  // Prediction-score weights and category factors.
  double weight_cluster = 0.5;
  double weight_distance = 0.4;
  double weight_owner = 0.1;
  double factor_definite = 0.5;
  double factor_potential = 0.25;

  // Parallel-cable pruning.
  double pact = 0.05;
  PactMode pact_mode = PactMode::kRelative;

  // IP-to-ASN vote tie-break, most trusted source first. Sources absent from
  // the list rank after it, alphabetically.
  std::vector<std::string> asn_source_priority = {"caida", "rpki", "radb",
                                                  "cymru"};

  // Owner primaries with rank <= this are cross-checked against the owner's
  // landing countries before acceptance.
  int country_check_max_rank = 100;

  // City-scale match radius used by the SoL threshold sweep.
  double sweep_match_radius_km = 40.0;

  // When set, cables with a Ready-For-Service year at or after this are
  // excluded from the dataset.
  std::optional<int> snapshot_year;

  // Throws ConfigError on violated invariants.
  void validate() const;

  // JSON round trip. Serialization is canonical: re-parsing a serialized
  // config and serializing again is byte-identical.
  static PipelineConfig from_json_text(const std::string& text);
  static PipelineConfig load(const std::string& path);
  std::string to_json_text() const;

  // SHA-256 of the canonical serialization; stamped into run manifests.
  std::string digest() const;
};

std::string to_string(PactMode mode);
PactMode pact_mode_from_string(const std::string& text);

}  // namespace cablemap
