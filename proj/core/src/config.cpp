#include "cablemap/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cablemap/digest.hpp"
#include "cablemap/errors.hpp"

namespace cablemap {

namespace {

using nlohmann::json;

void require_fraction(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw ConfigError(std::string(name) + " must be in [0, 1]");
  }
}

}  // namespace

std::string to_string(PactMode mode) {
  return mode == PactMode::kRelative ? "relative" : "absolute";
}

PactMode pact_mode_from_string(const std::string& text) {
  if (text == "relative") return PactMode::kRelative;
  if (text == "absolute") return PactMode::kAbsolute;
  throw ConfigError("unknown pact_mode: " + text);
}

void PipelineConfig::validate() const {
  require_fraction(sol_margin, "sol_margin");
  require_fraction(good_geo_threshold, "good_geo_threshold");
  require_fraction(weight_cluster, "weight_cluster");
  require_fraction(weight_distance, "weight_distance");
  require_fraction(weight_owner, "weight_owner");
  require_fraction(factor_definite, "factor_definite");
  require_fraction(factor_potential, "factor_potential");
  require_fraction(pact, "pact");
  if (std::abs(weight_cluster + weight_distance + weight_owner - 1.0) > 1e-9) {
    throw ConfigError("score weights must sum to 1");
  }
  if (!(fiber_speed_mps > 0.0)) {
    throw ConfigError("fiber_speed_mps must be positive");
  }
  if (!(dbscan_eps_km > 0.0)) {
    throw ConfigError("dbscan_eps_km must be positive");
  }
  if (dbscan_min_points < 1) {
    throw ConfigError("dbscan_min_points must be >= 1");
  }
  if (!(radius_start_km > 0.0) || !(radius_step_km > 0.0)) {
    throw ConfigError("search radii must be positive");
  }
  if (radius_start_km > radius_max_km) {
    throw ConfigError("radius_start_km must not exceed radius_max_km");
  }
  if (country_check_max_rank < 1) {
    throw ConfigError("country_check_max_rank must be >= 1");
  }
  if (!(sweep_match_radius_km > 0.0)) {
    throw ConfigError("sweep_match_radius_km must be positive");
  }
}

PipelineConfig PipelineConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw ConfigError("config must be a JSON object");
  }

  PipelineConfig cfg;
  try {
    auto get_double = [&](const char* key, double& out) {
      if (j.contains(key)) out = j.at(key).get<double>();
    };
    auto get_int = [&](const char* key, int& out) {
      if (j.contains(key)) out = j.at(key).get<int>();
    };
    get_double("sol_margin", cfg.sol_margin);
    get_double("fiber_speed_mps", cfg.fiber_speed_mps);
    get_double("dbscan_eps_km", cfg.dbscan_eps_km);
    get_int("dbscan_min_points", cfg.dbscan_min_points);
    get_double("good_geo_threshold", cfg.good_geo_threshold);
    get_double("radius_start_km", cfg.radius_start_km);
    get_double("radius_step_km", cfg.radius_step_km);
    get_double("radius_max_km", cfg.radius_max_km);
    get_double("weight_cluster", cfg.weight_cluster);
    get_double("weight_distance", cfg.weight_distance);
    get_double("weight_owner", cfg.weight_owner);
    get_double("factor_definite", cfg.factor_definite);
    get_double("factor_potential", cfg.factor_potential);
    get_double("pact", cfg.pact);
    if (j.contains("pact_mode")) {
      cfg.pact_mode = pact_mode_from_string(j.at("pact_mode").get<std::string>());
    }
    if (j.contains("asn_source_priority")) {
      cfg.asn_source_priority =
          j.at("asn_source_priority").get<std::vector<std::string>>();
    }
    get_int("country_check_max_rank", cfg.country_check_max_rank);
    get_double("sweep_match_radius_km", cfg.sweep_match_radius_km);
    if (j.contains("snapshot_year") && !j.at("snapshot_year").is_null()) {
      cfg.snapshot_year = j.at("snapshot_year").get<int>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string PipelineConfig::to_json_text() const {
  json j;
  j["sol_margin"] = sol_margin;
  j["fiber_speed_mps"] = fiber_speed_mps;
  j["dbscan_eps_km"] = dbscan_eps_km;
  j["dbscan_min_points"] = dbscan_min_points;
  j["good_geo_threshold"] = good_geo_threshold;
  j["radius_start_km"] = radius_start_km;
  j["radius_step_km"] = radius_step_km;
  j["radius_max_km"] = radius_max_km;
  j["weight_cluster"] = weight_cluster;
  j["weight_distance"] = weight_distance;
  j["weight_owner"] = weight_owner;
  j["factor_definite"] = factor_definite;
  j["factor_potential"] = factor_potential;
  j["pact"] = pact;
  j["pact_mode"] = to_string(pact_mode);
  j["asn_source_priority"] = asn_source_priority;
  j["country_check_max_rank"] = country_check_max_rank;
  j["sweep_match_radius_km"] = sweep_match_radius_km;
  if (snapshot_year) {
    j["snapshot_year"] = *snapshot_year;
  }
  return j.dump(2) + "\n";
}

std::string PipelineConfig::digest() const { return sha256_hex(to_json_text()); }

}  // namespace cablemap
