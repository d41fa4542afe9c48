#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cablemap/config.hpp"
#include "cablemap/geo.hpp"
#include "cablemap/ingest.hpp"
#include "cablemap/ip.hpp"

namespace cablemap {

// One geolocation candidate for an IP from one source.
struct GeoObservation {
  IpAddress ip;
  std::string source;
  GeoPoint location;
  std::optional<std::string> city;
  std::optional<std::string> country;    // ISO alpha-2
  std::optional<std::string> continent;
};

// All latency samples gathered for one IP.
struct LatencyEvidence {
  IpAddress ip;
  std::vector<LatencySample> samples;
};

struct ClusterMember {
  std::string source;
  GeoPoint location;
  std::optional<std::string> country;
};

struct GeoCluster {
  GeoPoint centroid;
  std::vector<ClusterMember> members;   // sorted by source
  double cluster_score = 0.0;           // |members| / valid observations
  // Modal member country; ties broken towards the lexicographically
  // smallest code. Absent when no member carries one.
  std::optional<std::string> country;
};

// False when the claimed placement is impossible for the measured latencies
// in at least a sol_margin fraction of the samples. An observation with no
// violating sample is always valid, as is one with no evidence at all.
bool sol_validate(const GeoObservation& observation,
                  const std::vector<LatencySample>& evidence,
                  const PipelineConfig& cfg);

// Density clustering of the surviving observations (haversine metric,
// eps = dbscan_eps_km, minPoints = dbscan_min_points). With minPoints = 1
// every observation joins exactly one cluster and scores sum to 1. Clusters
// come back sorted by descending score, ties towards the cluster holding
// the smallest source name; output is invariant to input order.
std::vector<GeoCluster> cluster_observations(
    std::vector<GeoObservation> valid_observations, const PipelineConfig& cfg);

// Validation plus clustering for one IP.
std::vector<GeoCluster> geolocate_ip(
    const std::vector<GeoObservation>& observations,
    const std::vector<LatencySample>& evidence, const PipelineConfig& cfg);

// Input to the SoL threshold sweep: everything known about one IP plus its
// true position.
struct SweepEntry {
  IpAddress ip;
  GeoPoint true_location;
  std::vector<GeoObservation> observations;
  std::vector<LatencySample> evidence;
};

struct SweepResult {
  double threshold = 0.0;    // sol_margin value; >1 disables SoL entirely
  double accuracy = 0.0;     // IPs whose top cluster is within the match
                             // radius of truth, over all ground-truth IPs
};

// Re-runs validation and clustering at each threshold. Throws InputError on
// an empty ground-truth set.
std::vector<SweepResult> sweep_sol_threshold(
    const std::vector<SweepEntry>& ground_truth,
    const std::vector<double>& thresholds, const PipelineConfig& cfg);

// Loads ground-truth rows {ip, lat, lon} and joins them with observations
// and evidence keyed by IP.
std::vector<SweepEntry> load_sweep_entries(
    const std::string& ground_truth_path,
    const std::vector<GeoObservation>& observations,
    const std::vector<LatencyEvidence>& evidence);

}  // namespace cablemap
