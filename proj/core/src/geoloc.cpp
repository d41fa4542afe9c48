#include "cablemap/geoloc.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <unordered_map>

#include <json.hpp>

#include "cablemap/errors.hpp"

namespace cablemap {

namespace {

// Plain DBSCAN over a haversine distance matrix. Label -1 marks noise,
// which can only occur with min_points > 1.
std::vector<int> dbscan_labels(const std::vector<GeoPoint>& points,
                               double eps_km, int min_points) {
  const int n = static_cast<int>(points.size());
  std::vector<std::vector<int>> neighbors(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (haversine_km(points[i], points[j]) <= eps_km) {
        neighbors[i].push_back(j);
      }
    }
  }

  constexpr int kUnvisited = -2;
  constexpr int kNoise = -1;
  std::vector<int> label(n, kUnvisited);
  int next_cluster = 0;
  for (int i = 0; i < n; ++i) {
    if (label[i] != kUnvisited) {
      continue;
    }
    if (static_cast<int>(neighbors[i].size()) < min_points) {
      label[i] = kNoise;
      continue;
    }
    const int cluster = next_cluster++;
    label[i] = cluster;
    std::deque<int> seeds(neighbors[i].begin(), neighbors[i].end());
    while (!seeds.empty()) {
      const int q = seeds.front();
      seeds.pop_front();
      if (label[q] == kNoise) {
        label[q] = cluster;  // border point claimed by the cluster
      }
      if (label[q] != kUnvisited) {
        continue;
      }
      label[q] = cluster;
      if (static_cast<int>(neighbors[q].size()) >= min_points) {
        seeds.insert(seeds.end(), neighbors[q].begin(), neighbors[q].end());
      }
    }
  }
  return label;
}

std::optional<std::string> modal_country(
    const std::vector<ClusterMember>& members) {
  std::map<std::string, int> counts;
  for (const ClusterMember& m : members) {
    if (m.country && valid_country_code(*m.country)) {
      ++counts[*m.country];
    }
  }
  if (counts.empty()) {
    return std::nullopt;
  }
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) {
      best = it;  // ties keep the lexicographically smallest code
    }
  }
  return best->first;
}

}  // namespace

bool sol_validate(const GeoObservation& observation,
                  const std::vector<LatencySample>& evidence,
                  const PipelineConfig& cfg) {
  if (evidence.empty()) {
    return true;
  }
  std::size_t violations = 0;
  for (const LatencySample& sample : evidence) {
    const double bound =
        sol_distance_bound_km(sample.min_rtt_ms, cfg.fiber_speed_mps);
    if (haversine_km(sample.probe_location, observation.location) > bound) {
      ++violations;
    }
  }
  if (violations == 0) {
    return true;
  }
  const double fraction =
      static_cast<double>(violations) / static_cast<double>(evidence.size());
  return fraction < cfg.sol_margin;
}

std::vector<GeoCluster> cluster_observations(
    std::vector<GeoObservation> valid_observations, const PipelineConfig& cfg) {
  if (valid_observations.empty()) {
    return {};
  }
  // Canonical input order makes the whole function order-invariant.
  std::sort(valid_observations.begin(), valid_observations.end(),
            [](const GeoObservation& a, const GeoObservation& b) {
              return a.source < b.source;
            });

  std::vector<GeoPoint> points;
  points.reserve(valid_observations.size());
  for (const GeoObservation& o : valid_observations) {
    points.push_back(o.location);
  }
  const std::vector<int> labels =
      dbscan_labels(points, cfg.dbscan_eps_km, cfg.dbscan_min_points);

  std::map<int, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= 0) {
      by_label[labels[i]].push_back(i);
    }
  }

  const double total = static_cast<double>(valid_observations.size());
  std::vector<GeoCluster> clusters;
  clusters.reserve(by_label.size());
  for (const auto& [label, indices] : by_label) {
    GeoCluster c;
    std::vector<GeoPoint> member_points;
    for (std::size_t i : indices) {
      const GeoObservation& o = valid_observations[i];
      c.members.push_back({o.source, o.location, o.country});
      member_points.push_back(o.location);
    }
    c.centroid = spherical_centroid(member_points);
    c.cluster_score = static_cast<double>(indices.size()) / total;
    c.country = modal_country(c.members);
    clusters.push_back(std::move(c));
  }

  std::sort(clusters.begin(), clusters.end(),
            [](const GeoCluster& a, const GeoCluster& b) {
              if (a.cluster_score != b.cluster_score) {
                return a.cluster_score > b.cluster_score;
              }
              return a.members.front().source < b.members.front().source;
            });
  return clusters;
}

std::vector<GeoCluster> geolocate_ip(
    const std::vector<GeoObservation>& observations,
    const std::vector<LatencySample>& evidence, const PipelineConfig& cfg) {
  std::vector<GeoObservation> valid;
  valid.reserve(observations.size());
  for (const GeoObservation& o : observations) {
    if (sol_validate(o, evidence, cfg)) {
      valid.push_back(o);
    }
  }
  return cluster_observations(std::move(valid), cfg);
}

std::vector<SweepResult> sweep_sol_threshold(
    const std::vector<SweepEntry>& ground_truth,
    const std::vector<double>& thresholds, const PipelineConfig& cfg) {
  if (ground_truth.empty()) {
    throw InputError("SoL sweep requires a non-empty ground-truth set");
  }
  std::vector<SweepResult> results;
  results.reserve(thresholds.size());
  for (double threshold : thresholds) {
    PipelineConfig run_cfg = cfg;
    run_cfg.sol_margin = threshold;
    std::size_t hits = 0;
    for (const SweepEntry& entry : ground_truth) {
      const std::vector<GeoCluster> clusters =
          geolocate_ip(entry.observations, entry.evidence, run_cfg);
      if (clusters.empty()) {
        continue;
      }
      const double err =
          haversine_km(clusters.front().centroid, entry.true_location);
      if (err <= cfg.sweep_match_radius_km) {
        ++hits;
      }
    }
    results.push_back(
        {threshold, static_cast<double>(hits) /
                        static_cast<double>(ground_truth.size())});
  }
  return results;
}

std::vector<SweepEntry> load_sweep_entries(
    const std::string& ground_truth_path,
    const std::vector<GeoObservation>& observations,
    const std::vector<LatencyEvidence>& evidence) {
  std::ifstream in(ground_truth_path);
  if (!in) {
    throw InputError("cannot open ground-truth file: " + ground_truth_path);
  }

  std::unordered_map<IpAddress, std::vector<GeoObservation>, IpAddressHash>
      obs_by_ip;
  for (const GeoObservation& o : observations) {
    obs_by_ip[o.ip].push_back(o);
  }
  std::unordered_map<IpAddress, const LatencyEvidence*, IpAddressHash>
      ev_by_ip;
  for (const LatencyEvidence& e : evidence) {
    ev_by_ip[e.ip] = &e;
  }

  std::vector<SweepEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      SweepEntry entry;
      const auto ip = IpAddress::parse(j.at("ip").get<std::string>());
      if (!ip) {
        continue;
      }
      entry.ip = *ip;
      entry.true_location =
          GeoPoint(j.at("lat").get<double>(), j.at("lon").get<double>());
      if (auto it = obs_by_ip.find(entry.ip); it != obs_by_ip.end()) {
        entry.observations = it->second;
      }
      if (auto it = ev_by_ip.find(entry.ip); it != ev_by_ip.end()) {
        entry.evidence = it->second->samples;
      }
      entries.push_back(std::move(entry));
    } catch (const std::exception&) {
      continue;
    }
  }
  return entries;
}

}  // namespace cablemap
