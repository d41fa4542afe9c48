#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cablemap/aggregate.hpp"
#include "cablemap/analyze.hpp"
#include "cablemap/classify.hpp"
#include "cablemap/geoloc.hpp"
#include "cablemap/ingest.hpp"
#include "cablemap/model.hpp"
#include "cablemap/ownermap.hpp"

namespace cablemap {

// Outcome of reading a line-oriented input. Schema-violating lines are
// skipped and counted; more than 10% skipped lines is a fatal input error.
struct ReadReport {
  std::string path;
  std::uint64_t lines = 0;
  std::uint64_t skipped = 0;
};

// Atomic write: the content lands under a temporary name and is renamed in
// place, so readers never observe a partial artifact.
void write_file_atomic(const std::string& path, const std::string& content);

// --- reference datasets -----------------------------------------------

CableDataset load_cable_dataset(const std::string& path,
                                const PipelineConfig& cfg, ReadReport& report);

CountryGeoData load_country_geo(const std::string& path);

std::vector<AsRecord> load_as_records(const std::string& path,
                                      ReadReport& report);

// {ip -> {source -> asn}}, deduplicated on (ip, source).
std::map<IpAddress, std::map<std::string, Asn>> load_asn_records(
    const std::string& path, ReadReport& report);

std::map<std::int64_t, GeoPoint> load_probe_locations(const std::string& path);

std::vector<GeoObservation> load_geo_observations(const std::string& path,
                                                  ReadReport& report);

// --- stage artifacts ----------------------------------------------------

struct LinkRow {
  IpLink link;
  std::uint64_t occurrences = 0;
};

void save_links(const std::string& path, const LinkTable& table);
std::vector<LinkRow> load_links(const std::string& path, ReadReport& report);

void save_ips(const std::string& path, const std::set<IpAddress>& ips);
std::vector<IpAddress> load_ips(const std::string& path, ReadReport& report);

void save_latency_evidence(
    const std::string& path,
    const std::map<IpAddress, std::vector<LatencySample>>& evidence);
std::vector<LatencyEvidence> load_latency_evidence(const std::string& path,
                                                   ReadReport& report);

struct IpClusters {
  IpAddress ip;
  std::uint64_t valid_observations = 0;
  std::vector<GeoCluster> clusters;
};

void save_geo_clusters(const std::string& path,
                       const std::vector<IpClusters>& rows);
std::vector<IpClusters> load_geo_clusters(const std::string& path,
                                          ReadReport& report);

struct LinkClassRow {
  IpLink link;
  std::optional<BonusLabel> label;  // nullopt = Unclassified
};

void save_link_classes(const std::string& path,
                       const std::vector<LinkClassRow>& rows);
std::vector<LinkClassRow> load_link_classes(const std::string& path,
                                            ReadReport& report);

struct LinkCandidatesRow {
  IpLink link;
  std::vector<GeoCandidate> candidates;
};

void save_geo_candidates(const std::string& path,
                         const std::vector<LinkCandidatesRow>& rows);
std::vector<LinkCandidatesRow> load_geo_candidates(const std::string& path,
                                                   ReadReport& report);

void save_ip_asn(const std::string& path, const std::vector<AsnVote>& votes);
std::vector<AsnVote> load_ip_asn(const std::string& path, ReadReport& report);

void save_owner_map(const std::string& path, const OwnerAsnMap& owners);
OwnerAsnMap load_owner_map(const std::string& path);

void save_link_mappings(const std::string& path,
                        const std::vector<LinkMapping>& mappings);
std::vector<LinkMapping> load_link_mappings(const std::string& path,
                                            ReadReport& report);

// --- reports --------------------------------------------------------------

void save_stats(const std::string& path, const MappingStats& stats,
                const std::string& config_digest);
void save_failure_report(const std::string& path, const FailureReport& report,
                         const std::string& config_digest);
void save_operator_report(const std::string& path,
                          const OperatorReport& report,
                          const std::string& config_digest);

// --- analysis inputs -------------------------------------------------------

// Scenario windows are either inline link pairs or trace files run through
// the ingest module.
FailureScenario load_failure_scenario(const std::string& path);

struct OperatorTruth {
  std::string operator_name;
  std::vector<std::string> cables;
};

OperatorTruth load_operator_truth(const std::string& path);

// Enforces the 10% skip budget; throws InputError when exceeded.
void enforce_skip_budget(const ReadReport& report);

}  // namespace cablemap
