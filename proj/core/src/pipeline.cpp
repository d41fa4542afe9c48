#include "cablemap/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cablemap/aggregate.hpp"
#include "cablemap/analyze.hpp"
#include "cablemap/classify.hpp"
#include "cablemap/digest.hpp"
#include "cablemap/errors.hpp"
#include "cablemap/geoloc.hpp"
#include "cablemap/geomap.hpp"
#include "cablemap/jsonio.hpp"
#include "cablemap/ownermap.hpp"
#include "cablemap/parallel.hpp"

namespace cablemap {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kLinks = "links.jsonl";
constexpr const char* kIps = "ips.jsonl";
constexpr const char* kLatencyEvidence = "latency_evidence.jsonl";
constexpr const char* kGeoClusters = "geo_clusters.jsonl";
constexpr const char* kLinkClasses = "link_classes.jsonl";
constexpr const char* kGeoCandidates = "geo_candidates.jsonl";
constexpr const char* kIpAsn = "ip_asn.jsonl";
constexpr const char* kOwnerAsn = "owner_asn.json";
constexpr const char* kLinkMappings = "link_mappings.jsonl";
constexpr const char* kStats = "stats.json";
constexpr const char* kFailureReport = "failure_report.json";
constexpr const char* kOperatorReport = "operator_report.json";
constexpr const char* kManifest = "manifest.json";

}  // namespace

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::kIngest: return "ingest";
    case Stage::kGeolocate: return "geolocate";
    case Stage::kClassify: return "classify";
    case Stage::kMapGeo: return "map-geo";
    case Stage::kMapOwner: return "map-owner";
    case Stage::kAggregate: return "aggregate";
    case Stage::kAnalyze: return "analyze";
  }
  return "?";
}

std::optional<Stage> stage_from_string(const std::string& name) {
  for (Stage stage : all_stages()) {
    if (to_string(stage) == name) {
      return stage;
    }
  }
  return std::nullopt;
}

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> kStages = {
      Stage::kIngest,   Stage::kGeolocate, Stage::kClassify, Stage::kMapGeo,
      Stage::kMapOwner, Stage::kAggregate, Stage::kAnalyze};
  return kStages;
}

std::string to_string(InputKind kind) {
  switch (kind) {
    case InputKind::kTracesCanonical: return "traces";
    case InputKind::kTracesAtlas: return "traces-atlas";
    case InputKind::kProbes: return "probes";
    case InputKind::kGeoObservations: return "geo-observations";
    case InputKind::kAsnRecords: return "asn-records";
    case InputKind::kAsInfo: return "as-info";
    case InputKind::kCables: return "cables";
    case InputKind::kCountryGeo: return "country-geo";
    case InputKind::kFailureScenario: return "failure-scenario";
    case InputKind::kOperatorTruth: return "operator-truth";
    case InputKind::kUnknown: return "unknown";
  }
  return "unknown";
}

namespace {

InputKind classify_object(const json& j) {
  if (!j.is_object()) {
    return InputKind::kUnknown;
  }
  if (j.contains("cables") && j.contains("landing_points")) {
    return InputKind::kCables;
  }
  if (j.contains("probes")) {
    return InputKind::kProbes;
  }
  if (j.contains("entity") && j.contains("windows")) {
    return InputKind::kFailureScenario;
  }
  if (j.contains("operator") && j.contains("cables")) {
    return InputKind::kOperatorTruth;
  }
  if (j.contains("probe") && j.contains("hops")) {
    return InputKind::kTracesCanonical;
  }
  if (j.contains("prb_id") && j.contains("result")) {
    return InputKind::kTracesAtlas;
  }
  if (j.contains("ip") && j.contains("source") && j.contains("asn")) {
    return InputKind::kAsnRecords;
  }
  if (j.contains("ip") && j.contains("source") && j.contains("lat")) {
    return InputKind::kGeoObservations;
  }
  if (j.contains("asn") && j.contains("org") && j.contains("rank")) {
    return InputKind::kAsInfo;
  }
  // Country table: every value is an object holding a continent.
  if (!j.empty()) {
    bool all_countries = true;
    for (const auto& [key, value] : j.items()) {
      if (!valid_country_code(key) || !value.is_object() ||
          !value.contains("continent")) {
        all_countries = false;
        break;
      }
    }
    if (all_countries) {
      return InputKind::kCountryGeo;
    }
  }
  return InputKind::kUnknown;
}

}  // namespace

InputKind classify_input_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open input file: " + path);
  }
  // Peek at the first non-space byte: '[' means a whole-file array.
  char first = 0;
  while (in.get(first) && (first == ' ' || first == '\n' || first == '\r' ||
                           first == '\t')) {
  }
  in.seekg(0);
  if (first == '[') {
    json arr;
    try {
      arr = json::parse(in);
    } catch (const json::exception&) {
      return InputKind::kUnknown;
    }
    return arr.empty() ? InputKind::kUnknown : classify_object(arr.front());
  }

  // Line-oriented file: the first parseable line (of the first 50) decides.
  std::string line;
  int scanned = 0;
  while (scanned < 50 && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    ++scanned;
    try {
      const InputKind kind = classify_object(json::parse(line));
      if (kind != InputKind::kUnknown) {
        return kind;
      }
    } catch (const json::exception&) {
      // Malformed rows are skipped here just as the loaders skip them.
    }
  }
  // A .json document pretty-printed over many lines: parse the whole file.
  in.clear();
  in.seekg(0);
  try {
    return classify_object(json::parse(in));
  } catch (const json::exception&) {
    return InputKind::kUnknown;
  }
}

Pipeline::Pipeline(PipelineConfig cfg, std::vector<std::string> inputs,
                   std::string out_dir, int jobs)
    : cfg_(std::move(cfg)), out_dir_(std::move(out_dir)), jobs_(jobs) {
  cfg_.validate();
  for (const std::string& path : inputs) {
    const InputKind kind = classify_input_file(path);
    if (kind == InputKind::kUnknown) {
      throw InputError("unrecognized input file: " + path);
    }
    inputs_.push_back({kind, path});
  }
}

std::string Pipeline::artifact_path(const std::string& name) const {
  return (fs::path(out_dir_) / name).string();
}

std::vector<std::string> Pipeline::input_paths(InputKind kind) const {
  std::vector<std::string> out;
  for (const InputFile& input : inputs_) {
    if (input.kind == kind) {
      out.push_back(input.path);
    }
  }
  return out;
}

std::string Pipeline::required_input(InputKind kind, const char* what) const {
  const auto paths = input_paths(kind);
  if (paths.empty()) {
    throw InputError(std::string("missing required input: ") + what);
  }
  if (paths.size() > 1) {
    throw InputError(std::string("multiple inputs of kind ") + what +
                     "; expected exactly one");
  }
  return paths.front();
}

std::string Pipeline::required_artifact(const std::string& name,
                                        const char* producer) const {
  const std::string path = artifact_path(name);
  if (!fs::exists(path)) {
    throw InputError("missing " + name + "; run stage '" + producer +
                     "' first");
  }
  return path;
}

std::string Pipeline::inputs_digest(
    const std::vector<std::string>& paths) const {
  std::string acc;
  for (const std::string& path : paths) {
    acc += sha256_file_hex(path);
    acc += '\n';
  }
  return sha256_hex(acc);
}

namespace {

json load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return json::object();
  }
  try {
    return json::parse(in);
  } catch (const json::exception&) {
    return json::object();
  }
}

}  // namespace

bool Pipeline::stage_up_to_date(
    const std::string& stage_name, const std::string& inputs_digest,
    const std::vector<std::string>& artifact_names) const {
  const json manifest = load_manifest(artifact_path(kManifest));
  if (manifest.value("config_digest", "") != cfg_.digest()) {
    return false;
  }
  if (!manifest.contains("stages") || !manifest["stages"].contains(stage_name)) {
    return false;
  }
  const json& record = manifest["stages"][stage_name];
  if (record.value("inputs_digest", "") != inputs_digest) {
    return false;
  }
  for (const std::string& name : artifact_names) {
    const std::string path = artifact_path(name);
    if (!fs::exists(path)) {
      return false;
    }
    const std::string recorded = record["artifacts"].value(name, "");
    if (recorded.empty() || sha256_file_hex(path) != recorded) {
      return false;
    }
  }
  return true;
}

void Pipeline::record_stage(const std::string& stage_name,
                            const std::string& inputs_digest,
                            const std::vector<std::string>& artifact_names) {
  json manifest = load_manifest(artifact_path(kManifest));
  // A config change invalidates every previous record.
  if (manifest.value("config_digest", "") != cfg_.digest()) {
    manifest = json::object();
  }
  manifest["config_digest"] = cfg_.digest();
  json artifacts = json::object();
  for (const std::string& name : artifact_names) {
    artifacts[name] = sha256_file_hex(artifact_path(name));
  }
  manifest["stages"][stage_name] = json{{"inputs_digest", inputs_digest},
                                        {"artifacts", std::move(artifacts)}};
  write_file_atomic(artifact_path(kManifest), manifest.dump(2) + "\n");
}

StageRun Pipeline::run(Stage stage) {
  switch (stage) {
    case Stage::kIngest: return run_ingest();
    case Stage::kGeolocate: return run_geolocate();
    case Stage::kClassify: return run_classify();
    case Stage::kMapGeo: return run_map_geo();
    case Stage::kMapOwner: return run_map_owner();
    case Stage::kAggregate: return run_aggregate();
    case Stage::kAnalyze: return run_analyze();
  }
  throw InputError("unknown stage");
}

std::vector<StageRun> Pipeline::run_all() {
  std::vector<StageRun> runs;
  for (Stage stage : all_stages()) {
    runs.push_back(run(stage));
  }
  return runs;
}

StageRun Pipeline::run_ingest() {
  StageRun run;
  run.stage = Stage::kIngest;
  run.artifacts = {kLinks, kIps, kLatencyEvidence};

  std::vector<std::string> trace_paths = input_paths(InputKind::kTracesCanonical);
  const auto atlas_paths = input_paths(InputKind::kTracesAtlas);
  if (trace_paths.empty() && atlas_paths.empty()) {
    throw InputError("ingest requires at least one traceroute input");
  }
  const auto probe_paths = input_paths(InputKind::kProbes);
  if (!atlas_paths.empty() && probe_paths.empty()) {
    run.warnings.push_back(
        "atlas traces without a probe table: records will be dropped");
  }

  std::vector<std::string> dep_paths = trace_paths;
  dep_paths.insert(dep_paths.end(), atlas_paths.begin(), atlas_paths.end());
  dep_paths.insert(dep_paths.end(), probe_paths.begin(), probe_paths.end());
  const std::string digest = inputs_digest(dep_paths);
  if (stage_up_to_date("ingest", digest, run.artifacts)) {
    run.skipped = true;
    return run;
  }

  std::map<std::int64_t, GeoPoint> probes;
  for (const std::string& path : probe_paths) {
    auto loaded = load_probe_locations(path);
    probes.insert(loaded.begin(), loaded.end());
  }

  LinkTable table;
  std::map<IpAddress, std::vector<LatencySample>> evidence;
  std::unordered_map<IpAddress, std::vector<LatencySample>, IpAddressHash>
      evidence_scratch;
  IngestCounters counters;

  auto ingest_file = [&](const std::string& path, TraceFormat format) {
    RawTraceSource source;
    source.path = path;
    source.format = format;
    source.probe_locations = probes;
    parse_traces(source, counters, [&](const TracerouteRecord& trace) {
      const auto links = extract_links(trace);
      counters.links_emitted += links.size();
      for (const IpLink& link : links) {
        table.add(link);
      }
      collect_latency_evidence(trace, evidence_scratch);
    });
  };
  for (const std::string& path : trace_paths) {
    ingest_file(path, TraceFormat::kCanonicalJsonl);
  }
  for (const std::string& path : atlas_paths) {
    ingest_file(path, TraceFormat::kAtlasJson);
  }

  // Only link endpoints move forward; evidence for other hops is dropped.
  for (const IpAddress& ip : table.unique_ips) {
    const auto it = evidence_scratch.find(ip);
    if (it != evidence_scratch.end()) {
      evidence.emplace(ip, std::move(it->second));
    }
  }

  save_links(artifact_path(kLinks), table);
  save_ips(artifact_path(kIps), table.unique_ips);
  save_latency_evidence(artifact_path(kLatencyEvidence), evidence);

  run.counters["traces_seen"] = counters.traces_seen;
  run.counters["traces_kept"] = counters.traces_kept;
  run.counters["dropped_loop"] = counters.dropped_loop;
  run.counters["dropped_invalid"] = counters.dropped_invalid;
  run.counters["links_emitted"] = counters.links_emitted;
  run.counters["unique_links"] = table.occurrences.size();
  run.counters["unique_ips"] = table.unique_ips.size();

  record_stage("ingest", digest, run.artifacts);
  return run;
}

StageRun Pipeline::run_geolocate() {
  StageRun run;
  run.stage = Stage::kGeolocate;
  run.artifacts = {kGeoClusters};

  const std::string obs_path =
      required_input(InputKind::kGeoObservations, "geo_observations.jsonl");
  const std::string ips_path = required_artifact(kIps, "ingest");
  const std::string evidence_path = required_artifact(kLatencyEvidence, "ingest");

  const std::string digest = inputs_digest({obs_path, ips_path, evidence_path});
  if (stage_up_to_date("geolocate", digest, run.artifacts)) {
    run.skipped = true;
    return run;
  }

  ReadReport ips_report, obs_report, ev_report;
  const auto ips = load_ips(ips_path, ips_report);
  enforce_skip_budget(ips_report);
  const auto observations = load_geo_observations(obs_path, obs_report);
  enforce_skip_budget(obs_report);
  const auto evidence_rows = load_latency_evidence(evidence_path, ev_report);
  enforce_skip_budget(ev_report);
  run.counters["input_rows_skipped"] =
      ips_report.skipped + obs_report.skipped + ev_report.skipped;

  // One observation per (ip, source); duplicates beyond the first are noise.
  std::map<IpAddress, std::map<std::string, GeoObservation>> obs_by_ip;
  std::uint64_t duplicate_observations = 0;
  for (const GeoObservation& o : observations) {
    const auto [it, inserted] = obs_by_ip[o.ip].emplace(o.source, o);
    if (!inserted) {
      ++duplicate_observations;
    }
  }
  run.counters["duplicate_observations"] = duplicate_observations;

  std::map<IpAddress, const std::vector<LatencySample>*> evidence_by_ip;
  for (const LatencyEvidence& e : evidence_rows) {
    evidence_by_ip.emplace(e.ip, &e.samples);
  }

  std::vector<IpClusters> rows(ips.size());
  const std::vector<LatencySample> no_evidence;
  parallel_for(ips.size(), jobs_, [&](std::size_t i) {
    const IpAddress& ip = ips[i];
    IpClusters row;
    row.ip = ip;
    std::vector<GeoObservation> obs;
    if (const auto it = obs_by_ip.find(ip); it != obs_by_ip.end()) {
      for (const auto& [source, o] : it->second) {
        obs.push_back(o);
      }
    }
    const auto ev_it = evidence_by_ip.find(ip);
    const auto& samples =
        ev_it == evidence_by_ip.end() ? no_evidence : *ev_it->second;
    std::vector<GeoObservation> valid;
    for (const GeoObservation& o : obs) {
      if (sol_validate(o, samples, cfg_)) {
        valid.push_back(o);
      }
    }
    row.valid_observations = valid.size();
    row.clusters = cluster_observations(std::move(valid), cfg_);
    rows[i] = std::move(row);
  });
  std::sort(rows.begin(), rows.end(),
            [](const IpClusters& a, const IpClusters& b) { return a.ip < b.ip; });

  save_geo_clusters(artifact_path(kGeoClusters), rows);
  run.counters["ips"] = rows.size();
  record_stage("geolocate", digest, run.artifacts);
  return run;
}

StageRun Pipeline::run_classify() {
  StageRun run;
  run.stage = Stage::kClassify;
  run.artifacts = {kLinkClasses};

  const std::string cables_path = required_input(InputKind::kCables, "cables.json");
  const std::string country_path =
      required_input(InputKind::kCountryGeo, "country_geo.json");
  const std::string links_path = required_artifact(kLinks, "ingest");
  const std::string clusters_path = required_artifact(kGeoClusters, "geolocate");

  const std::string digest =
      inputs_digest({cables_path, country_path, links_path, clusters_path});
  if (stage_up_to_date("classify", digest, run.artifacts)) {
    run.skipped = true;
    return run;
  }

  ReadReport cables_report, links_report, clusters_report;
  const CableDataset dataset =
      load_cable_dataset(cables_path, cfg_, cables_report);
  enforce_skip_budget(cables_report);
  const CountryGeoData countries = load_country_geo(country_path);
  const auto links = load_links(links_path, links_report);
  enforce_skip_budget(links_report);
  const auto cluster_rows = load_geo_clusters(clusters_path, clusters_report);
  enforce_skip_budget(clusters_report);

  const LandingPointIndex index(dataset);
  std::map<IpAddress, const std::vector<GeoCluster>*> clusters_by_ip;
  for (const IpClusters& row : cluster_rows) {
    clusters_by_ip.emplace(row.ip, &row.clusters);
  }
  const std::vector<GeoCluster> no_clusters;
  auto clusters_of = [&](const IpAddress& ip) -> const std::vector<GeoCluster>& {
    const auto it = clusters_by_ip.find(ip);
    return it == clusters_by_ip.end() ? no_clusters : *it->second;
  };

  std::vector<LinkClassRow> rows(links.size());
  parallel_for(links.size(), jobs_, [&](std::size_t i) {
    const IpLink& link = links[i].link;
    LinkClassRow row;
    row.link = link;
    row.label = classify_link(clusters_of(link.a), clusters_of(link.b),
                              countries, dataset, index, cfg_);
    rows[i] = std::move(row);
  });

  std::uint64_t unclassified = 0;
  for (const LinkClassRow& row : rows) {
    if (!row.label) {
      ++unclassified;
    }
  }
  save_link_classes(artifact_path(kLinkClasses), rows);
  run.counters["links"] = rows.size();
  run.counters["unclassified"] = unclassified;
  record_stage("classify", digest, run.artifacts);
  return run;
}

StageRun Pipeline::run_map_geo() {
  StageRun run;
  run.stage = Stage::kMapGeo;
  run.artifacts = {kGeoCandidates};

  const std::string cables_path = required_input(InputKind::kCables, "cables.json");
  const std::string classes_path = required_artifact(kLinkClasses, "classify");
  const std::string clusters_path = required_artifact(kGeoClusters, "geolocate");

  const std::string digest =
      inputs_digest({cables_path, classes_path, clusters_path});
  if (stage_up_to_date("map-geo", digest, run.artifacts)) {
    run.skipped = true;
    return run;
  }

  ReadReport cables_report, classes_report, clusters_report;
  const CableDataset dataset =
      load_cable_dataset(cables_path, cfg_, cables_report);
  enforce_skip_budget(cables_report);
  const auto classes = load_link_classes(classes_path, classes_report);
  enforce_skip_budget(classes_report);
  const auto cluster_rows = load_geo_clusters(clusters_path, clusters_report);
  enforce_skip_budget(clusters_report);

  const LandingPointIndex index(dataset);
  std::map<IpAddress, const std::vector<GeoCluster>*> clusters_by_ip;
  for (const IpClusters& row : cluster_rows) {
    clusters_by_ip.emplace(row.ip, &row.clusters);
  }

  // Only links with submarine potential reach the search.
  std::vector<const LinkClassRow*> submarine;
  for (const LinkClassRow& row : classes) {
    if (row.label &&
        row.label->submarine_class != SubmarineClass::kTerrestrial) {
      submarine.push_back(&row);
    }
  }

  std::vector<LinkCandidatesRow> rows(submarine.size());
  const std::vector<GeoCluster> no_clusters;
  parallel_for(submarine.size(), jobs_, [&](std::size_t i) {
    const IpLink& link = submarine[i]->link;
    const auto it_a = clusters_by_ip.find(link.a);
    const auto it_b = clusters_by_ip.find(link.b);
    LinkCandidatesRow row;
    row.link = link;
    const auto& ca = it_a == clusters_by_ip.end() ? no_clusters : *it_a->second;
    const auto& cb = it_b == clusters_by_ip.end() ? no_clusters : *it_b->second;
    row.candidates = recursive_search(index, dataset, ca, cb, cfg_);
    rows[i] = std::move(row);
  });

  std::uint64_t unmapped = 0;
  for (const LinkCandidatesRow& row : rows) {
    if (row.candidates.empty()) {
      ++unmapped;
    }
  }
  save_geo_candidates(artifact_path(kGeoCandidates), rows);
  run.counters["submarine_links"] = rows.size();
  run.counters["links_without_candidates"] = unmapped;
  record_stage("map-geo", digest, run.artifacts);
  return run;
}

StageRun Pipeline::run_map_owner() {
  StageRun run;
  run.stage = Stage::kMapOwner;
  run.artifacts = {kIpAsn, kOwnerAsn};

  const std::string cables_path = required_input(InputKind::kCables, "cables.json");
  const std::string asn_path =
      required_input(InputKind::kAsnRecords, "asn_records.jsonl");
  const std::string as_info_path =
      required_input(InputKind::kAsInfo, "as_info.jsonl");
  const std::string ips_path = required_artifact(kIps, "ingest");

  const std::string digest =
      inputs_digest({cables_path, asn_path, as_info_path, ips_path});
  if (stage_up_to_date("map-owner", digest, run.artifacts)) {
    run.skipped = true;
    return run;
  }

  ReadReport cables_report, asn_report, info_report, ips_report;
  const CableDataset dataset =
      load_cable_dataset(cables_path, cfg_, cables_report);
  enforce_skip_budget(cables_report);
  const auto asn_records = load_asn_records(asn_path, asn_report);
  enforce_skip_budget(asn_report);
  const auto as_records = load_as_records(as_info_path, info_report);
  enforce_skip_budget(info_report);
  const auto ips = load_ips(ips_path, ips_report);
  enforce_skip_budget(ips_report);

  std::vector<AsnVote> votes;
  votes.reserve(ips.size());
  for (const IpAddress& ip : ips) {
    const auto it = asn_records.find(ip);
    if (it == asn_records.end()) {
      continue;  // IP without any ASN source
    }
    if (auto vote = resolve_asn(ip, it->second, cfg_)) {
      votes.push_back(std::move(*vote));
    }
  }
  const OwnerAsnMap owners = build_owner_map(dataset, as_records, cfg_);

  save_ip_asn(artifact_path(kIpAsn), votes);
  save_owner_map(artifact_path(kOwnerAsn), owners);
  run.counters["ips_with_asn"] = votes.size();
  run.counters["owners_matched"] = owners.size();
  record_stage("map-owner", digest, run.artifacts);
  return run;
}

StageRun Pipeline::run_aggregate() {
  StageRun run;
  run.stage = Stage::kAggregate;
  run.artifacts = {kLinkMappings};

  const std::string cables_path = required_input(InputKind::kCables, "cables.json");
  const std::string classes_path = required_artifact(kLinkClasses, "classify");
  const std::string candidates_path =
      required_artifact(kGeoCandidates, "map-geo");
  const std::string ip_asn_path = required_artifact(kIpAsn, "map-owner");
  const std::string owners_path = required_artifact(kOwnerAsn, "map-owner");

  const std::string digest = inputs_digest(
      {cables_path, classes_path, candidates_path, ip_asn_path, owners_path});
  if (stage_up_to_date("aggregate", digest, run.artifacts)) {
    run.skipped = true;
    return run;
  }

  ReadReport cables_report, classes_report, candidates_report, asn_report;
  const CableDataset dataset =
      load_cable_dataset(cables_path, cfg_, cables_report);
  enforce_skip_budget(cables_report);
  const auto classes = load_link_classes(classes_path, classes_report);
  enforce_skip_budget(classes_report);
  const auto candidate_rows =
      load_geo_candidates(candidates_path, candidates_report);
  enforce_skip_budget(candidates_report);
  const auto votes = load_ip_asn(ip_asn_path, asn_report);
  enforce_skip_budget(asn_report);
  const OwnerAsnMap owners = load_owner_map(owners_path);

  std::map<IpLink, const BonusLabel*> label_by_link;
  for (const LinkClassRow& row : classes) {
    if (row.label) {
      label_by_link.emplace(row.link, &*row.label);
    }
  }
  std::map<IpAddress, Asn> asn_by_ip;
  for (const AsnVote& vote : votes) {
    asn_by_ip.emplace(vote.ip, vote.resolved_asn);
  }
  auto asn_of = [&](const IpAddress& ip) -> std::optional<Asn> {
    const auto it = asn_by_ip.find(ip);
    if (it == asn_by_ip.end()) {
      return std::nullopt;
    }
    return it->second;
  };

  std::vector<LinkMapping> mappings;
  for (const LinkCandidatesRow& row : candidate_rows) {
    const auto label_it = label_by_link.find(row.link);
    if (label_it == label_by_link.end()) {
      continue;
    }
    auto mapping =
        finalize(row.link, *label_it->second, row.candidates,
                 asn_of(row.link.a), asn_of(row.link.b), dataset, owners, cfg_);
    if (mapping) {
      mappings.push_back(std::move(*mapping));
    }
  }

  save_link_mappings(artifact_path(kLinkMappings), mappings);
  run.counters["mapped_links"] = mappings.size();
  record_stage("aggregate", digest, run.artifacts);
  return run;
}

StageRun Pipeline::run_analyze() {
  StageRun run;
  run.stage = Stage::kAnalyze;
  run.artifacts = {kStats};

  const std::string cables_path = required_input(InputKind::kCables, "cables.json");
  const std::string classes_path = required_artifact(kLinkClasses, "classify");
  const std::string mappings_path =
      required_artifact(kLinkMappings, "aggregate");

  const auto scenario_paths = input_paths(InputKind::kFailureScenario);
  const auto truth_paths = input_paths(InputKind::kOperatorTruth);

  std::vector<std::string> dep_paths = {cables_path, classes_path,
                                        mappings_path};
  dep_paths.insert(dep_paths.end(), scenario_paths.begin(),
                   scenario_paths.end());
  dep_paths.insert(dep_paths.end(), truth_paths.begin(), truth_paths.end());
  std::string as_info_path, ip_asn_path;
  if (!truth_paths.empty()) {
    as_info_path = required_input(InputKind::kAsInfo, "as_info.jsonl");
    ip_asn_path = required_artifact(kIpAsn, "map-owner");
    dep_paths.push_back(as_info_path);
    dep_paths.push_back(ip_asn_path);
  }
  if (!scenario_paths.empty()) {
    run.artifacts.push_back(kFailureReport);
  }
  if (!truth_paths.empty()) {
    run.artifacts.push_back(kOperatorReport);
  }

  const std::string digest = inputs_digest(dep_paths);
  if (stage_up_to_date("analyze", digest, run.artifacts)) {
    run.skipped = true;
    return run;
  }

  ReadReport cables_report, classes_report, mappings_report;
  const CableDataset dataset =
      load_cable_dataset(cables_path, cfg_, cables_report);
  enforce_skip_budget(cables_report);
  const auto classes = load_link_classes(classes_path, classes_report);
  enforce_skip_budget(classes_report);
  const auto mappings = load_link_mappings(mappings_path, mappings_report);
  enforce_skip_budget(mappings_report);

  std::vector<ClassifiedLink> classified;
  classified.reserve(classes.size());
  for (const LinkClassRow& row : classes) {
    classified.push_back({row.link, row.label});
  }
  const MappingStats stats = summarize(classified, mappings, dataset);
  save_stats(artifact_path(kStats), stats, cfg_.digest());
  run.counters["mapped_links"] = stats.mapped_links;

  for (const std::string& path : scenario_paths) {
    const FailureScenario scenario = load_failure_scenario(path);
    const FailureReport report = failure_diff(mappings, scenario, dataset);
    save_failure_report(artifact_path(kFailureReport), report, cfg_.digest());
    run.counters["failure_survivors"] = report.survivors.size();
  }
  for (const std::string& path : truth_paths) {
    const OperatorTruth truth = load_operator_truth(path);
    ReadReport info_report, asn_report;
    const auto as_records = load_as_records(as_info_path, info_report);
    enforce_skip_budget(info_report);
    const auto votes = load_ip_asn(ip_asn_path, asn_report);
    enforce_skip_budget(asn_report);
    std::map<IpAddress, Asn> ip_asn;
    for (const AsnVote& vote : votes) {
      ip_asn.emplace(vote.ip, vote.resolved_asn);
    }
    const OperatorReport report =
        operator_overlap(truth.operator_name, mappings, ip_asn, as_records,
                         truth.cables, dataset, cfg_);
    save_operator_report(artifact_path(kOperatorReport), report, cfg_.digest());
    run.counters["operator_matched"] = report.matched;
  }

  record_stage("analyze", digest, run.artifacts);
  return run;
}

std::vector<std::string> Pipeline::validate_artifacts() const {
  std::vector<std::string> checked;
  std::vector<std::string> problems;

  auto check_jsonl = [&](const char* name, auto loader) {
    const std::string path = artifact_path(name);
    if (!fs::exists(path)) {
      return;
    }
    checked.push_back(name);
    ReadReport report;
    try {
      loader(path, report);
    } catch (const std::exception& e) {
      problems.push_back(std::string(name) + ": " + e.what());
      return;
    }
    if (report.skipped > 0) {
      problems.push_back(std::string(name) + ": " +
                         std::to_string(report.skipped) +
                         " rows violate the schema");
    }
  };
  check_jsonl(kLinks, [](const std::string& p, ReadReport& r) {
    load_links(p, r);
  });
  check_jsonl(kIps, [](const std::string& p, ReadReport& r) { load_ips(p, r); });
  check_jsonl(kLatencyEvidence, [](const std::string& p, ReadReport& r) {
    load_latency_evidence(p, r);
  });
  check_jsonl(kGeoClusters, [](const std::string& p, ReadReport& r) {
    load_geo_clusters(p, r);
  });
  check_jsonl(kLinkClasses, [](const std::string& p, ReadReport& r) {
    load_link_classes(p, r);
  });
  check_jsonl(kGeoCandidates, [](const std::string& p, ReadReport& r) {
    load_geo_candidates(p, r);
  });
  check_jsonl(kIpAsn, [](const std::string& p, ReadReport& r) {
    load_ip_asn(p, r);
  });
  check_jsonl(kLinkMappings, [](const std::string& p, ReadReport& r) {
    load_link_mappings(p, r);
  });

  auto check_json = [&](const char* name, auto loader) {
    const std::string path = artifact_path(name);
    if (!fs::exists(path)) {
      return;
    }
    checked.push_back(name);
    try {
      loader(path);
    } catch (const std::exception& e) {
      problems.push_back(std::string(name) + ": " + e.what());
    }
  };
  check_json(kOwnerAsn, [](const std::string& p) { load_owner_map(p); });
  check_json(kStats, [](const std::string& p) {
    const json j = json::parse(std::ifstream(p));
    if (!j.contains("config_digest") || !j.contains("mapped_links")) {
      throw InputError("missing required stats fields");
    }
  });
  check_json(kFailureReport, [](const std::string& p) {
    const json j = json::parse(std::ifstream(p));
    if (!j.contains("entity") || !j.contains("present_before")) {
      throw InputError("missing required failure-report fields");
    }
  });
  check_json(kOperatorReport, [](const std::string& p) {
    const json j = json::parse(std::ifstream(p));
    if (!j.contains("operator") || !j.contains("matched")) {
      throw InputError("missing required operator-report fields");
    }
  });

  if (!problems.empty()) {
    std::ostringstream msg;
    msg << "artifact validation failed:";
    for (const std::string& p : problems) {
      msg << "\n  " << p;
    }
    throw InputError(msg.str());
  }
  return checked;
}

}  // namespace cablemap
