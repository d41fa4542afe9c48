#include "cablemap/jsonio.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cablemap/errors.hpp"

namespace cablemap {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json parse_file_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open file: " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

// Calls row() per non-empty line; a throwing row is counted as skipped.
void for_each_line(const std::string& path, ReadReport& report,
                   const std::function<void(const json&)>& row) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open file: " + path);
  }
  report.path = path;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    ++report.lines;
    try {
      row(json::parse(line));
    } catch (const std::exception&) {
      ++report.skipped;
    }
  }
}

IpAddress parse_ip_field(const json& j, const char* key) {
  const auto ip = IpAddress::parse(j.at(key).get<std::string>());
  if (!ip) {
    throw InputError("bad IP address");
  }
  return *ip;
}

GeoPoint parse_point(const json& j) {
  return GeoPoint(j.at("lat").get<double>(), j.at("lon").get<double>());
}

json point_json(const GeoPoint& p) {
  return json{{"lat", p.latitude_deg}, {"lon", p.longitude_deg}};
}

void append_line(std::string& out, const json& j) {
  out += j.dump();
  out += '\n';
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw InputError("cannot write file: " + tmp.string());
    }
    out << content;
    if (!out.flush()) {
      throw InputError("short write: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    throw InputError("cannot rename into place: " + path);
  }
}

void enforce_skip_budget(const ReadReport& report) {
  if (report.lines == 0) {
    return;
  }
  if (10 * report.skipped > report.lines) {
    std::ostringstream msg;
    msg << report.path << ": " << report.skipped << " of " << report.lines
        << " lines violate the schema (over the 10% budget)";
    throw InputError(msg.str());
  }
}

// --- reference datasets -----------------------------------------------

CableDataset load_cable_dataset(const std::string& path,
                                const PipelineConfig& cfg, ReadReport& report) {
  const json j = parse_file_json(path);
  report.path = path;
  CableDataset out;

  std::map<std::string, GeoPoint> lp_location;
  std::map<std::string, std::string> lp_country;
  for (const json& lp : j.value("landing_points", json::array())) {
    ++report.lines;
    try {
      const auto id = lp.at("id").get<std::string>();
      const auto country = lp.at("country").get<std::string>();
      if (!valid_country_code(country)) {
        throw InputError("bad country code");
      }
      lp_location.emplace(id, parse_point(lp));
      lp_country.emplace(id, country);
    } catch (const std::exception&) {
      ++report.skipped;
    }
  }

  for (const json& c : j.value("cables", json::array())) {
    ++report.lines;
    try {
      Cable cable;
      cable.id = c.at("id").get<std::string>();
      cable.name = c.value("name", cable.id);
      cable.landing_point_ids =
          c.at("landing_points").get<std::vector<std::string>>();
      if (c.contains("owners")) {
        cable.owner_names = c.at("owners").get<std::vector<std::string>>();
      }
      if (c.contains("rfs") && !c.at("rfs").is_null()) {
        cable.rfs_year = c.at("rfs").get<int>();
      }
      if (cable.landing_point_ids.size() < 2) {
        throw InputError("cable with fewer than two landing points");
      }
      for (const std::string& lp_id : cable.landing_point_ids) {
        if (!lp_location.contains(lp_id)) {
          throw InputError("cable references unknown landing point");
        }
      }
      if (cfg.snapshot_year && cable.rfs_year &&
          *cable.rfs_year >= *cfg.snapshot_year) {
        continue;  // not in service at the snapshot
      }
      out.cables.emplace(cable.id, std::move(cable));
    } catch (const std::exception&) {
      ++report.skipped;
    }
  }

  for (const auto& [cable_id, cable] : out.cables) {
    for (const std::string& lp_id : cable.landing_point_ids) {
      auto [it, inserted] = out.landing_points.try_emplace(lp_id);
      if (inserted) {
        it->second.id = lp_id;
        it->second.location = lp_location.at(lp_id);
        it->second.country = lp_country.at(lp_id);
      }
      it->second.cable_ids.insert(cable_id);
    }
  }
  return out;
}

CountryGeoData load_country_geo(const std::string& path) {
  const json j = parse_file_json(path);
  if (!j.is_object()) {
    throw InputError("country data must be a JSON object: " + path);
  }
  static const std::set<std::string> kContinents = {"AF", "AS", "EU", "NA",
                                                    "OC", "SA", "AN"};
  std::map<std::string, CountryRecord> records;
  for (const auto& [country, value] : j.items()) {
    if (!valid_country_code(country)) {
      throw InputError("bad country code in " + path + ": " + country);
    }
    CountryRecord rec;
    rec.continent = value.at("continent").get<std::string>();
    if (!kContinents.contains(rec.continent)) {
      throw InputError("bad continent for " + country + ": " + rec.continent);
    }
    for (const json& n : value.value("neighbors", json::array())) {
      rec.land_neighbors.insert(n.get<std::string>());
    }
    records.emplace(country, std::move(rec));
  }
  return CountryGeoData(std::move(records));
}

std::vector<AsRecord> load_as_records(const std::string& path,
                                      ReadReport& report) {
  std::vector<AsRecord> out;
  for_each_line(path, report, [&](const json& j) {
    AsRecord rec;
    rec.asn = j.at("asn").get<Asn>();
    rec.org_name = j.at("org").get<std::string>();
    rec.as_name = j.value("as_name", "");
    rec.rank = j.at("rank").get<int>();
    if (rec.rank < 1) {
      throw InputError("rank must be >= 1");
    }
    rec.country = j.value("country", "");
    for (const json& c : j.value("customers", json::array())) {
      rec.customers.insert(c.get<Asn>());
    }
    out.push_back(std::move(rec));
  });
  return out;
}

std::map<IpAddress, std::map<std::string, Asn>> load_asn_records(
    const std::string& path, ReadReport& report) {
  std::map<IpAddress, std::map<std::string, Asn>> out;
  for_each_line(path, report, [&](const json& j) {
    const IpAddress ip = parse_ip_field(j, "ip");
    const auto source = j.at("source").get<std::string>();
    const Asn asn = j.at("asn").get<Asn>();
    out[ip].emplace(source, asn);  // first record per (ip, source) wins
  });
  return out;
}

std::map<std::int64_t, GeoPoint> load_probe_locations(const std::string& path) {
  const json j = parse_file_json(path);
  std::map<std::int64_t, GeoPoint> out;
  for (const json& p : j.value("probes", json::array())) {
    out.emplace(p.at("id").get<std::int64_t>(), parse_point(p));
  }
  return out;
}

std::vector<GeoObservation> load_geo_observations(const std::string& path,
                                                  ReadReport& report) {
  std::vector<GeoObservation> out;
  for_each_line(path, report, [&](const json& j) {
    GeoObservation obs;
    obs.ip = parse_ip_field(j, "ip");
    obs.source = j.at("source").get<std::string>();
    obs.location = parse_point(j);
    if (j.contains("city") && !j.at("city").is_null()) {
      obs.city = j.at("city").get<std::string>();
    }
    if (j.contains("country") && !j.at("country").is_null()) {
      obs.country = j.at("country").get<std::string>();
    }
    if (j.contains("continent") && !j.at("continent").is_null()) {
      obs.continent = j.at("continent").get<std::string>();
    }
    out.push_back(std::move(obs));
  });
  return out;
}

// --- stage artifacts ----------------------------------------------------

void save_links(const std::string& path, const LinkTable& table) {
  std::string out;
  for (const auto& [link, count] : table.occurrences) {
    append_line(out, json{{"a", link.a.to_string()},
                          {"b", link.b.to_string()},
                          {"occurrences", count}});
  }
  write_file_atomic(path, out);
}

std::vector<LinkRow> load_links(const std::string& path, ReadReport& report) {
  std::vector<LinkRow> out;
  for_each_line(path, report, [&](const json& j) {
    LinkRow row;
    row.link = IpLink(parse_ip_field(j, "a"), parse_ip_field(j, "b"));
    row.occurrences = j.at("occurrences").get<std::uint64_t>();
    out.push_back(row);
  });
  return out;
}

void save_ips(const std::string& path, const std::set<IpAddress>& ips) {
  std::string out;
  for (const IpAddress& ip : ips) {
    append_line(out, json{{"ip", ip.to_string()}});
  }
  write_file_atomic(path, out);
}

std::vector<IpAddress> load_ips(const std::string& path, ReadReport& report) {
  std::vector<IpAddress> out;
  for_each_line(path, report,
                [&](const json& j) { out.push_back(parse_ip_field(j, "ip")); });
  return out;
}

void save_latency_evidence(
    const std::string& path,
    const std::map<IpAddress, std::vector<LatencySample>>& evidence) {
  std::string out;
  for (const auto& [ip, samples] : evidence) {
    json arr = json::array();
    for (const LatencySample& s : samples) {
      json sj = point_json(s.probe_location);
      sj["min_rtt_ms"] = s.min_rtt_ms;
      arr.push_back(std::move(sj));
    }
    append_line(out, json{{"ip", ip.to_string()}, {"samples", std::move(arr)}});
  }
  write_file_atomic(path, out);
}

std::vector<LatencyEvidence> load_latency_evidence(const std::string& path,
                                                   ReadReport& report) {
  std::vector<LatencyEvidence> out;
  for_each_line(path, report, [&](const json& j) {
    LatencyEvidence ev;
    ev.ip = parse_ip_field(j, "ip");
    for (const json& s : j.at("samples")) {
      const double rtt = s.at("min_rtt_ms").get<double>();
      if (rtt <= 0.0) {
        throw InputError("non-positive rtt");
      }
      ev.samples.push_back({parse_point(s), rtt});
    }
    out.push_back(std::move(ev));
  });
  return out;
}

void save_geo_clusters(const std::string& path,
                       const std::vector<IpClusters>& rows) {
  std::string out;
  for (const IpClusters& row : rows) {
    json clusters = json::array();
    for (const GeoCluster& c : row.clusters) {
      json members = json::array();
      for (const ClusterMember& m : c.members) {
        json mj = point_json(m.location);
        mj["source"] = m.source;
        if (m.country) {
          mj["country"] = *m.country;
        }
        members.push_back(std::move(mj));
      }
      json cj = point_json(c.centroid);
      cj["score"] = c.cluster_score;
      cj["members"] = std::move(members);
      if (c.country) {
        cj["country"] = *c.country;
      }
      clusters.push_back(std::move(cj));
    }
    append_line(out, json{{"ip", row.ip.to_string()},
                          {"valid_observations", row.valid_observations},
                          {"clusters", std::move(clusters)}});
  }
  write_file_atomic(path, out);
}

std::vector<IpClusters> load_geo_clusters(const std::string& path,
                                          ReadReport& report) {
  std::vector<IpClusters> out;
  for_each_line(path, report, [&](const json& j) {
    IpClusters row;
    row.ip = parse_ip_field(j, "ip");
    row.valid_observations = j.at("valid_observations").get<std::uint64_t>();
    for (const json& cj : j.at("clusters")) {
      GeoCluster c;
      c.centroid = parse_point(cj);
      c.cluster_score = cj.at("score").get<double>();
      if (cj.contains("country")) {
        c.country = cj.at("country").get<std::string>();
      }
      for (const json& mj : cj.at("members")) {
        ClusterMember m;
        m.source = mj.at("source").get<std::string>();
        m.location = parse_point(mj);
        if (mj.contains("country")) {
          m.country = mj.at("country").get<std::string>();
        }
        c.members.push_back(std::move(m));
      }
      row.clusters.push_back(std::move(c));
    }
    out.push_back(std::move(row));
  });
  return out;
}

void save_link_classes(const std::string& path,
                       const std::vector<LinkClassRow>& rows) {
  std::string out;
  for (const LinkClassRow& row : rows) {
    json j{{"a", row.link.a.to_string()}, {"b", row.link.b.to_string()}};
    if (row.label) {
      j["status"] = "classified";
      j["geo_confidence"] = to_string(row.label->geo_confidence);
      j["submarine_class"] = to_string(row.label->submarine_class);
      j["geo_cluster_score"] = row.label->geo_cluster_score;
    } else {
      j["status"] = "unclassified";
    }
    append_line(out, j);
  }
  write_file_atomic(path, out);
}

std::vector<LinkClassRow> load_link_classes(const std::string& path,
                                            ReadReport& report) {
  std::vector<LinkClassRow> out;
  for_each_line(path, report, [&](const json& j) {
    LinkClassRow row;
    row.link = IpLink(parse_ip_field(j, "a"), parse_ip_field(j, "b"));
    const auto status = j.at("status").get<std::string>();
    if (status == "classified") {
      BonusLabel label;
      label.geo_confidence =
          geo_confidence_from_string(j.at("geo_confidence").get<std::string>());
      label.submarine_class = submarine_class_from_string(
          j.at("submarine_class").get<std::string>());
      label.geo_cluster_score = j.at("geo_cluster_score").get<double>();
      row.label = label;
    } else if (status != "unclassified") {
      throw InputError("unknown status");
    }
    out.push_back(row);
  });
  return out;
}

namespace {

json candidate_endpoint_json(const CandidateEndpoint& e) {
  return json{{"c", e.cluster_score},
              {"lp", e.landing_point_id},
              {"distance_km", e.distance_km},
              {"d", e.d_score}};
}

CandidateEndpoint parse_candidate_endpoint(const json& j) {
  CandidateEndpoint e;
  e.cluster_score = j.at("c").get<double>();
  e.landing_point_id = j.at("lp").get<std::string>();
  e.distance_km = j.at("distance_km").get<double>();
  e.d_score = j.at("d").get<double>();
  return e;
}

}  // namespace

void save_geo_candidates(const std::string& path,
                         const std::vector<LinkCandidatesRow>& rows) {
  std::string out;
  for (const LinkCandidatesRow& row : rows) {
    json arr = json::array();
    for (const GeoCandidate& gc : row.candidates) {
      arr.push_back(json{{"cable", gc.cable_id},
                         {"radius_km", gc.matched_radius_km},
                         {"end_a", candidate_endpoint_json(gc.end_a)},
                         {"end_b", candidate_endpoint_json(gc.end_b)}});
    }
    append_line(out, json{{"a", row.link.a.to_string()},
                          {"b", row.link.b.to_string()},
                          {"candidates", std::move(arr)}});
  }
  write_file_atomic(path, out);
}

std::vector<LinkCandidatesRow> load_geo_candidates(const std::string& path,
                                                   ReadReport& report) {
  std::vector<LinkCandidatesRow> out;
  for_each_line(path, report, [&](const json& j) {
    LinkCandidatesRow row;
    row.link = IpLink(parse_ip_field(j, "a"), parse_ip_field(j, "b"));
    for (const json& cj : j.at("candidates")) {
      GeoCandidate gc;
      gc.cable_id = cj.at("cable").get<std::string>();
      gc.matched_radius_km = cj.at("radius_km").get<double>();
      gc.end_a = parse_candidate_endpoint(cj.at("end_a"));
      gc.end_b = parse_candidate_endpoint(cj.at("end_b"));
      row.candidates.push_back(std::move(gc));
    }
    out.push_back(std::move(row));
  });
  return out;
}

void save_ip_asn(const std::string& path, const std::vector<AsnVote>& votes) {
  std::string out;
  for (const AsnVote& vote : votes) {
    json per_source = json::object();
    for (const auto& [source, asn] : vote.per_source) {
      per_source[source] = asn;
    }
    append_line(out, json{{"ip", vote.ip.to_string()},
                          {"asn", vote.resolved_asn},
                          {"agreement", vote.agreement},
                          {"votes", std::move(per_source)}});
  }
  write_file_atomic(path, out);
}

std::vector<AsnVote> load_ip_asn(const std::string& path, ReadReport& report) {
  std::vector<AsnVote> out;
  for_each_line(path, report, [&](const json& j) {
    AsnVote vote;
    vote.ip = parse_ip_field(j, "ip");
    vote.resolved_asn = j.at("asn").get<Asn>();
    vote.agreement = j.at("agreement").get<double>();
    for (const auto& [source, asn] : j.at("votes").items()) {
      vote.per_source.emplace(source, asn.get<Asn>());
    }
    out.push_back(std::move(vote));
  });
  return out;
}

void save_owner_map(const std::string& path, const OwnerAsnMap& owners) {
  json owners_json = json::object();
  for (const auto& [name, entry] : owners) {
    json matches = json::array();
    for (const OwnerMatch& m : entry.matches) {
      matches.push_back(json{{"asn", m.asn},
                             {"dimension", to_string(m.dimension)},
                             {"role", to_string(m.role)}});
    }
    owners_json[name] =
        json{{"primary", entry.primary_asn}, {"matches", std::move(matches)}};
  }
  write_file_atomic(path, json{{"owners", std::move(owners_json)}}.dump(2) + "\n");
}

OwnerAsnMap load_owner_map(const std::string& path) {
  const json j = parse_file_json(path);
  OwnerAsnMap out;
  for (const auto& [name, value] : j.at("owners").items()) {
    OwnerAsnEntry entry;
    entry.owner_name = name;
    entry.primary_asn = value.at("primary").get<Asn>();
    for (const json& m : value.at("matches")) {
      OwnerMatch match;
      match.asn = m.at("asn").get<Asn>();
      const auto dim = m.at("dimension").get<std::string>();
      if (dim == "org-partial") {
        match.dimension = MatchDimension::kOrgPartial;
      } else if (dim == "abbreviation") {
        match.dimension = MatchDimension::kAbbreviation;
      } else if (dim == "as-name") {
        match.dimension = MatchDimension::kAsName;
      } else {
        throw InputError("unknown match dimension: " + dim);
      }
      match.role = m.at("role").get<std::string>() == "primary"
                       ? MatchRole::kPrimary
                       : MatchRole::kCustomer;
      entry.matches.push_back(match);
    }
    out.emplace(name, std::move(entry));
  }
  return out;
}

void save_link_mappings(const std::string& path,
                        const std::vector<LinkMapping>& mappings) {
  std::string out;
  for (const LinkMapping& m : mappings) {
    json candidates = json::array();
    for (const CableCandidate& c : m.candidates) {
      candidates.push_back(json{{"cable", c.cable_id},
                                {"score", c.prediction_score},
                                {"c", json::array({c.c1, c.c2})},
                                {"d", json::array({c.d1, c.d2})},
                                {"o", json::array({c.o1, c.o2})},
                                {"factor", c.category_factor},
                                {"landing_points",
                                 json::array({c.landing_point_a,
                                              c.landing_point_b})}});
    }
    append_line(
        out,
        json{{"a", m.link.a.to_string()},
             {"b", m.link.b.to_string()},
             {"label",
              json{{"geo_confidence", to_string(m.label.geo_confidence)},
                   {"submarine_class", to_string(m.label.submarine_class)},
                   {"geo_cluster_score", m.label.geo_cluster_score}}},
             {"candidates", std::move(candidates)},
             {"pruned_count", m.pruned_count}});
  }
  write_file_atomic(path, out);
}

std::vector<LinkMapping> load_link_mappings(const std::string& path,
                                            ReadReport& report) {
  std::vector<LinkMapping> out;
  for_each_line(path, report, [&](const json& j) {
    LinkMapping m;
    m.link = IpLink(parse_ip_field(j, "a"), parse_ip_field(j, "b"));
    const json& label = j.at("label");
    m.label.geo_confidence =
        geo_confidence_from_string(label.at("geo_confidence").get<std::string>());
    m.label.submarine_class = submarine_class_from_string(
        label.at("submarine_class").get<std::string>());
    m.label.geo_cluster_score = label.at("geo_cluster_score").get<double>();
    for (const json& cj : j.at("candidates")) {
      CableCandidate c;
      c.cable_id = cj.at("cable").get<std::string>();
      c.prediction_score = cj.at("score").get<double>();
      c.c1 = cj.at("c").at(0).get<double>();
      c.c2 = cj.at("c").at(1).get<double>();
      c.d1 = cj.at("d").at(0).get<double>();
      c.d2 = cj.at("d").at(1).get<double>();
      c.o1 = cj.at("o").at(0).get<int>();
      c.o2 = cj.at("o").at(1).get<int>();
      c.category_factor = cj.at("factor").get<double>();
      c.landing_point_a = cj.at("landing_points").at(0).get<std::string>();
      c.landing_point_b = cj.at("landing_points").at(1).get<std::string>();
      m.candidates.push_back(std::move(c));
    }
    m.pruned_count = j.at("pruned_count").get<std::uint64_t>();
    if (m.candidates.empty()) {
      throw InputError("mapping without candidates");
    }
    out.push_back(std::move(m));
  });
  return out;
}

// --- reports --------------------------------------------------------------

void save_stats(const std::string& path, const MappingStats& stats,
                const std::string& config_digest) {
  json j;
  j["config_digest"] = config_digest;
  j["total_links"] = stats.total_links;
  j["classified_links"] = stats.classified_links;
  j["unclassified_links"] = stats.unclassified_links;
  j["submarine_links"] = stats.submarine_links;
  j["mapped_links"] = stats.mapped_links;
  j["cables_covered"] = stats.cables_covered;
  j["landing_points_covered"] = stats.landing_points_covered;
  j["links_mapped"] = stats.links_mapped;
  j["links_by_category"] = stats.links_by_category;
  json per_size = json::object();
  for (const auto& [size, count] : stats.cables_per_link) {
    per_size[std::to_string(size)] = count;
  }
  j["cables_per_link"] = std::move(per_size);
  j["links_per_cable"] = stats.links_per_cable;
  j["score_cdf"] = stats.score_cdf;
  write_file_atomic(path, j.dump(2) + "\n");
}

namespace {

json link_json(const IpLink& link) {
  return json::array({link.a.to_string(), link.b.to_string()});
}

}  // namespace

void save_failure_report(const std::string& path, const FailureReport& report,
                         const std::string& config_digest) {
  json j;
  j["config_digest"] = config_digest;
  j["entity"] = report.entity_id;
  j["affected_cables"] = report.affected_cables;
  j["affected_mapped_links"] = report.affected_mapped_links;
  j["present_before"] = report.present_before;
  j["present_during"] = report.present_during;
  if (report.present_after) {
    j["present_after"] = *report.present_after;
  }
  json survivors = json::array();
  for (const auto& [link, score] : report.survivors) {
    survivors.push_back(json{{"link", link_json(link)}, {"score", score}});
  }
  j["survivors"] = std::move(survivors);
  json confirmed = json::array();
  for (const IpLink& link : report.confirmed_submarine) {
    confirmed.push_back(link_json(link));
  }
  j["confirmed_submarine"] = std::move(confirmed);
  write_file_atomic(path, j.dump(2) + "\n");
}

void save_operator_report(const std::string& path,
                          const OperatorReport& report,
                          const std::string& config_digest) {
  json j;
  j["config_digest"] = config_digest;
  j["operator"] = report.operator_name;
  j["matched"] = report.matched;
  j["total"] = report.total;
  j["missing"] = report.missing;
  j["predicted_cables"] = report.predicted_cables;
  write_file_atomic(path, j.dump(2) + "\n");
}

// --- analysis inputs -------------------------------------------------------

namespace {

std::set<IpLink> load_window(const json& window, const fs::path& base_dir) {
  std::set<IpLink> links;
  if (window.contains("links")) {
    for (const json& pair : window.at("links")) {
      const auto a = IpAddress::parse(pair.at(0).get<std::string>());
      const auto b = IpAddress::parse(pair.at(1).get<std::string>());
      if (!a || !b || *a == *b) {
        throw InputError("bad link in failure window");
      }
      links.emplace(*a, *b);
    }
    return links;
  }
  if (!window.contains("traces")) {
    throw InputError("failure window needs 'links' or 'traces'");
  }
  for (const json& p : window.at("traces")) {
    RawTraceSource source;
    const fs::path raw(p.get<std::string>());
    source.path = raw.is_absolute() ? raw.string() : (base_dir / raw).string();
    source.format = window.value("format", std::string("canonical-jsonl")) ==
                            "atlas-json"
                        ? TraceFormat::kAtlasJson
                        : TraceFormat::kCanonicalJsonl;
    IngestCounters counters;
    parse_traces(source, counters, [&](const TracerouteRecord& trace) {
      for (const IpLink& link : extract_links(trace)) {
        links.insert(link);
      }
    });
  }
  return links;
}

}  // namespace

FailureScenario load_failure_scenario(const std::string& path) {
  const json j = parse_file_json(path);
  FailureScenario scenario;
  const json& entity = j.at("entity");
  const auto kind = entity.at("kind").get<std::string>();
  if (kind == "cable") {
    scenario.kind = FailureScenario::EntityKind::kCable;
  } else if (kind == "landing_point") {
    scenario.kind = FailureScenario::EntityKind::kLandingPoint;
  } else {
    throw InputError("unknown failure entity kind: " + kind);
  }
  scenario.entity_id = entity.at("id").get<std::string>();

  const fs::path base_dir = fs::path(path).parent_path();
  const json& windows = j.at("windows");
  scenario.before = load_window(windows.at("before"), base_dir);
  scenario.during = load_window(windows.at("during"), base_dir);
  if (windows.contains("after")) {
    scenario.after = load_window(windows.at("after"), base_dir);
  }
  return scenario;
}

OperatorTruth load_operator_truth(const std::string& path) {
  const json j = parse_file_json(path);
  OperatorTruth truth;
  truth.operator_name = j.at("operator").get<std::string>();
  truth.cables = j.at("cables").get<std::vector<std::string>>();
  return truth;
}

}  // namespace cablemap
