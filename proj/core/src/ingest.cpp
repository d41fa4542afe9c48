#include "cablemap/ingest.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "cablemap/errors.hpp"

namespace cablemap {

namespace {

using nlohmann::json;

// Returns false for records that cannot be mapped onto the canonical shape.
bool parse_canonical_record(const json& j, TracerouteRecord& out) {
  if (!j.is_object() || !j.contains("probe") || !j.contains("hops")) {
    return false;
  }
  const json& probe = j.at("probe");
  if (!probe.is_object() || !probe.contains("lat") || !probe.contains("lon")) {
    return false;
  }
  out.id = j.value("id", "");
  out.probe_location =
      GeoPoint(probe.at("lat").get<double>(), probe.at("lon").get<double>());

  int last_index = -1;
  for (const json& h : j.at("hops")) {
    TracerouteHop hop;
    hop.index = h.at("idx").get<int>();
    if (hop.index <= last_index) {
      return false;  // hop indices must be strictly increasing
    }
    last_index = hop.index;
    if (h.contains("ip") && !h.at("ip").is_null()) {
      hop.ip = IpAddress::parse(h.at("ip").get<std::string>());
      if (!hop.ip) {
        return false;
      }
    }
    if (h.contains("rtts")) {
      for (const json& r : h.at("rtts")) {
        const double v = r.get<double>();
        if (v > 0.0) {
          hop.rtts_ms.push_back(v);
        }
      }
    }
    out.hops.push_back(std::move(hop));
  }
  return !out.hops.empty();
}

// RIPE-Atlas-shaped result object: {msm_id, prb_id, result:[{hop, result:
// [{from, rtt} | {x:"*"}]}]}. The probe position comes from the source's
// probe table.
bool parse_atlas_record(const json& j,
                        const std::map<std::int64_t, GeoPoint>& probes,
                        TracerouteRecord& out) {
  if (!j.is_object() || !j.contains("result") || !j.contains("prb_id")) {
    return false;
  }
  const auto prb = j.at("prb_id").get<std::int64_t>();
  const auto it = probes.find(prb);
  if (it == probes.end()) {
    return false;  // unknown probe, position unavailable
  }
  out.probe_location = it->second;
  out.id = std::to_string(j.value("msm_id", std::int64_t{0})) + "-" +
           std::to_string(prb);
  if (j.contains("timestamp")) {
    out.id += "-" + std::to_string(j.at("timestamp").get<std::int64_t>());
  }

  int last_index = -1;
  for (const json& h : j.at("result")) {
    if (!h.is_object() || !h.contains("hop")) {
      continue;  // error / late-packet entries
    }
    TracerouteHop hop;
    hop.index = h.at("hop").get<int>();
    if (hop.index <= last_index) {
      return false;
    }
    last_index = hop.index;
    if (h.contains("result")) {
      // Pick the first responding interface; keep the RTTs it reported.
      std::string from;
      for (const json& reply : h.at("result")) {
        if (!reply.is_object() || !reply.contains("from")) {
          continue;
        }
        const auto addr = reply.at("from").get<std::string>();
        if (from.empty()) {
          from = addr;
          hop.ip = IpAddress::parse(addr);
          if (!hop.ip) {
            return false;
          }
        }
        if (addr == from && reply.contains("rtt")) {
          const double v = reply.at("rtt").get<double>();
          if (v > 0.0) {
            hop.rtts_ms.push_back(v);
          }
        }
      }
    }
    out.hops.push_back(std::move(hop));
  }
  return !out.hops.empty();
}

bool has_ip_loop(const TracerouteRecord& trace) {
  std::unordered_set<IpAddress, IpAddressHash> seen;
  for (const TracerouteHop& hop : trace.hops) {
    if (hop.ip && !seen.insert(*hop.ip).second) {
      return true;
    }
  }
  return false;
}

}  // namespace

void parse_traces(const RawTraceSource& source, IngestCounters& counters,
                  const std::function<void(const TracerouteRecord&)>& sink) {
  std::ifstream in(source.path);
  if (!in) {
    throw InputError("cannot open trace file: " + source.path);
  }

  auto consume = [&](const json& j) {
    ++counters.traces_seen;
    TracerouteRecord record;
    bool ok = false;
    try {
      ok = source.format == TraceFormat::kCanonicalJsonl
               ? parse_canonical_record(j, record)
               : parse_atlas_record(j, source.probe_locations, record);
    } catch (const json::exception&) {
      ok = false;
    } catch (const std::invalid_argument&) {
      ok = false;  // out-of-range coordinates
    }
    if (!ok) {
      ++counters.dropped_invalid;
      return;
    }
    if (has_ip_loop(record)) {
      ++counters.dropped_loop;
      return;
    }
    ++counters.traces_kept;
    sink(record);
  };

  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    // Tolerate a whole-file JSON array (the Atlas API download format).
    if (first) {
      first = false;
      std::size_t pos = line.find_first_not_of(" \t\r");
      if (pos != std::string::npos && line[pos] == '[') {
        std::string rest((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        json arr;
        try {
          arr = json::parse(line + "\n" + rest);
        } catch (const json::exception&) {
          throw InputError("malformed JSON array in trace file: " + source.path);
        }
        for (const json& j : arr) {
          consume(j);
        }
        return;
      }
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      ++counters.traces_seen;
      ++counters.dropped_invalid;
      continue;
    }
    consume(j);
  }
}

std::vector<IpLink> extract_links(const TracerouteRecord& trace) {
  std::vector<IpLink> links;
  for (std::size_t i = 0; i + 1 < trace.hops.size(); ++i) {
    const TracerouteHop& h1 = trace.hops[i];
    const TracerouteHop& h2 = trace.hops[i + 1];
    if (h2.index != h1.index + 1) {
      continue;  // a missing hop index breaks adjacency
    }
    if (!h1.ip || !h2.ip) {
      continue;  // starred hop
    }
    if (!h1.ip->is_public_unicast() || !h2.ip->is_public_unicast()) {
      continue;
    }
    if (*h1.ip == *h2.ip) {
      continue;  // self-link: same interface answering twice
    }
    links.emplace_back(*h1.ip, *h2.ip);
  }
  return links;
}

void collect_latency_evidence(
    const TracerouteRecord& trace,
    std::unordered_map<IpAddress, std::vector<LatencySample>, IpAddressHash>&
        evidence) {
  for (const TracerouteHop& hop : trace.hops) {
    if (!hop.ip || hop.rtts_ms.empty() || !hop.ip->is_public_unicast()) {
      continue;
    }
    double min_rtt = hop.rtts_ms.front();
    for (double v : hop.rtts_ms) {
      min_rtt = std::min(min_rtt, v);
    }
    evidence[*hop.ip].push_back({trace.probe_location, min_rtt});
  }
}

}  // namespace cablemap
