#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cablemap/geo.hpp"
#include "cablemap/ip.hpp"
#include "cablemap/model.hpp"

namespace cablemap {

enum class TraceFormat {
  kCanonicalJsonl,  // one {id, probe:{lat,lon}, hops:[...]} object per line
  kAtlasJson,       // RIPE-Atlas-shaped result objects, one per line or an array
};

struct RawTraceSource {
  TraceFormat format = TraceFormat::kCanonicalJsonl;
  std::string path;
  // Atlas results reference probes by id; this resolves them to coordinates.
  std::map<std::int64_t, GeoPoint> probe_locations;
};

struct IngestCounters {
  std::uint64_t traces_seen = 0;     // syntactically parseable records
  std::uint64_t traces_kept = 0;
  std::uint64_t dropped_loop = 0;    // same IP at two different hop indices
  std::uint64_t dropped_invalid = 0; // unparseable, zero-hop, unknown probe
  std::uint64_t links_emitted = 0;   // pre-dedup, summed over traces
};

// Streams records from one source, dropping loop and invalid traceroutes.
// Malformed lines increment dropped_invalid and never abort the stream; an
// unreadable file throws InputError.
void parse_traces(const RawTraceSource& source, IngestCounters& counters,
                  const std::function<void(const TracerouteRecord&)>& sink);

// Links between consecutive hop indices whose IPs are both present, public
// and valid. A starred, missing or non-public hop breaks adjacency.
std::vector<IpLink> extract_links(const TracerouteRecord& trace);

// Evidence sample for SoL validation: self-reported probe position plus the
// minimum RTT of one hop occurrence.
struct LatencySample {
  GeoPoint probe_location;
  double min_rtt_ms = 0.0;
};

// One sample per (ip, traceroute) occurrence, for every public responsive
// hop. Covers all IPs seen, not only those that end up in links.
void collect_latency_evidence(
    const TracerouteRecord& trace,
    std::unordered_map<IpAddress, std::vector<LatencySample>, IpAddressHash>&
        evidence);

// Deduplicated link table plus the unique endpoint set.
struct LinkTable {
  std::map<IpLink, std::uint64_t> occurrences;
  std::set<IpAddress> unique_ips;

  void add(const IpLink& link) {
    ++occurrences[link];
    unique_ips.insert(link.a);
    unique_ips.insert(link.b);
  }

  void merge(const LinkTable& other) {
    for (const auto& [link, count] : other.occurrences) {
      occurrences[link] += count;
    }
    unique_ips.insert(other.unique_ips.begin(), other.unique_ips.end());
  }
};

}  // namespace cablemap
