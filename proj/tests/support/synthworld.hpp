#pragma once

// Deterministic synthetic world generator: an ocean between two coasts,
// cable rows spaced far enough apart that pruning has teeth, plus optional
// parallel corridors, a domestic island cable system and ingest noise.
// Used by the pipeline tests, the acceptance suite, and the bundled
// fixture under data/fixtures/mini.

#include <cstdint>
#include <string>
#include <vector>

#include "cablemap/ip.hpp"

namespace cablemap::synth {

struct SynthSpec {
  std::uint64_t seed = 20240501;
  int isolated_cables = 26;
  int parallel_corridors = 2;  // two cables each, distinct owners
  int links = 300;
  double perturb_km = 10.0;    // endpoint drift from the landing point
  int good_sources = 8;
  int bad_sources = 2;         // consistent far-off (~555 km) placements
  bool with_domestic = false;  // island country with two short cables
  int domestic_links = 0;
  bool with_noise = false;     // malformed lines, loops, private hops,
                               // geolocation-less links
};

struct SynthTruth {
  IpLink link;
  std::string true_cable;
  bool owner_disambiguated = false;  // endpoint ASNs name the true owner
  bool parallel = false;             // rides a parallel corridor
};

struct SynthWorld {
  SynthSpec spec;

  std::string traces_jsonl;
  std::string geo_observations_jsonl;
  std::string asn_records_jsonl;
  std::string as_info_jsonl;
  std::string cables_json;
  std::string country_geo_json;
  std::string config_json;
  std::string failure_scenario_json;   // empty unless with_domestic
  std::string traces_before_jsonl;     // scenario window traces
  std::string traces_during_jsonl;
  std::string traces_after_jsonl;
  std::string operator_truth_json;     // empty unless corridors exist

  std::vector<SynthTruth> truth;           // cross-ocean links
  std::vector<IpLink> domestic;            // U-class island links
  std::vector<std::string> domestic_cables;
  IpLink survivor;                         // the planted during-failure link
  std::uint64_t expected_dropped_loop = 0;
  std::uint64_t expected_dropped_invalid = 0;
  std::uint64_t geolocation_less_links = 0;

  // Writes every non-empty payload into dir (created if needed) and returns
  // the list of pipeline input paths (excluding window trace files).
  std::vector<std::string> write(const std::string& dir) const;
};

SynthWorld generate_world(const SynthSpec& spec);

}  // namespace cablemap::synth
