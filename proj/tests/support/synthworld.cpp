#include "synthworld.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>

#include <json.hpp>

#include "cablemap/config.hpp"
#include "cablemap/geo.hpp"
#include "cablemap/jsonio.hpp"
#include "cablemap/ownermap.hpp"

namespace cablemap::synth {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kWestLon = -10.0;
constexpr double kEastLon = 10.0;
constexpr double kRowSpacingDeg = 3.0;        // ~334 km between cable rows
constexpr double kCorridorOffsetDeg = 0.05;   // ~5.6 km between parallel cables
constexpr double kBadOffsetDeg = 5.0;         // ~555 km consistent mislocation

struct CableSpec {
  std::string id;
  std::string name;
  std::string owner;  // empty = unowned
  Asn owner_asn = 0;
  std::string lp_west;
  std::string lp_east;
  GeoPoint west;
  GeoPoint east;
  bool parallel = false;
};

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine);
  }
};

GeoPoint jitter(Rng& rng, const GeoPoint& base, double max_km) {
  const double d_lat = rng.uniform(-max_km, max_km) / 111.32;
  const double cos_lat =
      std::max(0.2, std::cos(base.latitude_deg * std::numbers::pi / 180.0));
  const double d_lon = rng.uniform(-max_km, max_km) / (111.32 * cos_lat);
  return GeoPoint(std::clamp(base.latitude_deg + d_lat, -89.0, 89.0),
                  std::clamp(base.longitude_deg + d_lon, -179.0, 179.0));
}

std::string make_ip(std::size_t n, bool v6) {
  if (v6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "2001:db8:0:1::%zx", n + 1);
    return buf;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "20.%zu.%zu.%zu", (n / 64516) % 254,
                (n / 254) % 254 + 1, n % 254 + 1);
  return buf;
}

json point_fields(const GeoPoint& p) {
  return json{{"lat", p.latitude_deg}, {"lon", p.longitude_deg}};
}

json trace_json(const std::string& id, const GeoPoint& probe,
                const std::string& ip1, double rtt1, const std::string& ip2,
                double rtt2) {
  return json{{"id", id},
              {"probe", point_fields(probe)},
              {"hops", json::array({json{{"idx", 1},
                                         {"ip", ip1},
                                         {"rtts", json::array({rtt1, rtt1 + 0.4})}},
                                    json{{"idx", 2},
                                         {"ip", ip2},
                                         {"rtts", json::array({rtt2, rtt2 + 0.6})}}})}};
}

const char* kSources[10] = {"src-00", "src-01", "src-02", "src-03", "src-04",
                            "src-05", "src-06", "src-07", "src-08", "src-09"};

void emit_observations(std::string& out, Rng& rng, const std::string& ip,
                       const GeoPoint& truth, const std::string& country,
                       const std::string& continent, int good, int bad) {
  for (int s = 0; s < good + bad; ++s) {
    GeoPoint base = truth;
    if (s >= good) {
      base = GeoPoint(std::clamp(truth.latitude_deg + kBadOffsetDeg, -89.0, 89.0),
                      truth.longitude_deg);
    }
    const GeoPoint placed = jitter(rng, base, 3.0);
    json j = point_fields(placed);
    j["ip"] = ip;
    j["source"] = kSources[s];
    j["country"] = country;
    j["continent"] = continent;
    out += j.dump();
    out += '\n';
  }
}

void emit_asn_records(std::string& out, const std::string& ip, Asn asn,
                      bool diverge) {
  const char* sources[4] = {"caida", "rpki", "radb", "cymru"};
  for (int s = 0; s < 4; ++s) {
    const Asn value = (diverge && s == 3) ? Asn{64999} : asn;
    out += json{{"ip", ip}, {"source", sources[s]}, {"asn", value}}.dump();
    out += '\n';
  }
}

}  // namespace

SynthWorld generate_world(const SynthSpec& spec) {
  SynthWorld world;
  world.spec = spec;
  Rng rng(spec.seed);

  const int rows = spec.isolated_cables + spec.parallel_corridors;
  auto row_lat = [&](int r) {
    return (r - (rows - 1) / 2.0) * kRowSpacingDeg;
  };

  // --- physical layer -------------------------------------------------
  std::vector<CableSpec> cables;
  json lps = json::array();
  auto add_lp = [&](const std::string& id, const GeoPoint& p,
                    const std::string& country) {
    json j = point_fields(p);
    j["id"] = id;
    j["country"] = country;
    lps.push_back(std::move(j));
  };

  for (int c = 0; c < spec.isolated_cables; ++c) {
    CableSpec cable;
    char id[32];
    std::snprintf(id, sizeof(id), "cable-%02d", c);
    cable.id = id;
    cable.name = "Transocean Segment " + std::to_string(c);
    if (c % 2 == 0) {
      cable.owner = "Carrier " + std::to_string(c) + " Systems";
      cable.owner_asn = 65000 + static_cast<Asn>(c);
    }
    cable.west = GeoPoint(row_lat(c), kWestLon);
    cable.east = GeoPoint(row_lat(c), kEastLon);
    cable.lp_west = std::string("lp-w-") + std::to_string(c);
    cable.lp_east = std::string("lp-e-") + std::to_string(c);
    add_lp(cable.lp_west, cable.west, "QW");
    add_lp(cable.lp_east, cable.east, "QE");
    cables.push_back(std::move(cable));
  }
  for (int k = 0; k < spec.parallel_corridors; ++k) {
    const double lat = row_lat(spec.isolated_cables + k);
    const char* suffix[2] = {"a", "b"};
    const char* owner_kind[2] = {"Alpha Telecom", "Beta Networks"};
    for (int side = 0; side < 2; ++side) {
      CableSpec cable;
      cable.id = "par-" + std::to_string(k) + "-" + suffix[side];
      cable.name = "Corridor " + std::to_string(k) + " " +
                   (side == 0 ? "North" : "South");
      cable.owner = "Corridor " + std::to_string(k) + " " + owner_kind[side];
      cable.owner_asn = 65100 + static_cast<Asn>(2 * k + side);
      const double offset = side == 0 ? kCorridorOffsetDeg : -kCorridorOffsetDeg;
      cable.west = GeoPoint(lat + offset, kWestLon);
      cable.east = GeoPoint(lat + offset, kEastLon);
      cable.lp_west = "lp-w-p" + std::to_string(k) + suffix[side];
      cable.lp_east = "lp-e-p" + std::to_string(k) + suffix[side];
      cable.parallel = true;
      add_lp(cable.lp_west, cable.west, "QW");
      add_lp(cable.lp_east, cable.east, "QE");
      cables.push_back(std::move(cable));
    }
  }

  std::vector<CableSpec> domestic_cables;
  if (spec.with_domestic) {
    const GeoPoint h(-5.0, 60.0);
    const GeoPoint g(-5.0, 65.4);
    const GeoPoint k2(-5.0, 54.6);
    add_lp("lp-qy-h", h, "QY");
    add_lp("lp-qy-g", g, "QY");
    add_lp("lp-qy-k", k2, "QY");
    CableSpec f;
    f.id = "cable-qy-f";
    f.name = "Island East Festoon";
    f.lp_west = "lp-qy-h";
    f.lp_east = "lp-qy-g";
    f.west = h;
    f.east = g;
    domestic_cables.push_back(f);
    CableSpec s;
    s.id = "cable-qy-s";
    s.name = "Island West Link";
    s.lp_west = "lp-qy-h";
    s.lp_east = "lp-qy-k";
    s.west = h;
    s.east = k2;
    domestic_cables.push_back(s);
    world.domestic_cables = {f.id, s.id};
  }

  json cables_json = json::array();
  auto cable_entry = [](const CableSpec& c) {
    json j{{"id", c.id},
           {"name", c.name},
           {"landing_points", json::array({c.lp_west, c.lp_east})},
           {"rfs", 2018}};
    j["owners"] =
        c.owner.empty() ? json::array() : json::array({c.owner});
    return j;
  };
  for (const CableSpec& c : cables) {
    cables_json.push_back(cable_entry(c));
  }
  for (const CableSpec& c : domestic_cables) {
    cables_json.push_back(cable_entry(c));
  }
  world.cables_json =
      json{{"cables", std::move(cables_json)}, {"landing_points", std::move(lps)}}
          .dump(2) +
      "\n";

  world.country_geo_json =
      json{{"QW", {{"continent", "NA"}, {"neighbors", json::array()}}},
           {"QE", {{"continent", "EU"}, {"neighbors", json::array()}}},
           {"QY", {{"continent", "AS"}, {"neighbors", json::array()}}}}
          .dump(2) +
      "\n";

  // --- AS information ---------------------------------------------------
  {
    std::string out;
    auto record = [&](Asn asn, const std::string& org, const std::string& as_name,
                      int rank, const std::string& country,
                      std::vector<Asn> customers = {}) {
      json j{{"asn", asn}, {"org", org},     {"as_name", as_name},
             {"rank", rank}, {"country", country}};
      j["customers"] = customers;
      out += j.dump();
      out += '\n';
    };
    for (const CableSpec& c : cables) {
      if (c.owner.empty()) {
        continue;
      }
      const bool corridor = c.parallel;
      std::string as_name = names::abbreviation(c.owner);
      for (char& ch : as_name) ch = static_cast<char>(std::toupper(ch));
      as_name += "-AS";
      const int rank = corridor ? 40 + static_cast<int>(c.owner_asn - 65100)
                                : 150 + static_cast<int>(c.owner_asn - 65000);
      std::vector<Asn> customers;
      if (c.owner == "Carrier 2 Systems") {
        customers.push_back(64901);
      }
      record(c.owner_asn, c.owner, as_name, rank, "QW", customers);
    }
    // Distractors: a legitimate customer, a rejected namesake, an unrelated org.
    record(64901, "Carrier 2 Systems Pacific", "C2SP-AS", 820, "QE");
    record(64902, "Carrier 4 Systems Global", "C4SG-AS", 830, "QW");
    record(64903, "Quantum Widget Foundry", "QWF-AS", 5, "QQ");
    world.as_info_jsonl = std::move(out);
  }

  // --- links, traces, observations, ASN votes ----------------------------
  std::string traces, observations, asn_records;
  std::size_t ip_counter = 0;
  const PipelineConfig defaults;

  auto next_ip = [&](bool v6) { return make_ip(ip_counter++, v6); };

  for (int i = 0; i < spec.links; ++i) {
    const CableSpec& cable = cables[i % cables.size()];
    const bool v6 = spec.with_noise && i % 17 == 3;
    const std::string ip_w = next_ip(v6);
    const std::string ip_e = next_ip(v6);
    const GeoPoint true_w = jitter(rng, cable.west, spec.perturb_km);
    const GeoPoint true_e = jitter(rng, cable.east, spec.perturb_km);

    const int occurrences = 1 + i % 3;
    for (int t = 0; t < occurrences; ++t) {
      traces += trace_json("t-" + std::to_string(i) + "-" + std::to_string(t),
                           true_w, ip_w, 8.0, ip_e, 25.0)
                    .dump();
      traces += '\n';
    }

    const bool geolocation_less = spec.with_noise && i % 41 == 40;
    if (geolocation_less) {
      ++world.geolocation_less_links;
    } else {
      emit_observations(observations, rng, ip_w, true_w, "QW", "NA",
                        spec.good_sources, spec.bad_sources);
      emit_observations(observations, rng, ip_e, true_e, "QE", "EU",
                        spec.good_sources, spec.bad_sources);
    }

    SynthTruth truth;
    truth.true_cable = cable.id;
    truth.parallel = cable.parallel;
    // Serial of this link within its cable, so owner assignment alternates
    // per cable rather than correlating with the cable index.
    const int serial = i / static_cast<int>(cables.size());
    const bool owner_link = cable.parallel
                                ? serial % 2 == 0
                                : (cable.owner_asn != 0 && serial % 3 == 0);
    truth.owner_disambiguated = cable.parallel && owner_link;

    const bool no_asn = spec.with_noise && i % 25 == 7 && !owner_link;
    if (!no_asn) {
      const Asn asn = owner_link ? cable.owner_asn
                                 : 64000 + static_cast<Asn>(i % 500);
      const bool diverge = spec.with_noise && i % 10 == 5;
      emit_asn_records(asn_records, ip_w, asn, diverge);
      emit_asn_records(asn_records, ip_e, asn, false);
    }

    const auto a = IpAddress::parse(ip_w);
    const auto b = IpAddress::parse(ip_e);
    truth.link = IpLink(*a, *b);
    world.truth.push_back(std::move(truth));
  }

  // Domestic island links: potential-submarine class, two short cables.
  std::string before, during, after;
  if (spec.with_domestic) {
    for (int j = 0; j < spec.domestic_links; ++j) {
      const CableSpec& cable = domestic_cables[j % domestic_cables.size()];
      const std::string ip_1 = next_ip(false);
      const std::string ip_2 = next_ip(false);
      const GeoPoint true_1 = jitter(rng, cable.west, spec.perturb_km);
      const GeoPoint true_2 = jitter(rng, cable.east, spec.perturb_km);

      const json trace =
          trace_json("qy-" + std::to_string(j), true_1, ip_1, 5.0, ip_2, 9.0);
      traces += trace.dump();
      traces += '\n';

      emit_observations(observations, rng, ip_1, true_1, "QY", "AS",
                        spec.good_sources, spec.bad_sources);
      emit_observations(observations, rng, ip_2, true_2, "QY", "AS",
                        spec.good_sources, spec.bad_sources);
      emit_asn_records(asn_records, ip_1, 64800 + static_cast<Asn>(j), false);
      emit_asn_records(asn_records, ip_2, 64800 + static_cast<Asn>(j), false);

      const IpLink link(*IpAddress::parse(ip_1), *IpAddress::parse(ip_2));
      world.domestic.push_back(link);
      if (j == 0) {
        world.survivor = link;
      }

      before += trace.dump();
      before += '\n';
      after += trace.dump();
      after += '\n';
      if (j == 0) {
        during += trace.dump();
        during += '\n';
      }
    }
    // Unaffected cross-ocean links appear in every window and must never be
    // counted against the failed entity.
    for (int i = 0; i < 3 && i < spec.links; ++i) {
      const SynthTruth& t = world.truth[static_cast<std::size_t>(i)];
      const json trace = trace_json("w-" + std::to_string(i),
                                    GeoPoint(0.0, kWestLon),
                                    t.link.a.to_string(), 8.0,
                                    t.link.b.to_string(), 25.0);
      before += trace.dump();
      before += '\n';
      during += trace.dump();
      during += '\n';
      after += trace.dump();
      after += '\n';
    }

    world.failure_scenario_json =
        json{{"entity", {{"kind", "landing_point"}, {"id", "lp-qy-h"}}},
             {"windows",
              {{"before", {{"traces", json::array({"traces_before.jsonl"})}}},
               {"during", {{"traces", json::array({"traces_during.jsonl"})}}},
               {"after", {{"traces", json::array({"traces_after.jsonl"})}}}}}}
            .dump(2) +
        "\n";
    world.traces_before_jsonl = std::move(before);
    world.traces_during_jsonl = std::move(during);
    world.traces_after_jsonl = std::move(after);
  }

  if (spec.with_noise) {
    traces += "{this is not json\n";
    ++world.expected_dropped_invalid;
    traces += json{{"id", "noise-loop"},
                   {"probe", point_fields(GeoPoint(0.0, 0.0))},
                   {"hops",
                    json::array({json{{"idx", 1},
                                      {"ip", "198.51.100.1"},
                                      {"rtts", json::array({5.0})}},
                                 json{{"idx", 2},
                                      {"ip", "198.51.100.2"},
                                      {"rtts", json::array({7.0})}},
                                 json{{"idx", 3},
                                      {"ip", "198.51.100.1"},
                                      {"rtts", json::array({9.0})}}})}}
                  .dump();
    traces += '\n';
    ++world.expected_dropped_loop;
    traces += json{{"id", "noise-empty"},
                   {"probe", point_fields(GeoPoint(0.0, 0.0))},
                   {"hops", json::array()}}
                  .dump();
    traces += '\n';
    ++world.expected_dropped_invalid;
    traces += json{{"id", "noise-private"},
                   {"probe", point_fields(GeoPoint(0.0, 0.0))},
                   {"hops",
                    json::array({json{{"idx", 1},
                                      {"ip", "198.51.100.3"},
                                      {"rtts", json::array({4.0})}},
                                 json{{"idx", 2},
                                      {"ip", "10.0.0.1"},
                                      {"rtts", json::array({5.0})}},
                                 json{{"idx", 3},
                                      {"ip", "198.51.100.4"},
                                      {"rtts", json::array({6.0})}}})}}
                  .dump();
    traces += '\n';
  }

  world.traces_jsonl = std::move(traces);
  world.geo_observations_jsonl = std::move(observations);
  world.asn_records_jsonl = std::move(asn_records);
  world.config_json = defaults.to_json_text();

  if (spec.parallel_corridors > 0) {
    std::string corridor_cable_name;
    for (const CableSpec& c : cables) {
      if (c.id == "par-0-a") {
        corridor_cable_name = c.name;
      }
    }
    world.operator_truth_json =
        json{{"operator", "Corridor 0 Alpha Telecom"},
             {"cables", json::array({corridor_cable_name})}}
            .dump(2) +
        "\n";
  }
  return world;
}

std::vector<std::string> SynthWorld::write(const std::string& dir) const {
  fs::create_directories(dir);
  auto emit = [&](const char* name, const std::string& content) {
    const std::string path = (fs::path(dir) / name).string();
    write_file_atomic(path, content);
    return path;
  };

  std::vector<std::string> inputs;
  inputs.push_back(emit("traces.jsonl", traces_jsonl));
  inputs.push_back(emit("geo_observations.jsonl", geo_observations_jsonl));
  inputs.push_back(emit("asn_records.jsonl", asn_records_jsonl));
  inputs.push_back(emit("as_info.jsonl", as_info_jsonl));
  inputs.push_back(emit("cables.json", cables_json));
  inputs.push_back(emit("country_geo.json", country_geo_json));
  emit("config.json", config_json);
  if (!failure_scenario_json.empty()) {
    emit("traces_before.jsonl", traces_before_jsonl);
    emit("traces_during.jsonl", traces_during_jsonl);
    emit("traces_after.jsonl", traces_after_jsonl);
    inputs.push_back(emit("failure_scenario.json", failure_scenario_json));
  }
  if (!operator_truth_json.empty()) {
    inputs.push_back(emit("operator_truth.json", operator_truth_json));
  }
  return inputs;
}

}  // namespace cablemap::synth
