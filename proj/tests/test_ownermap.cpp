#include <random>

#include <doctest.h>

#include "cablemap/ownermap.hpp"

using namespace cablemap;

namespace {

AsRecord record(Asn asn, const std::string& org, const std::string& as_name,
                int rank, const std::string& country = "US",
                std::set<Asn> customers = {}) {
  AsRecord r;
  r.asn = asn;
  r.org_name = org;
  r.as_name = as_name;
  r.rank = rank;
  r.country = country;
  r.customers = std::move(customers);
  return r;
}

IpAddress ip(const char* text) { return *IpAddress::parse(text); }

}  // namespace

TEST_CASE("name normalization utilities") {
  CHECK(names::normalize("Orange S.A.") == "orange s a");
  CHECK(names::compact("Korea  Telecom") == "koreatelecom");
  CHECK(names::abbreviation("Korea Telecom") == "kt");
  CHECK(names::abbreviation("Level 3") == "l3");
  CHECK(names::abbreviation("Orange Cote d'Ivoire") == "ocdi");
  CHECK(names::tokens("LUMEN-LEGACY-L3-CUSTOMER-SHARED-USE") ==
        std::vector<std::string>{"lumen", "legacy", "l3", "customer", "shared",
                                 "use"});
}

TEST_CASE("resolve_asn: unanimity, majority and tie-break") {
  const PipelineConfig cfg;
  const auto target = ip("1.2.3.4");

  auto vote = resolve_asn(
      target,
      {{"caida", 15169}, {"rpki", 15169}, {"radb", 15169}, {"cymru", 15169}},
      cfg);
  REQUIRE(vote);
  CHECK(vote->resolved_asn == 15169);
  CHECK(vote->agreement == 1.0);

  vote = resolve_asn(
      target, {{"caida", 1}, {"rpki", 1}, {"radb", 1}, {"cymru", 2}}, cfg);
  REQUIRE(vote);
  CHECK(vote->resolved_asn == 1);
  CHECK(vote->agreement == 0.75);

  // Even split: the configured priority list decides. caida outranks rpki.
  vote = resolve_asn(target,
                     {{"caida", 7}, {"radb", 7}, {"rpki", 9}, {"cymru", 9}},
                     cfg);
  REQUIRE(vote);
  CHECK(vote->resolved_asn == 7);
  CHECK(vote->agreement == 0.5);

  vote = resolve_asn(target, {{"rpki", 9}, {"caida", 7}}, cfg);
  REQUIRE(vote);
  CHECK(vote->resolved_asn == 7);

  CHECK_FALSE(resolve_asn(target, {}, cfg).has_value());
}

TEST_CASE("resolve_asn ignores sources missing from the priority list last") {
  PipelineConfig cfg;
  cfg.asn_source_priority = {"alpha"};
  // Tie between 5 (beta) and 6 (alpha): alpha is prioritized.
  const auto vote =
      resolve_asn(ip("1.2.3.4"), {{"beta", 5}, {"alpha", 6}}, cfg);
  REQUIRE(vote);
  CHECK(vote->resolved_asn == 6);
}

TEST_CASE("removing a non-winning source keeps majority outcomes") {
  const PipelineConfig cfg;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> asn_pick(1, 3);
  const std::vector<std::string> sources = {"caida", "rpki", "radb", "cymru",
                                            "extra"};
  for (int round = 0; round < 200; ++round) {
    std::map<std::string, Asn> votes;
    for (const auto& s : sources) {
      votes[s] = static_cast<Asn>(asn_pick(rng));
    }
    const auto full = resolve_asn(ip("1.2.3.4"), votes, cfg);
    REQUIRE(full);
    if (full->agreement <= 0.5) {
      continue;
    }
    for (const auto& s : sources) {
      if (votes.at(s) == full->resolved_asn) {
        continue;
      }
      auto reduced = votes;
      reduced.erase(s);
      const auto vote = resolve_asn(ip("1.2.3.4"), reduced, cfg);
      REQUIRE(vote);
      CHECK(vote->resolved_asn == full->resolved_asn);
    }
  }
}

TEST_CASE("KT resolves to Korea Telecom, not Kazakh Telecom") {
  const PipelineConfig cfg;
  const std::vector<AsRecord> records = {
      record(4766, "Korea Telecom", "KIXS-AS-KR", 120, "KR"),
      record(9198, "Kazakh Telecom", "KAZTELECOM-AS", 800, "KZ"),
  };
  const auto entry = match_owner("KT", records, {"KR"}, cfg);
  REQUIRE(entry);
  CHECK(entry->primary_asn == 4766);
  REQUIRE(entry->matches.size() == 1);  // Kazakh Telecom is not a customer
  CHECK(entry->matches[0].dimension == MatchDimension::kAbbreviation);
  CHECK(entry->matches[0].role == MatchRole::kPrimary);
}

TEST_CASE("Orange keeps its customers") {
  const PipelineConfig cfg;
  const std::vector<AsRecord> records = {
      record(5511, "Orange S.A.", "OPENTRANSIT", 14, "FR", {8346, 30985}),
      record(8346, "Orange Cote d'Ivoire", "SONATEL-AS", 500, "CI"),
      record(30985, "Orange Mali SA", "OML", 900, "ML"),
      record(3215, "Orange Business", "FT-AS", 200, "FR"),  // not a customer
  };
  const auto entry = match_owner("Orange", records, {"FR", "CI", "ML"}, cfg);
  REQUIRE(entry);
  CHECK(entry->primary_asn == 5511);
  const auto asns = entry->asns();
  CHECK(asns == std::set<Asn>{5511, 8346, 30985});
  for (const OwnerMatch& m : entry->matches) {
    if (m.asn != entry->primary_asn) {
      CHECK(m.role == MatchRole::kCustomer);
    }
  }
}

TEST_CASE("Level 3 matches the legacy Lumen AS name via dimension three") {
  const PipelineConfig cfg;
  const std::vector<AsRecord> records = {
      record(10753, "Lumen Technologies, Inc.",
             "LUMEN-LEGACY-L3-CUSTOMER-SHARED-USE", 180, "US"),
      record(64512, "Unrelated Networks", "UNRELATED-AS", 50, "US"),
  };
  const auto entry = match_owner("Level 3", records, {"US"}, cfg);
  REQUIRE(entry);
  CHECK(entry->primary_asn == 10753);
  CHECK(entry->matches[0].dimension == MatchDimension::kAsName);
}

TEST_CASE("country validation applies to high-ranked primaries only") {
  const PipelineConfig cfg;
  // Rank 10 primary operating in the wrong country is rejected; the next
  // hit in rank order takes over.
  const std::vector<AsRecord> records = {
      record(111, "Pacific Crossing Networks", "PCN-1", 10, "ZA"),
      record(222, "Pacific Crossing Networks", "PCN-2", 300, "JP"),
  };
  const auto entry = match_owner("Pacific Crossing", records, {"JP", "US"}, cfg);
  REQUIRE(entry);
  CHECK(entry->primary_asn == 222);

  // With an empty country set the check is disabled.
  const auto unchecked = match_owner("Pacific Crossing", records, {}, cfg);
  REQUIRE(unchecked);
  CHECK(unchecked->primary_asn == 111);
}

TEST_CASE("unmatched owners resolve to nothing") {
  const PipelineConfig cfg;
  const std::vector<AsRecord> records = {
      record(1, "Alpha", "ALPHA-AS", 1, "US"),
  };
  CHECK_FALSE(match_owner("Zed Cable Consortium", records, {}, cfg));
  CHECK_FALSE(match_owner("", records, {}, cfg));
}

TEST_CASE("abbreviations shorter than two letters never match") {
  const PipelineConfig cfg;
  const std::vector<AsRecord> records = {
      record(7, "Telecom", "TELECOM-AS", 10, "US"),
  };
  CHECK_FALSE(match_owner("T", records, {}, cfg).has_value());
}

TEST_CASE("ownership score is 0, 0.5 or 1 and symmetric") {
  const PipelineConfig cfg;
  Cable cable;
  cable.id = "c";
  cable.name = "c";
  cable.landing_point_ids = {"x", "y"};
  cable.owner_names = {"Google"};

  OwnerAsnMap owners;
  OwnerAsnEntry google;
  google.owner_name = "Google";
  google.primary_asn = 15169;
  google.matches = {{15169, MatchDimension::kOrgPartial, MatchRole::kPrimary}};
  owners.emplace("Google", google);

  const Asn g = 15169, other = 3356;
  CHECK(ownership_score(g, g, cable, owners) == 1.0);
  CHECK(ownership_score(other, other, cable, owners) == 0.0);
  CHECK(ownership_score(g, other, cable, owners) == 0.5);
  CHECK(ownership_score(other, g, cable, owners) == 0.5);
  CHECK(ownership_score(std::nullopt, g, cable, owners) == 0.5);
  CHECK(ownership_score(std::nullopt, std::nullopt, cable, owners) == 0.0);

  Cable unowned = cable;
  unowned.owner_names.clear();
  CHECK(ownership_score(g, g, unowned, owners) == 0.0);
}

TEST_CASE("build_owner_map derives countries from landing points") {
  PipelineConfig cfg;
  CableDataset dataset;
  LandingPoint a{"a", GeoPoint(0, 0), "KR", {"c"}};
  LandingPoint b{"b", GeoPoint(0, 10), "JP", {"c"}};
  dataset.landing_points = {{"a", a}, {"b", b}};
  Cable cable;
  cable.id = "c";
  cable.name = "c";
  cable.landing_point_ids = {"a", "b"};
  cable.owner_names = {"KT"};
  dataset.cables = {{"c", cable}};

  // Primary passes only because KR is one of the owner's landing countries.
  const std::vector<AsRecord> records = {
      record(4766, "Korea Telecom", "KIXS-AS-KR", 50, "KR"),
  };
  const auto owners = build_owner_map(dataset, records, cfg);
  REQUIRE(owners.contains("KT"));
  CHECK(owners.at("KT").primary_asn == 4766);

  // The same record with an out-of-footprint country is rejected.
  const std::vector<AsRecord> wrong = {
      record(4766, "Korea Telecom", "KIXS-AS-KR", 50, "BR"),
  };
  CHECK(build_owner_map(dataset, wrong, cfg).empty());
}
