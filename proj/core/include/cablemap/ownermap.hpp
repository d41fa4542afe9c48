#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cablemap/config.hpp"
#include "cablemap/ip.hpp"
#include "cablemap/model.hpp"

namespace cablemap {

using Asn = std::uint32_t;

struct AsnVote {
  IpAddress ip;
  std::map<std::string, Asn> per_source;
  Asn resolved_asn = 0;
  double agreement = 0.0;  // fraction of valid sources behind the winner
};

struct AsRecord {
  Asn asn = 0;
  std::string org_name;
  std::string as_name;
  int rank = 1;          // >= 1, lower number = larger network
  std::string country;   // ISO alpha-2
  std::set<Asn> customers;
};

enum class MatchDimension { kOrgPartial, kAbbreviation, kAsName };
enum class MatchRole { kPrimary, kCustomer };

struct OwnerMatch {
  Asn asn = 0;
  MatchDimension dimension = MatchDimension::kOrgPartial;
  MatchRole role = MatchRole::kPrimary;
};

// Resolved ASN set for one cable owner. Exactly one primary when any match
// exists; every other entry is a customer of the primary.
struct OwnerAsnEntry {
  std::string owner_name;
  Asn primary_asn = 0;
  std::vector<OwnerMatch> matches;  // primary first, customers by ascending ASN

  std::set<Asn> asns() const {
    std::set<Asn> out;
    for (const OwnerMatch& m : matches) out.insert(m.asn);
    return out;
  }
};

using OwnerAsnMap = std::map<std::string, OwnerAsnEntry>;

// Modal vote across sources, ties broken by the configured source priority
// (a tied ASN backed by an earlier-listed source wins; unknown sources rank
// after the list, alphabetically). Returns nullopt when no source voted.
std::optional<AsnVote> resolve_asn(const IpAddress& ip,
                                   const std::map<std::string, Asn>& per_source,
                                   const PipelineConfig& cfg);

// Case-insensitive search across three dimensions: partial match against
// the organization name, abbreviation of the organization name, and the
// registered AS name (token or abbreviation match). The hit with the best
// rank becomes primary, subject to a country cross-check for ranks at or
// below country_check_max_rank; remaining hits survive only as customers of
// the primary. Returns nullopt when nothing matches.
std::optional<OwnerAsnEntry> match_owner(
    const std::string& owner_name, const std::vector<AsRecord>& as_records,
    const std::set<std::string>& owner_countries, const PipelineConfig& cfg);

// Owner map for every distinct owner named in the cable dataset. The
// country set of an owner is the union of landing countries of its cables.
OwnerAsnMap build_owner_map(const CableDataset& dataset,
                            const std::vector<AsRecord>& as_records,
                            const PipelineConfig& cfg);

// ASNs associated with any of a cable's owners.
std::set<Asn> cable_owner_asns(const Cable& cable, const OwnerAsnMap& owners);

// 0.5 per endpoint whose ASN belongs to the cable's owner-ASN union; always
// one of {0, 0.5, 1}. A missing ASN contributes nothing.
double ownership_score(const std::optional<Asn>& asn_a,
                       const std::optional<Asn>& asn_b, const Cable& cable,
                       const OwnerAsnMap& owners);

// Text utilities shared with operator-map matching.
namespace names {
// Lowercase, non-alphanumerics to single spaces, trimmed.
std::string normalize(const std::string& s);
std::vector<std::string> tokens(const std::string& s);
// Normalized string with the spaces removed.
std::string compact(const std::string& s);
// First letters of word tokens; digit tokens are kept whole.
std::string abbreviation(const std::string& s);
}  // namespace names

std::string to_string(MatchDimension d);
std::string to_string(MatchRole r);

}  // namespace cablemap
