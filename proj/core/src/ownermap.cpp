#include "cablemap/ownermap.hpp"

#include <algorithm>
#include <cctype>

namespace cablemap {

namespace names {

std::string normalize(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char ch : s) {
    if (std::isalnum(ch)) {
      if (pending_space && !out.empty()) {
        out.push_back(' ');
      }
      pending_space = false;
      out.push_back(static_cast<char>(std::tolower(ch)));
    } else {
      pending_space = true;
    }
  }
  return out;
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  const std::string norm = normalize(s);
  std::size_t pos = 0;
  while (pos < norm.size()) {
    const std::size_t space = norm.find(' ', pos);
    const std::size_t end = space == std::string::npos ? norm.size() : space;
    if (end > pos) {
      out.push_back(norm.substr(pos, end - pos));
    }
    pos = end + 1;
  }
  return out;
}

std::string compact(const std::string& s) {
  std::string out;
  for (char ch : normalize(s)) {
    if (ch != ' ') {
      out.push_back(ch);
    }
  }
  return out;
}

std::string abbreviation(const std::string& s) {
  std::string out;
  for (const std::string& tok : tokens(s)) {
    const bool digits =
        std::all_of(tok.begin(), tok.end(),
                    [](unsigned char c) { return std::isdigit(c); });
    if (digits) {
      out += tok;
    } else {
      out.push_back(tok.front());
    }
  }
  return out;
}

}  // namespace names

std::optional<AsnVote> resolve_asn(const IpAddress& ip,
                                   const std::map<std::string, Asn>& per_source,
                                   const PipelineConfig& cfg) {
  if (per_source.empty()) {
    return std::nullopt;
  }
  std::map<Asn, int> votes;
  for (const auto& [source, asn] : per_source) {
    ++votes[asn];
  }
  int best_count = 0;
  for (const auto& [asn, count] : votes) {
    best_count = std::max(best_count, count);
  }

  // Source ordering for the tie-break: configured priority first, then the
  // rest alphabetically.
  std::vector<std::string> ordered;
  for (const std::string& s : cfg.asn_source_priority) {
    if (per_source.contains(s)) {
      ordered.push_back(s);
    }
  }
  for (const auto& [source, asn] : per_source) {
    if (std::find(cfg.asn_source_priority.begin(),
                  cfg.asn_source_priority.end(),
                  source) == cfg.asn_source_priority.end()) {
      ordered.push_back(source);  // map iteration is already alphabetical
    }
  }

  Asn winner = 0;
  for (const std::string& source : ordered) {
    const Asn candidate = per_source.at(source);
    if (votes.at(candidate) == best_count) {
      winner = candidate;
      break;
    }
  }

  AsnVote vote;
  vote.ip = ip;
  vote.per_source = per_source;
  vote.resolved_asn = winner;
  vote.agreement =
      static_cast<double>(best_count) / static_cast<double>(per_source.size());
  return vote;
}

namespace {

constexpr std::size_t kMinPartialLen = 3;
constexpr std::size_t kMinAbbrevLen = 2;

bool contains(const std::string& haystack, const std::string& needle) {
  return !needle.empty() && haystack.find(needle) != std::string::npos;
}

// Dimension 1: partial or complete match against the organization name.
// Spacing and punctuation variants are bridged by comparing compacted
// strings; the shorter side must be long enough to mean something.
bool org_partial_match(const std::string& owner_compact,
                       const std::string& org_compact) {
  if (std::min(owner_compact.size(), org_compact.size()) < kMinPartialLen) {
    return false;
  }
  return contains(org_compact, owner_compact) ||
         contains(owner_compact, org_compact);
}

// Dimension 2: the owner is an abbreviation of the organization name.
bool abbreviation_match(const std::string& owner_compact,
                        const std::string& org_abbrev) {
  return owner_compact.size() >= kMinAbbrevLen && owner_compact == org_abbrev;
}

// Dimension 3: match against the registered AS name, which often carries
// alternative or post-acquisition identities as dash-separated tokens.
bool as_name_match(const std::string& owner_compact,
                   const std::string& owner_abbrev,
                   const std::vector<std::string>& as_name_tokens) {
  for (const std::string& tok : as_name_tokens) {
    if (tok.size() >= kMinPartialLen && tok == owner_compact) {
      return true;
    }
    if (owner_abbrev.size() >= kMinAbbrevLen && tok == owner_abbrev) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<OwnerAsnEntry> match_owner(
    const std::string& owner_name, const std::vector<AsRecord>& as_records,
    const std::set<std::string>& owner_countries, const PipelineConfig& cfg) {
  const std::string owner_compact = names::compact(owner_name);
  const std::string owner_abbrev = names::abbreviation(owner_name);
  if (owner_compact.empty()) {
    return std::nullopt;
  }

  struct Hit {
    const AsRecord* record = nullptr;
    MatchDimension dimension = MatchDimension::kOrgPartial;
  };
  std::vector<Hit> hits;
  for (const AsRecord& rec : as_records) {
    const std::string org_compact = names::compact(rec.org_name);
    if (org_partial_match(owner_compact, org_compact)) {
      hits.push_back({&rec, MatchDimension::kOrgPartial});
      continue;
    }
    if (abbreviation_match(owner_compact, names::abbreviation(rec.org_name))) {
      hits.push_back({&rec, MatchDimension::kAbbreviation});
      continue;
    }
    if (as_name_match(owner_compact, owner_abbrev,
                      names::tokens(rec.as_name))) {
      hits.push_back({&rec, MatchDimension::kAsName});
    }
  }
  if (hits.empty()) {
    return std::nullopt;
  }

  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.record->rank != b.record->rank) {
      return a.record->rank < b.record->rank;
    }
    return a.record->asn < b.record->asn;
  });

  // Best-ranked hit wins, but large networks must plausibly operate where
  // the owner's cables land.
  const Hit* primary = nullptr;
  for (const Hit& hit : hits) {
    if (hit.record->rank <= cfg.country_check_max_rank &&
        !owner_countries.empty() &&
        !owner_countries.contains(hit.record->country)) {
      continue;
    }
    primary = &hit;
    break;
  }
  if (primary == nullptr) {
    return std::nullopt;
  }

  OwnerAsnEntry entry;
  entry.owner_name = owner_name;
  entry.primary_asn = primary->record->asn;
  entry.matches.push_back(
      {primary->record->asn, primary->dimension, MatchRole::kPrimary});
  for (const Hit& hit : hits) {
    if (hit.record->asn == primary->record->asn) {
      continue;
    }
    if (primary->record->customers.contains(hit.record->asn)) {
      entry.matches.push_back(
          {hit.record->asn, hit.dimension, MatchRole::kCustomer});
    }
  }
  std::sort(entry.matches.begin() + 1, entry.matches.end(),
            [](const OwnerMatch& a, const OwnerMatch& b) { return a.asn < b.asn; });
  return entry;
}

OwnerAsnMap build_owner_map(const CableDataset& dataset,
                            const std::vector<AsRecord>& as_records,
                            const PipelineConfig& cfg) {
  // Owner -> countries its cables land in.
  std::map<std::string, std::set<std::string>> owner_countries;
  for (const auto& [cable_id, cable] : dataset.cables) {
    std::set<std::string> countries;
    for (const std::string& lp_id : cable.landing_point_ids) {
      const auto it = dataset.landing_points.find(lp_id);
      if (it != dataset.landing_points.end()) {
        countries.insert(it->second.country);
      }
    }
    for (const std::string& owner : cable.owner_names) {
      owner_countries[owner].insert(countries.begin(), countries.end());
    }
  }

  OwnerAsnMap out;
  for (const auto& [owner, countries] : owner_countries) {
    auto entry = match_owner(owner, as_records, countries, cfg);
    if (entry) {
      out.emplace(owner, std::move(*entry));
    }
  }
  return out;
}

std::set<Asn> cable_owner_asns(const Cable& cable, const OwnerAsnMap& owners) {
  std::set<Asn> out;
  for (const std::string& owner : cable.owner_names) {
    const auto it = owners.find(owner);
    if (it != owners.end()) {
      const auto asns = it->second.asns();
      out.insert(asns.begin(), asns.end());
    }
  }
  return out;
}

double ownership_score(const std::optional<Asn>& asn_a,
                       const std::optional<Asn>& asn_b, const Cable& cable,
                       const OwnerAsnMap& owners) {
  const std::set<Asn> owner_asns = cable_owner_asns(cable, owners);
  double score = 0.0;
  if (asn_a && owner_asns.contains(*asn_a)) {
    score += 0.5;
  }
  if (asn_b && owner_asns.contains(*asn_b)) {
    score += 0.5;
  }
  return score;
}

std::string to_string(MatchDimension d) {
  switch (d) {
    case MatchDimension::kOrgPartial: return "org-partial";
    case MatchDimension::kAbbreviation: return "abbreviation";
    case MatchDimension::kAsName: return "as-name";
  }
  return "?";
}

std::string to_string(MatchRole r) {
  return r == MatchRole::kPrimary ? "primary" : "customer";
}

}  // namespace cablemap
