#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cablemap/aggregate.hpp"
#include "cablemap/model.hpp"
#include "cablemap/ownermap.hpp"

namespace cablemap {

struct MappingStats {
  std::uint64_t total_links = 0;          // everything classified or not
  std::uint64_t classified_links = 0;
  std::uint64_t unclassified_links = 0;
  std::uint64_t submarine_links = 0;      // S + U
  std::uint64_t mapped_links = 0;

  double cables_covered = 0.0;            // active cables with >= 1 mapped link
  double landing_points_covered = 0.0;
  double links_mapped = 0.0;              // over S + U links

  std::map<std::string, std::uint64_t> links_by_category;   // composite label
  std::map<std::uint64_t, std::uint64_t> cables_per_link;   // retained set size -> links
  std::map<std::string, std::uint64_t> links_per_cable;     // cable id -> links
  // Max prediction score per link, sorted ascending, keyed by category.
  std::map<std::string, std::vector<double>> score_cdf;
};

// Inputs to the stats pass: the classification outcome of every link plus
// the mapping of the mapped subset.
struct ClassifiedLink {
  IpLink link;
  std::optional<BonusLabel> label;  // nullopt = Unclassified
};

MappingStats summarize(const std::vector<ClassifiedLink>& classes,
                       const std::vector<LinkMapping>& mappings,
                       const CableDataset& dataset);

// A cable or landing-point failure with link sets observed before, during
// and optionally after the event.
struct FailureScenario {
  enum class EntityKind { kCable, kLandingPoint };
  EntityKind kind = EntityKind::kCable;
  std::string entity_id;
  std::set<IpLink> before;
  std::set<IpLink> during;
  std::optional<std::set<IpLink>> after;
};

struct FailureReport {
  std::string entity_id;
  std::vector<std::string> affected_cables;
  std::uint64_t affected_mapped_links = 0;
  std::uint64_t present_before = 0;
  std::uint64_t present_during = 0;
  std::optional<std::uint64_t> present_after;
  // Links mapped to the failed entity that stayed up during the event, with
  // their best prediction score.
  std::vector<std::pair<IpLink, double>> survivors;
  // Unconfirmed-submarine links that vanished exactly during the event:
  // strong evidence they really are submarine.
  std::vector<IpLink> confirmed_submarine;
};

// Intersects the links mapped to the failed entity with each window.
// Throws InputError for an entity absent from the dataset.
FailureReport failure_diff(const std::vector<LinkMapping>& mappings,
                           const FailureScenario& scenario,
                           const CableDataset& dataset);

struct OperatorReport {
  std::string operator_name;
  std::uint64_t matched = 0;
  std::uint64_t total = 0;
  std::vector<std::string> missing;          // truth cables never predicted
  std::vector<std::string> predicted_cables; // cables over the operator's links
};

// Compares the cables predicted for links of IPs whose AS matches the
// operator name (same three-dimension matching as owner resolution) against
// a hand-transcribed cable-name list.
OperatorReport operator_overlap(
    const std::string& operator_name, const std::vector<LinkMapping>& mappings,
    const std::map<IpAddress, Asn>& ip_asn,
    const std::vector<AsRecord>& as_records,
    const std::vector<std::string>& truth_cables, const CableDataset& dataset,
    const PipelineConfig& cfg);

}  // namespace cablemap
