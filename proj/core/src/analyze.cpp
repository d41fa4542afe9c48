#include "cablemap/analyze.hpp"

#include <algorithm>

#include "cablemap/errors.hpp"

namespace cablemap {

MappingStats summarize(const std::vector<ClassifiedLink>& classes,
                       const std::vector<LinkMapping>& mappings,
                       const CableDataset& dataset) {
  MappingStats stats;
  stats.total_links = classes.size();
  for (const ClassifiedLink& cl : classes) {
    if (!cl.label) {
      ++stats.unclassified_links;
      ++stats.links_by_category["Unclassified"];
      continue;
    }
    ++stats.classified_links;
    ++stats.links_by_category[composite_label(*cl.label)];
    if (cl.label->submarine_class != SubmarineClass::kTerrestrial) {
      ++stats.submarine_links;
    }
  }

  std::set<std::string> covered_cables;
  std::set<std::string> covered_landing_points;
  for (const LinkMapping& m : mappings) {
    ++stats.mapped_links;
    ++stats.cables_per_link[m.candidates.size()];
    double best = 0.0;
    for (const CableCandidate& c : m.candidates) {
      ++stats.links_per_cable[c.cable_id];
      covered_cables.insert(c.cable_id);
      covered_landing_points.insert(c.landing_point_a);
      covered_landing_points.insert(c.landing_point_b);
      best = std::max(best, c.prediction_score);
    }
    stats.score_cdf[composite_label(m.label)].push_back(best);
  }
  for (auto& [category, scores] : stats.score_cdf) {
    std::sort(scores.begin(), scores.end());
  }

  if (!dataset.cables.empty()) {
    stats.cables_covered = static_cast<double>(covered_cables.size()) /
                           static_cast<double>(dataset.cables.size());
  }
  if (!dataset.landing_points.empty()) {
    stats.landing_points_covered =
        static_cast<double>(covered_landing_points.size()) /
        static_cast<double>(dataset.landing_points.size());
  }
  if (stats.submarine_links > 0) {
    stats.links_mapped = static_cast<double>(stats.mapped_links) /
                         static_cast<double>(stats.submarine_links);
  }
  return stats;
}

FailureReport failure_diff(const std::vector<LinkMapping>& mappings,
                           const FailureScenario& scenario,
                           const CableDataset& dataset) {
  FailureReport report;
  report.entity_id = scenario.entity_id;

  if (scenario.kind == FailureScenario::EntityKind::kCable) {
    if (!dataset.cables.contains(scenario.entity_id)) {
      throw InputError("unknown cable in failure scenario: " +
                       scenario.entity_id);
    }
    report.affected_cables.push_back(scenario.entity_id);
  } else {
    const auto it = dataset.landing_points.find(scenario.entity_id);
    if (it == dataset.landing_points.end()) {
      throw InputError("unknown landing point in failure scenario: " +
                       scenario.entity_id);
    }
    // A landing-point failure takes down every cable terminating there.
    report.affected_cables.assign(it->second.cable_ids.begin(),
                                  it->second.cable_ids.end());
  }
  const std::set<std::string> affected(report.affected_cables.begin(),
                                       report.affected_cables.end());

  std::vector<std::pair<IpLink, const LinkMapping*>> affected_links;
  for (const LinkMapping& m : mappings) {
    for (const CableCandidate& c : m.candidates) {
      if (affected.contains(c.cable_id)) {
        affected_links.emplace_back(m.link, &m);
        break;
      }
    }
  }
  report.affected_mapped_links = affected_links.size();

  for (const auto& [link, mapping] : affected_links) {
    const bool in_before = scenario.before.contains(link);
    const bool in_during = scenario.during.contains(link);
    const bool in_after =
        scenario.after ? scenario.after->contains(link) : false;
    if (in_before) ++report.present_before;
    if (in_during) ++report.present_during;
    if (scenario.after && in_after) {
      report.present_after = report.present_after.value_or(0) + 1;
    }
    if (in_during) {
      report.survivors.emplace_back(
          link, mapping->candidates.front().prediction_score);
    }
    const bool returned = !scenario.after || in_after;
    if (in_before && !in_during && returned &&
        mapping->label.submarine_class == SubmarineClass::kUnconfirmed) {
      report.confirmed_submarine.push_back(link);
    }
  }
  if (scenario.after && !report.present_after) {
    report.present_after = 0;
  }
  std::sort(report.survivors.begin(), report.survivors.end());
  std::sort(report.confirmed_submarine.begin(),
            report.confirmed_submarine.end());
  return report;
}

OperatorReport operator_overlap(
    const std::string& operator_name, const std::vector<LinkMapping>& mappings,
    const std::map<IpAddress, Asn>& ip_asn,
    const std::vector<AsRecord>& as_records,
    const std::vector<std::string>& truth_cables, const CableDataset& dataset,
    const PipelineConfig& cfg) {
  OperatorReport report;
  report.operator_name = operator_name;
  report.total = truth_cables.size();

  // ASNs whose organization matches the operator. The empty country set
  // disables the footprint cross-check; an operator map is global.
  const auto entry = match_owner(operator_name, as_records, {}, cfg);
  std::set<Asn> operator_asns;
  if (entry) {
    operator_asns = entry->asns();
  }

  std::set<std::string> predicted;
  for (const LinkMapping& m : mappings) {
    const auto asn_a = ip_asn.find(m.link.a);
    const auto asn_b = ip_asn.find(m.link.b);
    const bool operated =
        (asn_a != ip_asn.end() && operator_asns.contains(asn_a->second)) ||
        (asn_b != ip_asn.end() && operator_asns.contains(asn_b->second));
    if (!operated) {
      continue;
    }
    for (const CableCandidate& c : m.candidates) {
      predicted.insert(c.cable_id);
    }
  }
  report.predicted_cables.assign(predicted.begin(), predicted.end());

  // Truth entries are display names; accept either the cable name or id.
  std::set<std::string> predicted_names;
  for (const std::string& cable_id : predicted) {
    predicted_names.insert(names::compact(cable_id));
    const auto it = dataset.cables.find(cable_id);
    if (it != dataset.cables.end()) {
      predicted_names.insert(names::compact(it->second.name));
    }
  }
  for (const std::string& truth : truth_cables) {
    if (predicted_names.contains(names::compact(truth))) {
      ++report.matched;
    } else {
      report.missing.push_back(truth);
    }
  }
  return report;
}

}  // namespace cablemap
