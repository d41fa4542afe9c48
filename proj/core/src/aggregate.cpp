#include "cablemap/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cablemap {

double score(double c1, double c2, double d1, double d2, int o1, int o2,
             double category_factor, const PipelineConfig& cfg) {
  auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  if (!in_unit(c1) || !in_unit(c2) || c1 <= 0.0 || c2 <= 0.0) {
    throw std::invalid_argument("cluster score outside (0, 1]");
  }
  if (!in_unit(d1) || !in_unit(d2)) {
    throw std::invalid_argument("distance score outside [0, 1]");
  }
  if ((o1 != 0 && o1 != 1) || (o2 != 0 && o2 != 1)) {
    throw std::invalid_argument("ownership indicator outside {0, 1}");
  }
  if (category_factor != cfg.factor_definite &&
      category_factor != cfg.factor_potential) {
    throw std::invalid_argument("unknown category factor");
  }
  const double cluster_term = cfg.weight_cluster * (c1 + c2);
  const double distance_term = cfg.weight_distance * (2.0 - d1 - d2);
  const double owner_term = cfg.weight_owner * static_cast<double>(o1 + o2);
  return category_factor * (cluster_term + distance_term + owner_term);
}

std::vector<CableCandidate> pact_prune(std::vector<CableCandidate> candidates,
                                       const PipelineConfig& cfg) {
  if (candidates.empty()) {
    return candidates;
  }
  const double cutoff = cfg.pact_mode == PactMode::kRelative
                            ? candidates.front().prediction_score - cfg.pact
                            : cfg.pact;
  std::erase_if(candidates, [&](const CableCandidate& c) {
    return c.prediction_score < cutoff;
  });
  return candidates;
}

std::optional<LinkMapping> finalize(
    const IpLink& link, const BonusLabel& label,
    const std::vector<GeoCandidate>& geo_candidates,
    const std::optional<Asn>& asn_a, const std::optional<Asn>& asn_b,
    const CableDataset& dataset, const OwnerAsnMap& owners,
    const PipelineConfig& cfg) {
  if (label.submarine_class == SubmarineClass::kTerrestrial ||
      geo_candidates.empty()) {
    return std::nullopt;
  }
  const double factor = label.submarine_class == SubmarineClass::kSubmarine
                            ? cfg.factor_definite
                            : cfg.factor_potential;

  // Best-scoring cluster-combination instantiation per cable.
  std::map<std::string, CableCandidate> best;
  for (const GeoCandidate& gc : geo_candidates) {
    const auto cable_it = dataset.cables.find(gc.cable_id);
    if (cable_it == dataset.cables.end()) {
      continue;
    }
    const std::set<Asn> owner_asns = cable_owner_asns(cable_it->second, owners);
    CableCandidate c;
    c.cable_id = gc.cable_id;
    c.c1 = gc.end_a.cluster_score;
    c.c2 = gc.end_b.cluster_score;
    c.d1 = gc.end_a.d_score;
    c.d2 = gc.end_b.d_score;
    c.o1 = asn_a && owner_asns.contains(*asn_a) ? 1 : 0;
    c.o2 = asn_b && owner_asns.contains(*asn_b) ? 1 : 0;
    c.category_factor = factor;
    c.prediction_score =
        score(c.c1, c.c2, c.d1, c.d2, c.o1, c.o2, factor, cfg);
    c.landing_point_a = gc.end_a.landing_point_id;
    c.landing_point_b = gc.end_b.landing_point_id;

    auto [it, inserted] = best.emplace(c.cable_id, c);
    if (!inserted) {
      CableCandidate& cur = it->second;
      const bool better =
          c.prediction_score > cur.prediction_score ||
          (c.prediction_score == cur.prediction_score &&
           c.d1 + c.d2 < cur.d1 + cur.d2);
      if (better) {
        cur = c;
      }
    }
  }
  if (best.empty()) {
    return std::nullopt;
  }

  LinkMapping mapping;
  mapping.link = link;
  mapping.label = label;
  mapping.candidates.reserve(best.size());
  for (auto& [cable_id, candidate] : best) {
    mapping.candidates.push_back(std::move(candidate));
  }
  std::sort(mapping.candidates.begin(), mapping.candidates.end(),
            [](const CableCandidate& a, const CableCandidate& b) {
              if (a.prediction_score != b.prediction_score) {
                return a.prediction_score > b.prediction_score;
              }
              return a.cable_id < b.cable_id;
            });
  const std::size_t before = mapping.candidates.size();
  mapping.candidates = pact_prune(std::move(mapping.candidates), cfg);
  mapping.pruned_count = before - mapping.candidates.size();
  return mapping;
}

}  // namespace cablemap
