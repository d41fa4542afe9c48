#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cablemap/classify.hpp"
#include "cablemap/config.hpp"
#include "cablemap/geomap.hpp"
#include "cablemap/ip.hpp"
#include "cablemap/ownermap.hpp"

namespace cablemap {

// Fully scored cable candidate: every component feeding the prediction
// score, plus the score itself.
struct CableCandidate {
  std::string cable_id;
  double c1 = 0.0, c2 = 0.0;  // cluster scores, (0,1]
  double d1 = 0.0, d2 = 0.0;  // normalized landing-point distances, [0,1]
  int o1 = 0, o2 = 0;         // per-endpoint ownership indicators, {0,1}
  double category_factor = 0.0;
  double prediction_score = 0.0;
  std::string landing_point_a;
  std::string landing_point_b;
};

struct LinkMapping {
  IpLink link;
  BonusLabel label;
  std::vector<CableCandidate> candidates;  // sorted by (score desc, cable asc)
  std::size_t pruned_count = 0;
};

// Prediction score: the category factor times the weighted sum of cluster,
// distance and ownership components. Component values outside their ranges
// indicate an upstream bug and throw std::invalid_argument.
double score(double c1, double c2, double d1, double d2, int o1, int o2,
             double category_factor, const PipelineConfig& cfg);

// Keeps candidates within pact of the best score (relative mode) or at or
// above pact (absolute mode). Input must be sorted by descending score.
std::vector<CableCandidate> pact_prune(std::vector<CableCandidate> candidates,
                                       const PipelineConfig& cfg);

// Scores every geo candidate, keeps the best-scoring instantiation per
// cable, sorts and prunes. Terrestrial links and links without geo
// candidates stay unmapped (nullopt).
std::optional<LinkMapping> finalize(
    const IpLink& link, const BonusLabel& label,
    const std::vector<GeoCandidate>& geo_candidates,
    const std::optional<Asn>& asn_a, const std::optional<Asn>& asn_b,
    const CableDataset& dataset, const OwnerAsnMap& owners,
    const PipelineConfig& cfg);

}  // namespace cablemap
