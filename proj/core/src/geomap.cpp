#include "cablemap/geomap.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace cablemap {

namespace {

constexpr std::size_t kLeafSize = 8;

}  // namespace

LandingPointIndex::LandingPointIndex(const CableDataset& dataset) {
  points_.reserve(dataset.landing_points.size());
  for (const auto& [id, lp] : dataset.landing_points) {
    points_.push_back(lp);  // map iteration is id-sorted already
  }
  order_.resize(points_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) {
    order_[i] = i;
  }
  if (!points_.empty()) {
    root_ = build(0, points_.size());
  }
}

int LandingPointIndex::build(std::size_t begin, std::size_t end) {
  Node node;
  std::vector<GeoPoint> range;
  range.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    range.push_back(points_[order_[i]].location);
  }
  node.center = spherical_centroid(range);
  node.radius_km = 0.0;
  for (const GeoPoint& p : range) {
    node.radius_km = std::max(node.radius_km, haversine_km(node.center, p));
  }

  if (end - begin <= kLeafSize) {
    node.begin = begin;
    node.end = end;
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size()) - 1;
  }

  // Split along the two mutually farthest-ish points (standard ball-tree
  // heuristic); any split keeps queries exact, this one keeps them fast.
  std::size_t pole_a = begin;
  double best = -1.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double d = haversine_km(node.center, points_[order_[i]].location);
    if (d > best) {
      best = d;
      pole_a = i;
    }
  }
  std::size_t pole_b = begin;
  best = -1.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double d = haversine_km(points_[order_[pole_a]].location,
                                  points_[order_[i]].location);
    if (d > best) {
      best = d;
      pole_b = i;
    }
  }
  const GeoPoint pa = points_[order_[pole_a]].location;
  const GeoPoint pb = points_[order_[pole_b]].location;

  auto mid_it = std::stable_partition(
      order_.begin() + begin, order_.begin() + end, [&](std::size_t idx) {
        const GeoPoint& p = points_[idx].location;
        return haversine_km(p, pa) <= haversine_km(p, pb);
      });
  std::size_t mid = static_cast<std::size_t>(mid_it - order_.begin());
  if (mid == begin || mid == end) {
    mid = begin + (end - begin) / 2;  // degenerate: all points coincide
  }

  const int self = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

void LandingPointIndex::query_node(int node_idx, const GeoPoint& center,
                                   double radius_km,
                                   std::vector<Hit>& out) const {
  const Node& node = nodes_[node_idx];
  if (haversine_km(center, node.center) - node.radius_km > radius_km) {
    return;
  }
  if (node.left < 0) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      const LandingPoint& lp = points_[order_[i]];
      const double d = haversine_km(center, lp.location);
      if (d <= radius_km) {
        out.push_back({&lp, d});
      }
    }
    return;
  }
  query_node(node.left, center, radius_km, out);
  query_node(node.right, center, radius_km, out);
}

std::vector<LandingPointIndex::Hit> LandingPointIndex::radius_query(
    const GeoPoint& center, double radius_km) const {
  std::vector<Hit> out;
  if (root_ >= 0) {
    query_node(root_, center, radius_km, out);
  }
  std::sort(out.begin(), out.end(), [](const Hit& a, const Hit& b) {
    if (a.distance_km != b.distance_km) {
      return a.distance_km < b.distance_km;
    }
    return a.point->id < b.point->id;
  });
  return out;
}

void LandingPointIndex::nearest_node(int node_idx, const GeoPoint& center,
                                     Hit& best) const {
  const Node& node = nodes_[node_idx];
  if (haversine_km(center, node.center) - node.radius_km >=
      best.distance_km) {
    return;
  }
  if (node.left < 0) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      const LandingPoint& lp = points_[order_[i]];
      const double d = haversine_km(center, lp.location);
      if (d < best.distance_km ||
          (d == best.distance_km && best.point && lp.id < best.point->id)) {
        best = {&lp, d};
      }
    }
    return;
  }
  const double dl = haversine_km(center, nodes_[node.left].center);
  const double dr = haversine_km(center, nodes_[node.right].center);
  if (dl <= dr) {
    nearest_node(node.left, center, best);
    nearest_node(node.right, center, best);
  } else {
    nearest_node(node.right, center, best);
    nearest_node(node.left, center, best);
  }
}

std::optional<LandingPointIndex::Hit> LandingPointIndex::nearest(
    const GeoPoint& center) const {
  if (root_ < 0) {
    return std::nullopt;
  }
  Hit best;
  best.distance_km = std::numeric_limits<double>::infinity();
  nearest_node(root_, center, best);
  return best;
}

std::vector<GeoCandidate> recursive_search(
    const LandingPointIndex& index, const CableDataset& dataset,
    const std::vector<GeoCluster>& endpoint_clusters_a,
    const std::vector<GeoCluster>& endpoint_clusters_b,
    const PipelineConfig& cfg) {
  std::vector<GeoCandidate> candidates;

  // Nearest landing point per cable within one endpoint's result set.
  auto per_cable = [](const std::vector<LandingPointIndex::Hit>& hits) {
    std::map<std::string, LandingPointIndex::Hit> best;
    for (const auto& hit : hits) {  // hits are (distance, id)-sorted
      for (const std::string& cable_id : hit.point->cable_ids) {
        best.emplace(cable_id, hit);
      }
    }
    return best;
  };

  for (const GeoCluster& ca : endpoint_clusters_a) {
    for (const GeoCluster& cb : endpoint_clusters_b) {
      for (double radius = cfg.radius_start_km; radius <= cfg.radius_max_km;
           radius += cfg.radius_step_km) {
        const auto hits_a = index.radius_query(ca.centroid, radius);
        if (hits_a.empty()) {
          continue;
        }
        const auto hits_b = index.radius_query(cb.centroid, radius);
        if (hits_b.empty()) {
          continue;
        }
        const auto cables_a = per_cable(hits_a);
        const auto cables_b = per_cable(hits_b);

        bool matched = false;
        for (const auto& [cable_id, hit_a] : cables_a) {
          const auto it = cables_b.find(cable_id);
          if (it == cables_b.end()) {
            continue;
          }
          if (!dataset.cables.contains(cable_id)) {
            continue;
          }
          matched = true;
          const auto& hit_b = it->second;
          auto endpoint = [&](const GeoCluster& cluster,
                              const LandingPointIndex::Hit& hit) {
            CandidateEndpoint e;
            e.cluster_score = cluster.cluster_score;
            e.landing_point_id = hit.point->id;
            e.distance_km = hit.distance_km;
            e.d_score =
                std::min(hit.distance_km, cfg.radius_max_km) / cfg.radius_max_km;
            return e;
          };
          candidates.push_back({cable_id, endpoint(ca, hit_a),
                                endpoint(cb, hit_b), radius});
        }
        if (matched) {
          break;  // this combination is done; others restart at radius_start
        }
      }
    }
  }
  return candidates;
}

}  // namespace cablemap
