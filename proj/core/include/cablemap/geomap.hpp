#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cablemap/config.hpp"
#include "cablemap/geo.hpp"
#include "cablemap/geoloc.hpp"
#include "cablemap/model.hpp"

namespace cablemap {

// Ball tree over landing-point coordinates with the haversine metric.
// Radius and nearest queries return exactly what a linear scan returns;
// the tree is built over id-sorted points, so results never depend on
// insertion order.
class LandingPointIndex {
 public:
  LandingPointIndex() = default;
  explicit LandingPointIndex(const CableDataset& dataset);

  struct Hit {
    const LandingPoint* point = nullptr;
    double distance_km = 0.0;
  };

  // All landing points within radius_km of center, sorted by
  // (distance, id) ascending.
  std::vector<Hit> radius_query(const GeoPoint& center, double radius_km) const;

  // Closest landing point, or nullopt on an empty index.
  std::optional<Hit> nearest(const GeoPoint& center) const;

  std::size_t size() const { return points_.size(); }

 private:
  struct Node {
    GeoPoint center;
    double radius_km = 0.0;
    int left = -1;   // child node index, -1 for leaf
    int right = -1;
    std::size_t begin = 0;  // leaf range into order_
    std::size_t end = 0;
  };

  int build(std::size_t begin, std::size_t end);
  void query_node(int node, const GeoPoint& center, double radius_km,
                  std::vector<Hit>& out) const;
  void nearest_node(int node, const GeoPoint& center, Hit& best) const;

  std::vector<LandingPoint> points_;
  std::vector<std::size_t> order_;  // permutation of points_, leaf ranges
  std::vector<Node> nodes_;
  int root_ = -1;
};

// One endpoint's share of a cable candidate: the cluster it was derived
// from and the nearest qualifying landing point of the cable.
struct CandidateEndpoint {
  double cluster_score = 0.0;       // C_i of the cluster combination
  std::string landing_point_id;
  double distance_km = 0.0;
  double d_score = 0.0;             // min(distance, radius_max) / radius_max
};

struct GeoCandidate {
  std::string cable_id;
  CandidateEndpoint end_a;
  CandidateEndpoint end_b;
  double matched_radius_km = 0.0;   // radius at which the match was found
};

// Expanding-radius search for cables anchored near both endpoints. Each
// cluster combination starts at radius_start_km and grows by radius_step_km
// until a cable has a landing point inside both endpoints' result sets or
// the radius would exceed radius_max_km. Candidates keep the combination
// they came from; an empty result means the link stays unmapped.
std::vector<GeoCandidate> recursive_search(
    const LandingPointIndex& index, const CableDataset& dataset,
    const std::vector<GeoCluster>& endpoint_clusters_a,
    const std::vector<GeoCluster>& endpoint_clusters_b,
    const PipelineConfig& cfg);

}  // namespace cablemap
