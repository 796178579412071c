#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "vesselgraph/types.hpp"

namespace vesselgraph {

/// Co-temporal positions of every trajectory that has a state at t.
struct Snapshot {
  std::int64_t t = 0;
  struct Point {
    Mmsi mmsi = 0;
    double lat = 0.0;
    double lon = 0.0;
  };
  std::vector<Point> points;  // sorted by mmsi, unique
};

inline constexpr int kNoiseLabel = -1;
inline constexpr double kUndefinedDistance = std::numeric_limits<double>::infinity();

/// OPTICS output over one snapshot. ordering/reachability/core_distance are
/// parallel arrays in visit order; labels are filled by extract_clusters.
struct ClusterAssignment {
  std::vector<Mmsi> ordering;
  std::vector<double> reachability;    // km; +inf == UNDEFINED (walk starts, noise)
  std::vector<double> core_distance;   // km; +inf == UNDEFINED
  std::map<Mmsi, int> labels;          // cluster id >= 0 or kNoiseLabel
  int min_samples = 0;
  double max_eps_km = 0.0;
};

Snapshot snapshot_at(const std::vector<Trajectory>& trajs, std::int64_t t);

/// Standard OPTICS ordering and reachability under the haversine metric.
///
/// The eps-neighborhood of a point includes the point itself; its core
/// distance is the distance to the min_samples-th closest member. Walks
/// start at the unprocessed point with the smallest mmsi and the seed queue
/// is ordered by (reachability, mmsi), so the output is canonical under any
/// input permutation. Walk starts keep UNDEFINED reachability.
ClusterAssignment optics_order(const Snapshot& snapshot, int min_samples,
                               double max_eps_km);

/// Xi-steepness cluster extraction over the reachability plot.
///
/// Steep-down/steep-up areas follow the classic definition (a point is
/// xi-steep when its reachability changes by a factor (1-xi) against its
/// successor; an area is a maximal monotone run of such points containing at
/// most min_samples consecutive non-steep points). Every (down, up) area
/// pair whose walls are xi-significant against the enclosed valley yields a
/// candidate cluster; boundaries are trimmed so both walls match in height.
/// Points are labeled by the smallest candidate containing them; unlabeled
/// points become NOISE. Cluster ids are contiguous from 0 in order of first
/// member position.
void extract_clusters(ClusterAssignment& assignment, double xi);

struct NeighborHit {
  Mmsi mmsi = 0;
  double mean_km = 0.0;
};

/// Vessels in `pool` sharing at least `overlap` co-temporal samples with
/// `focal` whose mean co-temporal haversine distance is <= radius_km,
/// ascending by (mean distance, mmsi). The focal vessel itself is skipped.
std::vector<NeighborHit> neighbors_within(const Trajectory& focal,
                                          const std::vector<Trajectory>& pool,
                                          double radius_km, std::size_t overlap);

}  // namespace vesselgraph
