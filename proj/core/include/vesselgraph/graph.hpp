#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vesselgraph/synthesizer.hpp"
#include "vesselgraph/types.hpp"

namespace vesselgraph {

enum class EdgeKind { Temporal, Proximity };

const char* to_string(EdgeKind kind);

struct GraphNode {
  std::uint32_t vessel = 0;  // member index within the group
  std::uint32_t step = 0;    // time index within the window
  double lat = 0.0;
  double lon = 0.0;
  double sog = 0.0;
  double cog = 0.0;
  double sog_rate = 0.0;     // (SOG_t - SOG_{t-1}) / dt; 0 at step 0
  double course_rate = 0.0;  // wrapped signed dCOG/dt; 0 at step 0
};

struct GraphEdge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  EdgeKind kind = EdgeKind::Temporal;
};

struct MaskMeta {
  std::uint32_t vessel = 0;
  std::uint32_t s = 0;
  std::uint32_t m = 0;
  std::string scenario_id;
  std::string channel;  // "sog", "cog", "both", or "" for non-kinematic edits
  double k_sigma = 0.0;
  int sign_sog = 0;
  int sign_course = 0;
  double sog_rate_applied = 0.0;
  double course_rate_applied = 0.0;
  double mu_sog_rate = 0.0;
  double sigma_sog_rate = 0.0;
  double mu_course_rate = 0.0;
  double sigma_course_rate = 0.0;
};

struct RationaleEntry {
  std::string scenario_id;
  std::string text;
};

/// Node/edge/graph labels plus the provenance that ties every positive label
/// back to a scenario.
struct LabelSet {
  std::vector<std::uint8_t> node;    // size k*w
  std::vector<std::uint8_t> edge;    // parallel to TemporalGraph::edges
  int graph = 0;
  std::vector<std::uint8_t> y_traj;  // per member
  std::vector<MaskMeta> masks;
  std::vector<RationaleEntry> rationale;
};

struct MemberMeta {
  Mmsi mmsi = 0;
  VesselType vessel_type = VesselType::Cargo;
  Provenance provenance = Provenance::Real;
  Mmsi parent_mmsi = 0;
  int clamp_events = 0;
};

/// Scenario realization summary carried in the emitted record for audits.
struct ScenarioMeta {
  std::string id;
  std::string type;
  std::string level;
  double severity = 0.0;
  std::vector<std::uint32_t> targets;  // member indices
  std::int64_t block_s = -1;           // -1 when the scenario has no shared block
  std::int64_t block_m = -1;
  std::vector<std::int64_t> pair;      // rendezvous member pair, else empty
};

/// Directed graph over exactly k*w time-stamped vessel states.
/// Nodes are enumerated (vessel, step) row-major; TEMPORAL edges chain
/// (v, t) -> (v, t+1); PROXIMITY edges connect co-temporal states of distinct
/// vessels within proximity_km, in both directions.
struct TemporalGraph {
  std::string id;
  std::int64_t window_start = 0;
  std::int64_t dt = 0;
  std::uint32_t k = 0;
  std::uint32_t w = 0;
  double proximity_km = 0.0;
  bool temporal_only = false;
  Mmsi focal_mmsi = 0;
  std::vector<MemberMeta> members;
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  LabelSet labels;
  ScenarioMeta scenario;  // id empty for clean graphs

  std::size_t node_index(std::uint32_t vessel, std::uint32_t step) const {
    return static_cast<std::size_t>(vessel) * w + step;
  }
};

bool operator==(const GraphNode&, const GraphNode&);
bool operator==(const GraphEdge&, const GraphEdge&);
bool operator==(const MaskMeta&, const MaskMeta&);
bool operator==(const RationaleEntry&, const RationaleEntry&);
bool operator==(const LabelSet&, const LabelSet&);
bool operator==(const MemberMeta&, const MemberMeta&);
bool operator==(const ScenarioMeta&, const ScenarioMeta&);
bool operator==(const TemporalGraph&, const TemporalGraph&);

/// Build the k*w-node graph for a group whose members all cover
/// [start, start + w*dt) on the same grid; throws IncompleteCoverage
/// otherwise. Labels are attached separately.
TemporalGraph build_temporal_graph(const AugmentedGroup& group, std::int64_t window_start,
                                   std::uint32_t w, double proximity_km,
                                   bool temporal_only = false);

/// Validate a label set against the graph structure (sizes, ranges, OR rules,
/// provenance of positives) and embed it. Throws DanglingLabel on index
/// violations and InternalError on consistency violations.
void attach_labels(TemporalGraph& graph, LabelSet labels);

struct WindowRef {
  std::size_t traj_index = 0;  // into the corpus vector
  Mmsi focal_mmsi = 0;
  std::int64_t start = 0;
};

/// Enumerate all (focal, window start) pairs fully covered by each
/// trajectory, stepping `stride` samples between starts; ordered by
/// (mmsi, start).
std::vector<WindowRef> window_plan(const std::vector<Trajectory>& trajs, std::size_t w,
                                   std::size_t stride);

}  // namespace vesselgraph
