#include "vesselgraph/graph.hpp"

#include <algorithm>

#include "vesselgraph/errors.hpp"
#include "vesselgraph/kinematics.hpp"

namespace vesselgraph {

const char* to_string(EdgeKind kind) {
  return kind == EdgeKind::Temporal ? "temporal" : "proximity";
}

bool operator==(const GraphNode& a, const GraphNode& b) {
  return a.vessel == b.vessel && a.step == b.step && a.lat == b.lat && a.lon == b.lon &&
         a.sog == b.sog && a.cog == b.cog && a.sog_rate == b.sog_rate &&
         a.course_rate == b.course_rate;
}

bool operator==(const GraphEdge& a, const GraphEdge& b) {
  return a.src == b.src && a.dst == b.dst && a.kind == b.kind;
}

bool operator==(const MaskMeta& a, const MaskMeta& b) {
  return a.vessel == b.vessel && a.s == b.s && a.m == b.m && a.scenario_id == b.scenario_id &&
         a.channel == b.channel && a.k_sigma == b.k_sigma && a.sign_sog == b.sign_sog &&
         a.sign_course == b.sign_course && a.sog_rate_applied == b.sog_rate_applied &&
         a.course_rate_applied == b.course_rate_applied && a.mu_sog_rate == b.mu_sog_rate &&
         a.sigma_sog_rate == b.sigma_sog_rate && a.mu_course_rate == b.mu_course_rate &&
         a.sigma_course_rate == b.sigma_course_rate;
}

bool operator==(const RationaleEntry& a, const RationaleEntry& b) {
  return a.scenario_id == b.scenario_id && a.text == b.text;
}

bool operator==(const LabelSet& a, const LabelSet& b) {
  return a.node == b.node && a.edge == b.edge && a.graph == b.graph && a.y_traj == b.y_traj &&
         a.masks == b.masks && a.rationale == b.rationale;
}

bool operator==(const MemberMeta& a, const MemberMeta& b) {
  return a.mmsi == b.mmsi && a.vessel_type == b.vessel_type && a.provenance == b.provenance &&
         a.parent_mmsi == b.parent_mmsi && a.clamp_events == b.clamp_events;
}

bool operator==(const ScenarioMeta& a, const ScenarioMeta& b) {
  return a.id == b.id && a.type == b.type && a.level == b.level && a.severity == b.severity &&
         a.targets == b.targets && a.block_s == b.block_s && a.block_m == b.block_m &&
         a.pair == b.pair;
}

bool operator==(const TemporalGraph& a, const TemporalGraph& b) {
  return a.id == b.id && a.window_start == b.window_start && a.dt == b.dt && a.k == b.k &&
         a.w == b.w && a.proximity_km == b.proximity_km && a.temporal_only == b.temporal_only &&
         a.focal_mmsi == b.focal_mmsi && a.members == b.members && a.nodes == b.nodes &&
         a.edges == b.edges && a.labels == b.labels && a.scenario == b.scenario;
}

TemporalGraph build_temporal_graph(const AugmentedGroup& group, std::int64_t window_start,
                                   std::uint32_t w, double proximity_km, bool temporal_only) {
  if (group.members.empty()) throw InternalError("build_temporal_graph: empty group");
  if (w < 1) throw ConfigError("window length w must be >= 1");

  const auto k = static_cast<std::uint32_t>(group.members.size());
  for (const auto& m : group.members) {
    if (!m.covers_window(window_start, w) || m.t0 != window_start ||
        m.states.size() != w) {
      throw IncompleteCoverage("group member " + std::to_string(m.mmsi) +
                               " does not cover the window exactly");
    }
  }

  TemporalGraph g;
  g.id = "g-" + std::to_string(group.focal().mmsi) + "-" + std::to_string(window_start);
  g.window_start = window_start;
  g.dt = group.focal().dt;
  g.k = k;
  g.w = w;
  g.proximity_km = proximity_km;
  g.temporal_only = temporal_only;
  g.focal_mmsi = group.focal().mmsi;

  g.members.reserve(k);
  for (const auto& m : group.members) {
    g.members.push_back({m.mmsi, m.vessel_type, m.provenance, m.parent_mmsi, 0});
  }

  // nodes in (vessel, step) row-major order; rates at step 0 are 0
  g.nodes.reserve(static_cast<std::size_t>(k) * w);
  for (std::uint32_t v = 0; v < k; ++v) {
    const auto rates = rate_of_change(group.members[v]);
    for (std::uint32_t t = 0; t < w; ++t) {
      const auto& s = group.members[v].states[t];
      GraphNode node;
      node.vessel = v;
      node.step = t;
      node.lat = s.lat;
      node.lon = s.lon;
      node.sog = s.sog;
      node.cog = s.cog;
      node.sog_rate = t == 0 ? 0.0 : rates.sog_rate[t - 1];
      node.course_rate = t == 0 ? 0.0 : rates.course_rate[t - 1];
      g.nodes.push_back(node);
    }
  }

  // temporal chains: exactly k*(w-1) edges
  for (std::uint32_t v = 0; v < k; ++v) {
    for (std::uint32_t t = 0; t + 1 < w; ++t) {
      g.edges.push_back({static_cast<std::uint32_t>(g.node_index(v, t)),
                         static_cast<std::uint32_t>(g.node_index(v, t + 1)),
                         EdgeKind::Temporal});
    }
  }

  if (!temporal_only) {
    std::vector<GraphEdge> proximity;
    for (std::uint32_t t = 0; t < w; ++t) {
      for (std::uint32_t a = 0; a < k; ++a) {
        for (std::uint32_t b = a + 1; b < k; ++b) {
          const auto& sa = group.members[a].states[t];
          const auto& sb = group.members[b].states[t];
          if (haversine_km(sa.lat, sa.lon, sb.lat, sb.lon) <= proximity_km) {
            proximity.push_back({static_cast<std::uint32_t>(g.node_index(a, t)),
                                 static_cast<std::uint32_t>(g.node_index(b, t)),
                                 EdgeKind::Proximity});
            proximity.push_back({static_cast<std::uint32_t>(g.node_index(b, t)),
                                 static_cast<std::uint32_t>(g.node_index(a, t)),
                                 EdgeKind::Proximity});
          }
        }
      }
    }
    std::sort(proximity.begin(), proximity.end(), [](const GraphEdge& x, const GraphEdge& y) {
      if (x.src != y.src) return x.src < y.src;
      return x.dst < y.dst;
    });
    g.edges.insert(g.edges.end(), proximity.begin(), proximity.end());
  }

  g.labels.node.assign(static_cast<std::size_t>(k) * w, 0);
  g.labels.edge.assign(g.edges.size(), 0);
  g.labels.y_traj.assign(k, 0);
  return g;
}

void attach_labels(TemporalGraph& graph, LabelSet labels) {
  const std::size_t n_nodes = static_cast<std::size_t>(graph.k) * graph.w;
  if (labels.node.size() != n_nodes) {
    throw DanglingLabel("node label vector sized " + std::to_string(labels.node.size()) +
                        ", graph has " + std::to_string(n_nodes) + " nodes");
  }
  if (labels.edge.size() != graph.edges.size()) {
    throw DanglingLabel("edge label vector sized " + std::to_string(labels.edge.size()) +
                        ", graph has " + std::to_string(graph.edges.size()) + " edges");
  }
  if (labels.y_traj.size() != graph.k) {
    throw DanglingLabel("y_traj sized " + std::to_string(labels.y_traj.size()) +
                        ", graph has " + std::to_string(graph.k) + " members");
  }
  for (const auto& mask : labels.masks) {
    if (mask.vessel >= graph.k || mask.s + mask.m > graph.w) {
      throw DanglingLabel("mask for vessel " + std::to_string(mask.vessel) +
                          " exceeds graph bounds");
    }
  }

  // y_traj must equal OR over the member's node labels
  for (std::uint32_t v = 0; v < graph.k; ++v) {
    int any = 0;
    for (std::uint32_t t = 0; t < graph.w; ++t) {
      if (labels.node[graph.node_index(v, t)]) any = 1;
    }
    if (any != labels.y_traj[v]) {
      throw InternalError("y_traj inconsistent with node labels for member " +
                          std::to_string(v));
    }
  }

  // graph label: any y_traj or any edge label
  int expected = 0;
  for (const auto y : labels.y_traj) {
    if (y) expected = 1;
  }
  for (const auto e : labels.edge) {
    if (e) expected = 1;
  }
  if (labels.graph != expected) {
    throw InternalError("graph label inconsistent with member/edge labels");
  }

  // every positive label must trace back to a scenario
  const bool any_positive = expected == 1;
  if (any_positive && labels.rationale.empty()) {
    throw InternalError("positive labels present without rationale provenance");
  }

  graph.labels = std::move(labels);
}

std::vector<WindowRef> window_plan(const std::vector<Trajectory>& trajs, std::size_t w,
                                   std::size_t stride) {
  if (stride < 1) throw ConfigError("window stride must be >= 1");
  if (w < 2) throw ConfigError("window length must be >= 2");
  std::vector<WindowRef> out;
  for (std::size_t idx = 0; idx < trajs.size(); ++idx) {
    const auto& traj = trajs[idx];
    if (traj.states.size() < w) continue;
    for (std::size_t start = 0; start + w <= traj.states.size(); start += stride) {
      out.push_back({idx, traj.mmsi, traj.time_at(start)});
    }
  }
  std::sort(out.begin(), out.end(), [](const WindowRef& a, const WindowRef& b) {
    if (a.focal_mmsi != b.focal_mmsi) return a.focal_mmsi < b.focal_mmsi;
    if (a.start != b.start) return a.start < b.start;
    return a.traj_index < b.traj_index;
  });
  return out;
}

}  // namespace vesselgraph
