#include "vesselgraph/injector.hpp"

#include <algorithm>
#include <cmath>

#include "vesselgraph/errors.hpp"

namespace vesselgraph {

const char* to_string(PerturbChannel channel) {
  switch (channel) {
    case PerturbChannel::Sog: return "sog";
    case PerturbChannel::Cog: return "cog";
    case PerturbChannel::Both: return "both";
  }
  return "both";
}

AnomalyMask sample_anomaly_block(std::size_t w, double r_node, RandomStream& rng) {
  if (w < 1) throw ConfigError("mask length w must be >= 1");
  if (!(r_node > 0.0 && r_node <= 1.0)) throw ConfigError("r_node must be in (0, 1]");
  AnomalyMask mask;
  mask.z.assign(w, 0);
  const auto rounded = static_cast<std::size_t>(
      std::llround(r_node * static_cast<double>(w)));
  mask.m = std::clamp<std::size_t>(rounded, 1, w);
  mask.s = static_cast<std::size_t>(rng.below(w - mask.m + 1));
  std::fill(mask.z.begin() + static_cast<std::ptrdiff_t>(mask.s),
            mask.z.begin() + static_cast<std::ptrdiff_t>(mask.s + mask.m), 1);
  mask.y_traj = 1;
  return mask;
}

int label_trajectory(const AnomalyMask& mask) {
  for (const auto z : mask.z) {
    if (z) return 1;
  }
  return 0;
}

std::vector<std::size_t> select_anomalous_trajectories(std::size_t n, double r_traj,
                                                       RandomStream& rng) {
  if (n < 1) throw ConfigError("selection needs n >= 1");
  if (!(r_traj > 0.0 && r_traj <= 1.0)) throw ConfigError("r_traj must be in (0, 1]");
  // round half up, never above n
  auto count = static_cast<std::size_t>(
      std::llround(r_traj * static_cast<double>(n)));
  count = std::min(count, n);

  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  for (std::size_t i = 0; i < count; ++i) {  // partial Fisher-Yates
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(count);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Trajectory perturb_kinematics(const Trajectory& traj, const AnomalyMask& mask,
                              const RateDistribution& dist, const RateDistribution& pooled,
                              RandomStream& rng, PerturbationRecord* record,
                              bool force_positive_sign) {
  if (mask.z.size() != traj.states.size()) {
    throw InternalError("mask length does not match trajectory length");
  }
  if (!(mask.k_sigma > 3.0)) {
    throw ConfigError("k_sigma must exceed 3 to leave the 99.7% interval");
  }
  Trajectory out = traj;
  if (label_trajectory(mask) == 0) return out;  // all-zero mask: identity

  const bool use_sog = mask.channel != PerturbChannel::Cog;
  const bool use_cog = mask.channel != PerturbChannel::Sog;

  PerturbationRecord rec;
  double sog_rate = 0.0;
  double course_rate = 0.0;
  if (use_sog) {
    double sigma = dist.sigma_sog_rate;
    double mu = dist.mu_sog_rate;
    if (sigma == 0.0) {
      sigma = pooled.sigma_sog_rate;
      mu = pooled.mu_sog_rate;
    }
    if (sigma == 0.0) throw DegenerateSigma("SOG rate sigma is zero in both fits");
    rec.sign_sog = force_positive_sign ? 1 : rng.sign();
    rec.mu_sog_rate = mu;
    rec.sigma_sog_rate = sigma;
    sog_rate = mu + rec.sign_sog * mask.k_sigma * sigma;
    rec.sog_rate_applied = sog_rate;
  }
  if (use_cog) {
    double sigma = dist.sigma_course_rate;
    double mu = dist.mu_course_rate;
    if (sigma == 0.0) {
      sigma = pooled.sigma_course_rate;
      mu = pooled.mu_course_rate;
    }
    if (sigma == 0.0) throw DegenerateSigma("COG rate sigma is zero in both fits");
    rec.sign_course = force_positive_sign ? 1 : rng.sign();
    rec.mu_course_rate = mu;
    rec.sigma_course_rate = sigma;
    course_rate = mu + rec.sign_course * mask.k_sigma * sigma;
    rec.course_rate_applied = course_rate;
  }

  const double dt = static_cast<double>(traj.dt);
  for (std::size_t i = mask.s; i < mask.s + mask.m; ++i) {
    const VesselState& prev = (i == 0) ? traj.states[0] : out.states[i - 1];
    if (use_sog) {
      const double base = (i == 0) ? traj.states[0].sog : prev.sog;
      double sog = base + sog_rate * dt;
      if (sog < 0.0 || sog > kSogMaxKnots) {
        sog = std::clamp(sog, 0.0, kSogMaxKnots);
        ++rec.clamp_events;
      }
      out.states[i].sog = sog;
    }
    if (use_cog) {
      const double base = (i == 0) ? traj.states[0].cog : prev.cog;
      out.states[i].cog = wrap_course(base + course_rate * dt);
    }
  }

  // the vessel does not teleport back: everything from the block start is
  // re-integrated, the post-block tail keeps clean rates on displaced positions
  rederive_positions(out, mask.s == 0 ? 1 : mask.s);

  if (record) *record = rec;
  return out;
}

std::vector<std::size_t> resolve_targets(const Scenario& scenario, const AugmentedGroup& group,
                                         bool exclude_synthetic) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < group.members.size(); ++i) {
    const Trajectory& m = group.members[i];
    if (exclude_synthetic && m.provenance == Provenance::Synthetic) continue;
    bool match = false;
    switch (scenario.target.kind) {
      case TargetSelector::Kind::Focal:
        match = (i == group.focal_index);
        break;
      case TargetSelector::Kind::All:
        match = true;
        break;
      case TargetSelector::Kind::ByVesselType:
        match = (m.vessel_type == scenario.target.vessel_type);
        break;
      case TargetSelector::Kind::ByMmsi:
        match = std::find(scenario.target.mmsis.begin(), scenario.target.mmsis.end(),
                          m.mmsi) != scenario.target.mmsis.end();
        break;
      case TargetSelector::Kind::ByRegion:
        match = !m.states.empty() &&
                in_region(m.states[0].lat, m.states[0].lon, scenario.target.region);
        break;
    }
    if (match) out.push_back(i);
  }
  const std::size_t needed = scenario.type == AnomalyType::Rendezvous ? 2 : 1;
  if (out.size() < needed) {
    throw UnresolvableTarget("scenario " + scenario.id + ": target " +
                             to_string(scenario.target) + " resolves to " +
                             std::to_string(out.size()) + " member(s), needs >= " +
                             std::to_string(needed));
  }
  return out;
}

namespace {

// steer two members onto a common meeting point over the shared block, then
// dwell there with near-zero SOG; positions stay dead-reckoning consistent.
// Each vessel approaches to within dwell_km/4 of the midpoint and drifts at
// most dwell_km/10 per step afterwards, so the pair distance at the final
// masked step stays below 0.7*dwell_km.
void realize_rendezvous(AugmentedGroup& group, std::size_t a, std::size_t b,
                        std::size_t s, std::size_t m, double dwell_km, RandomStream& rng) {
  Trajectory& ta = group.members[a];
  Trajectory& tb = group.members[b];
  const double dt = static_cast<double>(ta.dt);
  const std::size_t last = s + m - 1;

  // meeting point: midpoint of the pair at the block start
  const double mid_lat = 0.5 * (ta.states[s].lat + tb.states[s].lat);
  const double mid_lon = 0.5 * (ta.states[s].lon + tb.states[s].lon);
  const double drift_sog =
      std::min(0.3, 0.1 * dwell_km * 3600.0 / (kKnotsToKmPerHour * dt));

  for (Trajectory* t : {&ta, &tb}) {
    for (std::size_t i = s; i <= last; ++i) {
      auto& st = t->states[i];
      const double dist = haversine_km(st.lat, st.lon, mid_lat, mid_lon);
      const std::size_t steps_left = last - i;
      if (dist > 0.25 * dwell_km && steps_left > 0) {
        // spread the remaining distance over the remaining approach steps
        auto [sog, cog] = solve_step(st.lat, st.lon, mid_lat, mid_lon, dt);
        st.sog = std::min(sog / static_cast<double>(steps_left), kSogMaxKnots);
        st.cog = cog;
      } else {
        st.sog = rng.uniform(0.0, drift_sog);
        st.cog = wrap_course(rng.uniform(0.0, 360.0));
      }
      if (i + 1 < t->states.size()) {
        auto [lat, lon] = dead_reckon(st.lat, st.lon, st.sog, st.cog, dt);
        t->states[i + 1].lat = lat;
        t->states[i + 1].lon = lon;
      }
    }
    rederive_positions(*t, last + 1);  // displaced tail, clean rates
  }
}

void realize_loitering(Trajectory& traj, std::size_t s, std::size_t m, double sog_ceiling,
                       RandomStream& rng) {
  for (std::size_t i = s; i < s + m; ++i) {
    traj.states[i].sog = rng.uniform(0.0, sog_ceiling);
    traj.states[i].cog = wrap_course(rng.uniform(0.0, 360.0));
  }
  rederive_positions(traj, s == 0 ? 1 : s);
}

}  // namespace

RealizedScenario realize_scenario(const Scenario& scenario, AugmentedGroup& group,
                                  const RatioConfig& ratios, const RateDistribution& pooled,
                                  RandomStream& rng, bool exclude_synthetic,
                                  bool force_positive_sign) {
  if (group.members.empty()) throw InternalError("realize_scenario: empty group");
  const std::size_t w = group.focal().size();

  RealizedScenario realized;
  realized.scenario_id = scenario.id;
  realized.type = scenario.type;
  realized.level = scenario.level;

  const auto targets = resolve_targets(scenario, group, exclude_synthetic);

  switch (scenario.type) {
    case AnomalyType::SpeedSpike:
    case AnomalyType::CourseDeviation:
    case AnomalyType::KinematicBoth: {
      const PerturbChannel channel =
          scenario.type == AnomalyType::SpeedSpike
              ? PerturbChannel::Sog
              : (scenario.type == AnomalyType::CourseDeviation ? PerturbChannel::Cog
                                                               : PerturbChannel::Both);
      for (const std::size_t idx : targets) {
        AnomalyMask mask = sample_anomaly_block(w, ratios.r_node, rng);
        mask.k_sigma = scenario.severity;
        mask.channel = channel;
        const RateDistribution fit = fit_rate_distribution(rate_of_change(group.members[idx]));
        PerturbationRecord rec;
        group.members[idx] = perturb_kinematics(group.members[idx], mask, fit, pooled, rng,
                                                &rec, force_positive_sign);
        realized.edits.push_back({idx, std::move(mask), rec, true});
      }
      break;
    }
    case AnomalyType::GroupDeviation: {
      // one shared block and one shared course-rate offset for every member
      if (pooled.sigma_course_rate == 0.0) {
        throw DegenerateSigma("group deviation needs a nonzero pooled course-rate sigma");
      }
      AnomalyMask shared = sample_anomaly_block(w, ratios.r_node, rng);
      shared.k_sigma = scenario.severity;
      shared.channel = PerturbChannel::Cog;
      const int sign = force_positive_sign ? 1 : rng.sign();
      const double rate =
          pooled.mu_course_rate + sign * shared.k_sigma * pooled.sigma_course_rate;
      for (std::size_t idx = 0; idx < group.members.size(); ++idx) {
        Trajectory& member = group.members[idx];
        const double dt = static_cast<double>(member.dt);
        for (std::size_t i = shared.s; i < shared.s + shared.m; ++i) {
          const double base = (i == 0) ? member.states[0].cog : member.states[i - 1].cog;
          member.states[i].cog = wrap_course(base + rate * dt);
        }
        rederive_positions(member, shared.s == 0 ? 1 : shared.s);
        PerturbationRecord rec;
        rec.sign_course = sign;
        rec.mu_course_rate = pooled.mu_course_rate;
        rec.sigma_course_rate = pooled.sigma_course_rate;
        rec.course_rate_applied = rate;
        realized.edits.push_back({idx, shared, rec, true});
      }
      realized.block_s = shared.s;
      realized.block_m = shared.m;
      realized.graph_flag = true;
      break;
    }
    case AnomalyType::Loitering: {
      std::vector<std::size_t> apply_to = targets;
      if (scenario.level == AnomalyLevel::Graph) {
        apply_to.resize(group.members.size());
        for (std::size_t i = 0; i < apply_to.size(); ++i) apply_to[i] = i;
      }
      AnomalyMask shared = sample_anomaly_block(w, ratios.r_node, rng);
      shared.k_sigma = 0.0;
      shared.channel = PerturbChannel::Both;
      for (const std::size_t idx : apply_to) {
        realize_loitering(group.members[idx], shared.s, shared.m, scenario.severity, rng);
        realized.edits.push_back({idx, shared, PerturbationRecord{}, true});
      }
      realized.block_s = shared.s;
      realized.block_m = shared.m;
      realized.graph_flag = scenario.level == AnomalyLevel::Graph;
      break;
    }
    case AnomalyType::Rendezvous: {
      const std::size_t a = targets[0];
      const std::size_t b = targets[1];
      const AnomalyMask shared = sample_anomaly_block(w, ratios.r_node, rng);
      if (shared.m < 2) {
        throw ConfigError("rendezvous needs an anomaly block of >= 2 steps; raise r_node or w");
      }
      realize_rendezvous(group, a, b, shared.s, shared.m, scenario.severity, rng);
      {
        const std::size_t last = shared.s + shared.m - 1;
        const auto& pa = group.members[a].states[last];
        const auto& pb = group.members[b].states[last];
        const double final_km = haversine_km(pa.lat, pa.lon, pb.lat, pb.lon);
        if (!(final_km < 0.5)) {
          throw InternalError("rendezvous failed to converge: final distance " +
                              std::to_string(final_km) + " km");
        }
      }
      // steering edits keep node labels clear; the block geometry lives in
      // block_s/block_m for edge labeling
      for (const std::size_t idx : {a, b}) {
        AnomalyMask mask;
        mask.z.assign(w, 0);
        mask.y_traj = 0;
        mask.channel = PerturbChannel::Both;
        realized.edits.push_back({idx, std::move(mask), PerturbationRecord{}, false});
      }
      realized.pair = {a, b};
      realized.block_s = shared.s;
      realized.block_m = shared.m;
      break;
    }
  }
  return realized;
}

namespace {

std::string describe_edit(const Scenario& scenario, const TemporalGraph& graph,
                          const MemberEdit& edit) {
  std::string text = std::string(to_string(scenario.type)) + " on vessel " +
                     std::to_string(graph.members[edit.member].mmsi);
  if (edit.mask.y_traj) {
    text += " over nodes [" + std::to_string(edit.mask.s) + ", " +
            std::to_string(edit.mask.s + edit.mask.m) + ")";
  }
  if (is_kinematic_type(scenario.type)) {
    text += " at " + std::to_string(scenario.severity) + " sigma";
  }
  if (!scenario.prompt_text.empty()) text += "; prompt: " + scenario.prompt_text;
  return text;
}

}  // namespace

LabelSet generate_labels(const TemporalGraph& graph, const RealizedScenario* realized,
                         const Scenario* scenario) {
  LabelSet labels;
  const std::size_t n_nodes = static_cast<std::size_t>(graph.k) * graph.w;
  labels.node.assign(n_nodes, 0);
  labels.edge.assign(graph.edges.size(), 0);
  labels.y_traj.assign(graph.k, 0);
  labels.graph = 0;
  if (realized == nullptr || scenario == nullptr) return labels;

  for (const auto& edit : realized->edits) {
    if (!edit.labels_nodes) continue;
    for (std::size_t t = 0; t < edit.mask.z.size(); ++t) {
      if (!edit.mask.z[t]) continue;
      labels.node[graph.node_index(static_cast<std::uint32_t>(edit.member),
                                   static_cast<std::uint32_t>(t))] = 1;
    }
    if (edit.mask.y_traj) labels.y_traj[edit.member] = 1;

    MaskMeta meta;
    meta.vessel = static_cast<std::uint32_t>(edit.member);
    meta.s = static_cast<std::uint32_t>(edit.mask.s);
    meta.m = static_cast<std::uint32_t>(edit.mask.m);
    meta.scenario_id = realized->scenario_id;
    meta.channel = edit.mask.k_sigma > 0.0 ? to_string(edit.mask.channel) : "";
    meta.k_sigma = edit.mask.k_sigma;
    meta.sign_sog = edit.record.sign_sog;
    meta.sign_course = edit.record.sign_course;
    meta.sog_rate_applied = edit.record.sog_rate_applied;
    meta.course_rate_applied = edit.record.course_rate_applied;
    meta.mu_sog_rate = edit.record.mu_sog_rate;
    meta.sigma_sog_rate = edit.record.sigma_sog_rate;
    meta.mu_course_rate = edit.record.mu_course_rate;
    meta.sigma_course_rate = edit.record.sigma_course_rate;
    labels.masks.push_back(std::move(meta));
  }

  // proximity edge between two node-anomalous co-temporal states is anomalous
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto& edge = graph.edges[e];
    if (edge.kind != EdgeKind::Proximity) continue;
    if (labels.node[edge.src] && labels.node[edge.dst]) labels.edge[e] = 1;
  }

  // rendezvous: the pair's in-block proximity edges are the anomalous interaction
  if (realized->pair) {
    const auto [a, b] = *realized->pair;
    const std::size_t lo = realized->block_s;
    const std::size_t hi = realized->block_s + realized->block_m;
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      const auto& edge = graph.edges[e];
      if (edge.kind != EdgeKind::Proximity) continue;
      const std::uint32_t va = edge.src / graph.w;
      const std::uint32_t vb = edge.dst / graph.w;
      const std::uint32_t step = edge.src % graph.w;
      const bool is_pair = (va == a && vb == b) || (va == b && vb == a);
      if (is_pair && step >= lo && step < hi) labels.edge[e] = 1;
    }
  }

  for (const auto y : labels.y_traj) {
    if (y) labels.graph = 1;
  }
  for (const auto e : labels.edge) {
    if (e) labels.graph = 1;
  }

  for (const auto& edit : realized->edits) {
    labels.rationale.push_back({realized->scenario_id, describe_edit(*scenario, graph, edit)});
  }
  return labels;
}

}  // namespace vesselgraph
