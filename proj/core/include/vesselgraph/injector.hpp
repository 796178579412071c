#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vesselgraph/graph.hpp"
#include "vesselgraph/kinematics.hpp"
#include "vesselgraph/rng.hpp"
#include "vesselgraph/scenario.hpp"
#include "vesselgraph/synthesizer.hpp"
#include "vesselgraph/types.hpp"

namespace vesselgraph {

enum class PerturbChannel { Sog, Cog, Both };

const char* to_string(PerturbChannel channel);

/// Binary per-node anomaly mask: a single contiguous block of m ones
/// starting at s (or all zeros when no injection applied).
struct AnomalyMask {
  std::vector<std::uint8_t> z;  // length w
  std::size_t s = 0;
  std::size_t m = 0;
  int y_traj = 0;  // 1 iff any z_t == 1
  double k_sigma = 0.0;
  PerturbChannel channel = PerturbChannel::Both;
};

struct RatioConfig {
  double r_node = 0.5;
  double r_traj = 0.1;
};

/// Contiguous block of m = max(1, round(r_node*w)) ones placed at a start
/// index drawn uniformly from {0..w-m}.
AnomalyMask sample_anomaly_block(std::size_t w, double r_node, RandomStream& rng);

/// 1 iff the mask marks at least one node.
int label_trajectory(const AnomalyMask& mask);

/// Exactly round(n*r_traj) indices in [0, n), drawn uniformly without
/// replacement (round half up), returned ascending.
std::vector<std::size_t> select_anomalous_trajectories(std::size_t n, double r_traj,
                                                       RandomStream& rng);

/// Everything needed to audit one member's kinematic perturbation: the
/// constant rates applied over the block (pre-clamp) and the Gaussian fit
/// they were derived from.
struct PerturbationRecord {
  int sign_sog = 0;    // 0 when the channel was untouched
  int sign_course = 0;
  double sog_rate_applied = 0.0;     // mu + sign * k_sigma * sigma, knots/s
  double course_rate_applied = 0.0;  // deg/s
  double mu_sog_rate = 0.0;
  double sigma_sog_rate = 0.0;
  double mu_course_rate = 0.0;
  double sigma_course_rate = 0.0;
  int clamp_events = 0;  // SOG clamps to [0, kSogMaxKnots] inside the block
};

/// Kinematic block injection: over the masked steps the SOG/COG rate is
/// replaced by mu + sign*k_sigma*sigma of the fitted distribution (sign drawn
/// once per block; with force_positive_sign the literal +k form is used) and
/// integrated forward; positions from the block start onward are re-derived
/// by dead reckoning, so the vessel stays displaced after the block ends.
/// A zero-sigma channel falls back to the pooled fit and raises
/// DegenerateSigma if that is zero as well.
Trajectory perturb_kinematics(const Trajectory& traj, const AnomalyMask& mask,
                              const RateDistribution& dist, const RateDistribution& pooled,
                              RandomStream& rng, PerturbationRecord* record,
                              bool force_positive_sign = false);

/// One member's realized edit.
struct MemberEdit {
  std::size_t member = 0;
  AnomalyMask mask;
  PerturbationRecord record;
  bool labels_nodes = true;  // rendezvous steering edits keep node labels clear
};

/// Scenario applied to a group: edited members plus the block geometry the
/// labeler needs.
struct RealizedScenario {
  std::string scenario_id;
  AnomalyType type = AnomalyType::KinematicBoth;
  AnomalyLevel level = AnomalyLevel::Node;
  std::vector<MemberEdit> edits;
  // rendezvous: the steered pair and its shared block
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  std::size_t block_s = 0;
  std::size_t block_m = 0;
  bool graph_flag = false;  // graph-level scenarios force the graph label
};

/// Members selected by the scenario target within the group, in member order.
/// Synthetic members are skipped when exclude_synthetic is set. Throws
/// UnresolvableTarget when no member (or fewer than two for rendezvous)
/// matches.
std::vector<std::size_t> resolve_targets(const Scenario& scenario, const AugmentedGroup& group,
                                         bool exclude_synthetic);

/// Applies the scenario's edits to the group in place and returns the
/// realization metadata used for label generation.
RealizedScenario realize_scenario(const Scenario& scenario, AugmentedGroup& group,
                                  const RatioConfig& ratios, const RateDistribution& pooled,
                                  RandomStream& rng, bool exclude_synthetic = false,
                                  bool force_positive_sign = false);

/// Label generation over a built graph: node labels are the union of the
/// realized masks, edge labels come from the scenario semantics plus the
/// rule that a proximity edge between two node-anomalous co-temporal states
/// is anomalous, the graph label is the OR of member and edge labels, and
/// every positive label is traceable to the scenario via masks/rationale.
/// Pass nullptr for clean graphs (all-zero labels, empty rationale).
LabelSet generate_labels(const TemporalGraph& graph, const RealizedScenario* realized,
                         const Scenario* scenario);

}  // namespace vesselgraph
