#include "vesselgraph/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "vesselgraph/errors.hpp"
#include "vesselgraph/ingest.hpp"
#include "vesselgraph/kinematics.hpp"
#include "vesselgraph/neighborhood.hpp"
#include "vesselgraph/perception.hpp"
#include "vesselgraph/rng.hpp"

namespace vesselgraph {

namespace {

// rng stream domains
constexpr std::uint64_t kSynthesisDomain = 0xA1;
constexpr std::uint64_t kInjectionDomain = 0xA2;
constexpr std::uint64_t kSelectionDomain = 0xA3;

}  // namespace

std::size_t PipelineConfig::window_samples() const {
  return static_cast<std::size_t>(
      std::llround(window_hours * 3600.0 / static_cast<double>(dt_s)));
}

void PipelineConfig::validate() const {
  if (dt_s <= 0) throw ConfigError("dt must be positive");
  if (!(window_hours > 0.0)) throw ConfigError("window-hours must be positive");
  if (window_samples() < 2) throw ConfigError("window must span at least 2 samples");
  if (k_vessels < 1) throw ConfigError("k-vessels must be >= 1");
  if (!(r_node > 0.0 && r_node <= 1.0)) throw ConfigError("r-node must be in (0, 1]");
  if (!(r_traj > 0.0 && r_traj <= 1.0)) throw ConfigError("r-traj must be in (0, 1]");
  if (!(k_sigma > 3.0)) throw ConfigError("k-sigma must exceed 3");
  if (!(proximity_km > 0.0)) throw ConfigError("proximity-km must be positive");
  if (!(neighbor_radius_km > 0.0)) throw ConfigError("neighbor-radius-km must be positive");
  if (optics_min_samples < 2) throw ConfigError("optics-min-samples must be >= 2");
  if (!(optics_max_eps_km > 0.0)) throw ConfigError("optics-max-eps-km must be positive");
  if (!(optics_xi > 0.0 && optics_xi < 1.0)) throw ConfigError("optics-xi must be in (0, 1)");
  if (bounds.sog_jitter_kn < 0.0 || bounds.cog_jitter_deg < 0.0 || bounds.pos_jitter_km < 0.0) {
    throw ConfigError("jitter bounds must be >= 0");
  }
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (gap_threshold_s <= 0) throw ConfigError("gap threshold must be positive");
  if (region.lon_min >= region.lon_max || region.lat_min >= region.lat_max) {
    throw ConfigError("degenerate region bounds");
  }
}

std::vector<Trajectory> load_corpus(const PipelineConfig& config, RunCounts& counts) {
  LoadReport report;
  auto records = load_ais_file(config.input_path, config.delimiter, config.region, &report);
  counts.input_rows = report.rows;
  counts.dropped_out_of_region = report.dropped_out_of_region;

  auto tracks = assemble_trajectories(std::move(records), config.gap_threshold_s);
  counts.raw_tracks = tracks.size();

  const std::size_t w = config.window_samples();
  std::vector<Trajectory> corpus;
  corpus.reserve(tracks.size());
  for (const auto& track : tracks) {
    try {
      Trajectory traj = resample_trajectory(track, config.dt_s);
      if (traj.states.size() < w) {
        ++counts.dropped_short;
        continue;
      }
      corpus.push_back(std::move(traj));
    } catch (const TooShort&) {
      ++counts.dropped_short;
    }
  }
  counts.trajectories = corpus.size();
  return corpus;
}

namespace {

struct SnapshotContext {
  ClusterAssignment assignment;
  std::map<Mmsi, std::size_t> traj_at;            // mmsi -> corpus index at this t
  std::map<int, std::vector<Trajectory>> pools;   // cluster id -> member windows source
  std::vector<Trajectory> noise_pool;             // all co-temporal trajectories
};

Scenario default_scenario(const PipelineConfig& config) {
  Scenario sc;
  sc.id = "auto-kinematic";
  sc.type = AnomalyType::KinematicBoth;
  sc.level = AnomalyLevel::Node;
  sc.severity = config.k_sigma;
  sc.target.kind = TargetSelector::Kind::Focal;
  sc.prompt_text = "";
  validate_scenario(sc);
  return sc;
}

std::vector<Scenario> load_scenarios(const PipelineConfig& config) {
  std::vector<Scenario> out;
  std::set<std::string> ids;
  for (const auto& path : config.scenario_files) {
    Scenario sc = load_scenario_file(path);
    if (!ids.insert(sc.id).second) {
      throw SchemaViolation("duplicate scenario id \"" + sc.id + "\"");
    }
    if (sc.type == AnomalyType::Rendezvous && config.temporal_edges_only) {
      throw ConfigError("rendezvous scenarios need proximity edges; drop --temporal-edges-only");
    }
    out.push_back(std::move(sc));
  }
  return out;
}

ScenarioMeta scenario_meta(const Scenario& scenario, const RealizedScenario& realized) {
  ScenarioMeta meta;
  meta.id = scenario.id;
  meta.type = to_string(scenario.type);
  meta.level = to_string(scenario.level);
  meta.severity = scenario.severity;
  for (const auto& edit : realized.edits) {
    meta.targets.push_back(static_cast<std::uint32_t>(edit.member));
  }
  const bool shared_block = realized.type == AnomalyType::GroupDeviation ||
                            realized.type == AnomalyType::Loitering ||
                            realized.type == AnomalyType::Rendezvous;
  if (shared_block) {
    meta.block_s = static_cast<std::int64_t>(realized.block_s);
    meta.block_m = static_cast<std::int64_t>(realized.block_m);
  }
  if (realized.pair) {
    meta.pair = {static_cast<std::int64_t>(realized.pair->first),
                 static_cast<std::int64_t>(realized.pair->second)};
  }
  return meta;
}

}  // namespace

GenerationOutput generate_graphs(const PipelineConfig& config,
                                 const std::vector<Trajectory>& corpus) {
  config.validate();
  const std::size_t w = config.window_samples();

  GenerationOutput out;

  // pooled rate fit over the clean corpus; degenerate corpora fall back to a
  // zero fit and fail later only if injection actually needs it
  RateDistribution pooled{};
  {
    std::vector<RateSeries> all;
    all.reserve(corpus.size());
    for (const auto& traj : corpus) all.push_back(rate_of_change(traj));
    try {
      if (!all.empty()) pooled = fit_rate_distribution(all);
    } catch (const InsufficientSamples&) {
      pooled = RateDistribution{};
    }
  }

  const auto windows = window_plan(corpus, w, w);
  out.counts.windows = windows.size();
  if (windows.empty()) return out;

  std::vector<Scenario> scenarios = load_scenarios(config);
  const Scenario fallback = default_scenario(config);
  const bool have_files = !scenarios.empty();
  if (!have_files) scenarios.push_back(fallback);

  // injected subset: exactly round(N * r_traj) windows
  auto select_rng = RandomStream::keyed(config.seed, {kSelectionDomain});
  const auto selected_ids =
      select_anomalous_trajectories(windows.size(), config.r_traj, select_rng);
  std::map<std::size_t, std::size_t> selection_rank;
  for (std::size_t r = 0; r < selected_ids.size(); ++r) selection_rank[selected_ids[r]] = r;

  // snapshot contexts per distinct window start, built serially
  std::map<std::int64_t, SnapshotContext> contexts;
  for (const auto& ref : windows) {
    if (contexts.count(ref.start)) continue;
    SnapshotContext ctx;
    const Snapshot snap = snapshot_at(corpus, ref.start);
    ctx.assignment = optics_order(snap, config.optics_min_samples, config.optics_max_eps_km);
    extract_clusters(ctx.assignment, config.optics_xi);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].index_of(ref.start)) ctx.traj_at.emplace(corpus[i].mmsi, i);
    }
    for (const auto& [mmsi, label] : ctx.assignment.labels) {
      const auto it = ctx.traj_at.find(mmsi);
      if (it == ctx.traj_at.end()) continue;
      ctx.noise_pool.push_back(corpus[it->second]);
      if (label >= 0) ctx.pools[label].push_back(corpus[it->second]);
    }
    contexts.emplace(ref.start, std::move(ctx));
  }

  struct BuiltGraph {
    TemporalGraph graph;
    std::size_t fallback_used = 0;
  };
  std::vector<BuiltGraph> built(windows.size());

  auto build_one = [&](std::size_t idx) {
    const WindowRef& ref = windows[idx];
    const SnapshotContext& ctx = contexts.at(ref.start);
    const Trajectory focal = slice_window(corpus[ref.traj_index], ref.start, w);

    const auto label_it = ctx.assignment.labels.find(focal.mmsi);
    const int label = label_it == ctx.assignment.labels.end() ? kNoiseLabel : label_it->second;
    const std::vector<Trajectory>& pool =
        label >= 0 ? ctx.pools.at(label) : ctx.noise_pool;

    auto synth_rng = RandomStream::keyed(
        config.seed, {kSynthesisDomain, static_cast<std::uint64_t>(focal.mmsi),
                      static_cast<std::uint64_t>(ref.start)});
    const Mmsi synth_base =
        kSyntheticMmsiBase + static_cast<Mmsi>(idx) * static_cast<Mmsi>(config.k_vessels);
    AugmentedGroup group = ensure_density(focal, pool, config.k_vessels,
                                          config.neighbor_radius_km, config.bounds,
                                          synth_rng, synth_base);

    // perception bundle: the validated slot-filled view both agents consume
    const PerceptionBundle bundle = build_perception_bundle(focal, group);
    (void)bundle;

    const Scenario* applied_scenario = nullptr;
    RealizedScenario realized;
    std::size_t fallback_used = 0;

    const auto rank_it = selection_rank.find(idx);
    if (rank_it != selection_rank.end()) {
      auto inject_rng = RandomStream::keyed(
          config.seed, {kInjectionDomain, static_cast<std::uint64_t>(focal.mmsi),
                        static_cast<std::uint64_t>(ref.start)});
      const RatioConfig ratios{config.r_node, config.r_traj};
      // rotate through the scenario list starting at the selection rank and
      // fall back to the default kinematic scenario if no target resolves
      const std::size_t rank = rank_it->second;
      for (std::size_t off = 0; off < scenarios.size() && !applied_scenario; ++off) {
        const Scenario& sc = scenarios[(rank + off) % scenarios.size()];
        try {
          resolve_targets(sc, group, config.exclude_synthetic_from_injection);
        } catch (const UnresolvableTarget&) {
          continue;
        }
        realized = realize_scenario(sc, group, ratios, pooled, inject_rng,
                                    config.exclude_synthetic_from_injection,
                                    config.force_positive_sign);
        applied_scenario = &sc;
      }
      if (!applied_scenario && have_files) {
        realized = realize_scenario(fallback, group, ratios, pooled, inject_rng,
                                    config.exclude_synthetic_from_injection,
                                    config.force_positive_sign);
        applied_scenario = &fallback;
        fallback_used = 1;
      }
      if (!applied_scenario) {
        throw InternalError("no scenario applicable to selected window " + std::to_string(idx));
      }
    }

    TemporalGraph graph = build_temporal_graph(group, ref.start, static_cast<std::uint32_t>(w),
                                               config.proximity_km, config.temporal_edges_only);
    LabelSet labels = generate_labels(graph, applied_scenario ? &realized : nullptr,
                                      applied_scenario);
    if (applied_scenario) {
      graph.scenario = scenario_meta(*applied_scenario, realized);
      for (const auto& edit : realized.edits) {
        graph.members[edit.member].clamp_events = edit.record.clamp_events;
      }
    }
    attach_labels(graph, std::move(labels));
    built[idx] = {std::move(graph), fallback_used};
  };

  const int threads = std::min<int>(config.threads, static_cast<int>(windows.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < windows.size(); ++i) build_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= windows.size()) return;
          try {
            build_one(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  out.graphs.reserve(built.size());
  for (auto& b : built) {
    const TemporalGraph& g = b.graph;
    out.counts.scenario_fallbacks += b.fallback_used;
    out.counts.graphs += 1;
    out.counts.positive_graphs += static_cast<std::size_t>(g.labels.graph);
    for (const auto v : g.labels.node) out.counts.node_labels_positive += v;
    for (const auto v : g.labels.edge) out.counts.edge_labels_positive += v;
    out.counts.masks += g.labels.masks.size();
    out.counts.members += g.members.size();
    for (const auto& m : g.members) {
      if (m.provenance == Provenance::Synthetic) ++out.counts.synthetic_members;
      out.counts.clamp_events += static_cast<std::size_t>(m.clamp_events);
    }
    out.graphs.push_back(std::move(b.graph));
  }
  return out;
}

}  // namespace vesselgraph
