#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "vesselgraph/graph.hpp"
#include "vesselgraph/injector.hpp"
#include "vesselgraph/scenario.hpp"
#include "vesselgraph/synthesizer.hpp"
#include "vesselgraph/types.hpp"

namespace vesselgraph {

/// Full run configuration; every knob lands in the manifest.
struct PipelineConfig {
  std::string input_path;
  std::string output_dir;
  std::uint64_t seed = 0;
  std::int64_t dt_s = 600;
  double window_hours = 4.0;
  std::size_t k_vessels = 4;
  double r_node = 0.5;
  double r_traj = 0.1;
  double k_sigma = 3.5;
  std::vector<std::string> scenario_files;
  double proximity_km = 10.0;
  double neighbor_radius_km = 25.0;
  int optics_min_samples = 3;
  double optics_max_eps_km = 25.0;
  double optics_xi = 0.05;
  SynthesisBounds bounds;
  bool exclude_synthetic_from_injection = false;
  bool temporal_edges_only = false;
  bool force_positive_sign = false;  // literal +k perturbation (one-sided)
  std::string stats_path;
  int threads = 1;
  char delimiter = ',';
  std::int64_t gap_threshold_s = 3600;
  RegionBounds region = kDefaultRegion;

  /// Window length in samples: window_hours * 3600 / dt.
  std::size_t window_samples() const;

  /// Throws ConfigError on any out-of-domain value.
  void validate() const;
};

struct RunCounts {
  std::size_t input_rows = 0;
  std::size_t dropped_out_of_region = 0;
  std::size_t raw_tracks = 0;
  std::size_t trajectories = 0;
  std::size_t dropped_short = 0;
  std::size_t windows = 0;
  std::size_t graphs = 0;
  std::size_t positive_graphs = 0;
  std::size_t node_labels_positive = 0;
  std::size_t edge_labels_positive = 0;
  std::size_t masks = 0;
  std::size_t members = 0;
  std::size_t synthetic_members = 0;
  std::size_t clamp_events = 0;
  std::size_t scenario_fallbacks = 0;
};

struct RunManifest {
  std::string tool = "vesselgraph";
  std::string version;
  std::string config_hash;   // fnv1a64 over the canonical config serialization
  std::string input_checksum;
  PipelineConfig config;
  RunCounts counts;
};

/// Ingest + resample the input file per config; drops and counts
/// out-of-region records and tracks too short for one window.
std::vector<Trajectory> load_corpus(const PipelineConfig& config, RunCounts& counts);

struct GenerationOutput {
  std::vector<TemporalGraph> graphs;  // ordered by (focal mmsi, window start)
  RunCounts counts;                   // generation counters only
};

/// The coordinator loop over an in-memory corpus: window planning, OPTICS
/// grouping, density enforcement, scenario injection (exactly
/// round(N*r_traj) windows), graph building and labeling. Deterministic for
/// fixed (config, corpus) regardless of config.threads.
GenerationOutput generate_graphs(const PipelineConfig& config,
                                 const std::vector<Trajectory>& corpus);

/// One graph per JSONL line with canonical (sorted) keys.
std::string emit_graph_record(const TemporalGraph& graph);
TemporalGraph parse_graph_record(const std::string& line);

/// Writes graphs.jsonl + index.json into dir (created if missing).
void emit_dataset(const std::vector<TemporalGraph>& graphs, const std::filesystem::path& dir);

/// Reads back an emitted dataset (graphs.jsonl).
std::vector<TemporalGraph> load_dataset(const std::filesystem::path& dir);

struct DatasetStats {
  std::size_t graphs = 0;
  std::size_t positive_graphs = 0;
  double r_traj_empirical = 0.0;
  std::size_t node_labels_positive = 0;
  std::size_t edge_labels_positive = 0;
  std::size_t masks = 0;
  std::size_t members = 0;
  std::size_t members_y_traj_positive = 0;
  std::size_t synthetic_members = 0;
  double synthetic_member_fraction = 0.0;
  std::size_t clamp_events = 0;
  std::map<std::string, std::size_t> members_by_vessel_type;
};

DatasetStats compute_stats(const std::filesystem::path& dataset_dir);
std::string stats_to_json(const DatasetStats& stats);

std::string manifest_to_json(const RunManifest& manifest);

/// End-to-end run: ingest -> generate -> emit -> stats -> manifest (written
/// last; its presence marks a complete run). Partial outputs are removed on
/// failure.
RunManifest run_pipeline(const PipelineConfig& config);

/// fnv1a64 hex digest, used for config hashes and input checksums.
std::string fnv1a64_hex(const std::string& bytes);
std::string fnv1a64_file_hex(const std::filesystem::path& path);

}  // namespace vesselgraph
