#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vesselgraph/synthesizer.hpp"
#include "vesselgraph/types.hpp"

namespace vesselgraph {

/// Slot-filled per-window input record shared by the synthesis and injection
/// stages: raw AIS rows, derived rates, environmental context, provenance.
/// Environmental fields have no bundled source and stay explicit nulls
/// rather than silently defaulting.
struct PerceptionBundle {
  struct AisRow {
    Mmsi mmsi = 0;
    std::int64_t t = 0;
    double lat = 0.0;
    double lon = 0.0;
    double sog = 0.0;
    double cog = 0.0;
  };
  struct DerivedRow {
    Mmsi mmsi = 0;
    std::int64_t t = 0;
    double sog_rate = 0.0;     // knots/s
    double course_rate = 0.0;  // deg/s
  };
  struct Env {
    std::optional<int> wind_bin;
    std::optional<int> wave_bin;
    std::optional<int> current_bin;
    std::optional<double> visibility;
  };

  std::vector<AisRow> ais;          // k*w rows, member order then time
  std::vector<DerivedRow> derived;  // k*(w-1) rows
  Env env;
  std::vector<std::string> provenance;  // per-member source trajectory ids
};

PerceptionBundle build_perception_bundle(const Trajectory& focal, const AugmentedGroup& group);

}  // namespace vesselgraph
