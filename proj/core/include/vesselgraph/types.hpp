#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vesselgraph {

/// Vessel categories carried by the ingested AIS corpus.
enum class VesselType { Cargo, Tanker, Fishing, Passenger };

const char* to_string(VesselType type);
VesselType vessel_type_from_string(const std::string& name);

using Mmsi = std::int64_t;

// Virtual companions get identifiers from a reserved namespace so they can
// never collide with a real nine-digit MMSI.
inline constexpr Mmsi kSyntheticMmsiBase = 990000000;

/// One timestamped AIS observation of one vessel.
struct AisRecord {
  Mmsi mmsi = 0;
  std::int64_t t = 0;  // UTC, seconds
  double lat = 0.0;    // degrees, [-90, 90]
  double lon = 0.0;    // degrees, [-180, 180]
  double sog = 0.0;    // knots, >= 0
  double cog = 0.0;    // degrees, [0, 360)
  VesselType vessel_type = VesselType::Cargo;
};

struct RegionBounds {
  double lon_min = -180.0;
  double lon_max = 180.0;
  double lat_min = -90.0;
  double lat_max = 90.0;
};

// West Australian offshore coverage of the ingested corpus.
inline constexpr RegionBounds kDefaultRegion{105.0, 116.0, -36.0, -15.0};

struct VesselState {
  double lat = 0.0;
  double lon = 0.0;
  double sog = 0.0;
  double cog = 0.0;
};

enum class Provenance { Real, Synthetic };

/// Time-ordered vessel track on a uniform grid t0, t0+dt, ...
///
/// All trajectories produced by resampling share one global lattice
/// (timestamps are multiples of dt), so states of different vessels are
/// directly co-temporal.
struct Trajectory {
  Mmsi mmsi = 0;
  VesselType vessel_type = VesselType::Cargo;
  std::int64_t t0 = 0;  // timestamp of states[0]
  std::int64_t dt = 0;  // seconds between consecutive states
  std::vector<VesselState> states;
  Provenance provenance = Provenance::Real;
  Mmsi parent_mmsi = 0;  // synthetic members: focal vessel they derive from
  std::string source;    // origin tag, e.g. "csv:205123456/0"

  std::size_t size() const { return states.size(); }
  std::int64_t time_at(std::size_t i) const {
    return t0 + dt * static_cast<std::int64_t>(i);
  }
  std::int64_t end_time() const { return time_at(states.size() - 1); }

  /// Grid index of timestamp t, or nullopt if t is off-grid or out of range.
  std::optional<std::size_t> index_of(std::int64_t t) const {
    if (dt <= 0 || t < t0) return std::nullopt;
    const std::int64_t off = t - t0;
    if (off % dt != 0) return std::nullopt;
    const auto idx = static_cast<std::size_t>(off / dt);
    if (idx >= states.size()) return std::nullopt;
    return idx;
  }

  bool covers_window(std::int64_t start, std::size_t w) const {
    if (w == 0) return false;
    const auto first = index_of(start);
    if (!first) return false;
    return *first + w <= states.size();
  }
};

/// Copy of the w states starting at timestamp `start` (which must be on the
/// trajectory grid); identity fields are preserved.
Trajectory slice_window(const Trajectory& traj, std::int64_t start, std::size_t w);

bool in_region(double lat, double lon, const RegionBounds& bounds);

}  // namespace vesselgraph
