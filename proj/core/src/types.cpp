#include "vesselgraph/types.hpp"

#include <algorithm>
#include <cctype>

#include "vesselgraph/errors.hpp"

namespace vesselgraph {

const char* to_string(VesselType type) {
  switch (type) {
    case VesselType::Cargo: return "Cargo";
    case VesselType::Tanker: return "Tanker";
    case VesselType::Fishing: return "Fishing";
    case VesselType::Passenger: return "Passenger";
  }
  return "Cargo";
}

VesselType vessel_type_from_string(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "cargo") return VesselType::Cargo;
  if (lower == "tanker") return VesselType::Tanker;
  if (lower == "fishing") return VesselType::Fishing;
  if (lower == "passenger") return VesselType::Passenger;
  throw UnknownVesselType("unknown vessel type: \"" + name + "\"");
}

Trajectory slice_window(const Trajectory& traj, std::int64_t start, std::size_t w) {
  const auto first = traj.index_of(start);
  if (!first || *first + w > traj.states.size()) {
    throw InternalError("slice_window: window not covered by trajectory");
  }
  Trajectory out = traj;
  out.t0 = start;
  out.states.assign(traj.states.begin() + static_cast<std::ptrdiff_t>(*first),
                    traj.states.begin() + static_cast<std::ptrdiff_t>(*first + w));
  return out;
}

bool in_region(double lat, double lon, const RegionBounds& bounds) {
  return lon >= bounds.lon_min && lon <= bounds.lon_max && lat >= bounds.lat_min &&
         lat <= bounds.lat_max;
}

}  // namespace vesselgraph
