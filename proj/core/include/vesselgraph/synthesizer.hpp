#pragma once

#include <cstddef>
#include <vector>

#include "vesselgraph/rng.hpp"
#include "vesselgraph/types.hpp"

namespace vesselgraph {

/// Perturbation envelope for virtual neighbors.
struct SynthesisBounds {
  double sog_jitter_kn = 2.0;
  double cog_jitter_deg = 15.0;
  double pos_jitter_km = 5.0;
};

// Fraction of the jitter bound used for per-step noise on top of the
// per-trajectory base offset.
inline constexpr double kStepNoiseFraction = 0.1;

/// A focal vessel plus exactly k_vessels co-temporal member trajectories
/// (focal is members[0]); members share the focal grid (same t0, dt, w).
struct AugmentedGroup {
  std::vector<Trajectory> members;
  std::size_t focal_index = 0;

  const Trajectory& focal() const { return members[focal_index]; }
};

/// Nearest real neighbors (full focal-window coverage required) trimmed onto
/// the focal grid, at most k_vessels-1 of them, nearest first.
std::vector<Trajectory> augment_with_real_neighbors(const Trajectory& focal,
                                                    const std::vector<Trajectory>& pool,
                                                    double radius_km,
                                                    std::size_t k_vessels);

/// One virtual companion of the focal trajectory.
///
/// The start position is displaced uniformly within pos_jitter, SOG/COG get
/// a per-trajectory base offset in [-jitter, +jitter] plus per-step noise
/// within kStepNoiseFraction*jitter, and positions are re-derived by dead
/// reckoning from the displaced start, so the synthetic track is kinematically
/// consistent by construction. SOG is clamped to [0, kSogMaxKnots], COG
/// wrapped to [0, 360).
Trajectory synthesize_virtual_neighbor(const Trajectory& focal, const SynthesisBounds& bounds,
                                       RandomStream& rng, Mmsi synthetic_mmsi);

/// Exactly k_vessels members: focal first, then nearest real neighbors, then
/// synthetic fill. Deterministic for a given stream.
AugmentedGroup ensure_density(const Trajectory& focal, const std::vector<Trajectory>& pool,
                              std::size_t k_vessels, double radius_km,
                              const SynthesisBounds& bounds, RandomStream& rng,
                              Mmsi synthetic_mmsi_base);

}  // namespace vesselgraph
