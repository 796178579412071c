#include "vesselgraph/synthesizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vesselgraph/errors.hpp"
#include "vesselgraph/kinematics.hpp"
#include "vesselgraph/neighborhood.hpp"

namespace vesselgraph {

std::vector<Trajectory> augment_with_real_neighbors(const Trajectory& focal,
                                                    const std::vector<Trajectory>& pool,
                                                    double radius_km,
                                                    std::size_t k_vessels) {
  if (k_vessels < 1) throw ConfigError("k_vessels must be >= 1");
  std::vector<Trajectory> adopted;
  if (k_vessels == 1 || focal.states.empty()) return adopted;

  // full-coverage rule: a neighbor must share every focal sample
  const auto hits = neighbors_within(focal, pool, radius_km, focal.size());
  adopted.reserve(std::min<std::size_t>(hits.size(), k_vessels - 1));
  for (const auto& hit : hits) {
    if (adopted.size() == k_vessels - 1) break;
    for (const auto& cand : pool) {
      if (cand.mmsi != hit.mmsi) continue;
      if (!cand.covers_window(focal.t0, focal.size())) continue;
      adopted.push_back(slice_window(cand, focal.t0, focal.size()));
      break;
    }
  }
  return adopted;
}

Trajectory synthesize_virtual_neighbor(const Trajectory& focal, const SynthesisBounds& bounds,
                                       RandomStream& rng, Mmsi synthetic_mmsi) {
  Trajectory out = focal;
  out.mmsi = synthetic_mmsi;
  out.provenance = Provenance::Synthetic;
  out.parent_mmsi = focal.mmsi;
  out.source = "synthetic:" + std::to_string(focal.mmsi);

  // displaced start, uniform over the pos_jitter disk
  const double theta = rng.uniform(0.0, 360.0);
  const double radius = bounds.pos_jitter_km * std::sqrt(rng.uniform01());
  if (radius > 0.0) {
    const double rad = theta * std::numbers::pi / 180.0;
    double lat0 = focal.states[0].lat + radius * std::cos(rad) / kKmPerDegree;
    double lon0 = focal.states[0].lon +
                  radius * std::sin(rad) /
                      (kKmPerDegree * std::cos(focal.states[0].lat * std::numbers::pi / 180.0));
    // the planar offset slightly over/undershoots on the sphere; pull back inside
    const double d = haversine_km(focal.states[0].lat, focal.states[0].lon, lat0, lon0);
    if (d > bounds.pos_jitter_km) {
      const double scale = bounds.pos_jitter_km / d * (1.0 - 1e-9);
      lat0 = focal.states[0].lat + (lat0 - focal.states[0].lat) * scale;
      lon0 = focal.states[0].lon + (lon0 - focal.states[0].lon) * scale;
    }
    out.states[0].lat = lat0;
    out.states[0].lon = lon0;
  }

  const double sog_base = rng.uniform(-bounds.sog_jitter_kn, bounds.sog_jitter_kn);
  const double cog_base = rng.uniform(-bounds.cog_jitter_deg, bounds.cog_jitter_deg);
  const double sog_noise = kStepNoiseFraction * bounds.sog_jitter_kn;
  const double cog_noise = kStepNoiseFraction * bounds.cog_jitter_deg;

  for (std::size_t i = 0; i < out.states.size(); ++i) {
    const double ds = sog_base + rng.uniform(-sog_noise, sog_noise);
    const double dc = cog_base + rng.uniform(-cog_noise, cog_noise);
    out.states[i].sog = std::clamp(focal.states[i].sog + ds, 0.0, kSogMaxKnots);
    out.states[i].cog = wrap_course(focal.states[i].cog + dc);
  }

  rederive_positions(out, 1);
  return out;
}

AugmentedGroup ensure_density(const Trajectory& focal, const std::vector<Trajectory>& pool,
                              std::size_t k_vessels, double radius_km,
                              const SynthesisBounds& bounds, RandomStream& rng,
                              Mmsi synthetic_mmsi_base) {
  if (k_vessels < 1) throw ConfigError("k_vessels must be >= 1");
  AugmentedGroup group;
  group.members.reserve(k_vessels);
  group.members.push_back(focal);
  group.focal_index = 0;

  for (auto& neighbor : augment_with_real_neighbors(focal, pool, radius_km, k_vessels)) {
    group.members.push_back(std::move(neighbor));
  }
  Mmsi next_mmsi = synthetic_mmsi_base;
  while (group.members.size() < k_vessels) {
    group.members.push_back(synthesize_virtual_neighbor(focal, bounds, rng, next_mmsi++));
  }
  return group;
}

}  // namespace vesselgraph
