#include "vesselgraph/perception.hpp"

#include "vesselgraph/errors.hpp"
#include "vesselgraph/kinematics.hpp"

namespace vesselgraph {

PerceptionBundle build_perception_bundle(const Trajectory& focal, const AugmentedGroup& group) {
  PerceptionBundle bundle;
  const std::size_t w = focal.size();
  for (const auto& member : group.members) {
    if (member.t0 != focal.t0 || member.size() != w || member.dt != focal.dt) {
      throw InternalError("perception bundle: member grid does not match focal window");
    }
  }

  bundle.ais.reserve(group.members.size() * w);
  bundle.derived.reserve(group.members.size() * (w > 0 ? w - 1 : 0));
  bundle.provenance.reserve(group.members.size());

  for (const auto& member : group.members) {
    for (std::size_t i = 0; i < w; ++i) {
      const auto& s = member.states[i];
      bundle.ais.push_back({member.mmsi, member.time_at(i), s.lat, s.lon, s.sog, s.cog});
    }
    const RateSeries rates = rate_of_change(member);
    for (std::size_t i = 0; i + 1 < w; ++i) {
      bundle.derived.push_back(
          {member.mmsi, member.time_at(i + 1), rates.sog_rate[i], rates.course_rate[i]});
    }
    bundle.provenance.push_back(member.source.empty()
                                    ? ("mmsi:" + std::to_string(member.mmsi))
                                    : member.source);
  }
  return bundle;
}

}  // namespace vesselgraph
