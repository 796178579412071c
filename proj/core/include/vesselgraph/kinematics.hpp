#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "vesselgraph/types.hpp"

namespace vesselgraph {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kKmPerDegree = 111.195;  // meridian arc per degree
inline constexpr double kKnotsToKmPerHour = 1.852;
inline constexpr double kSogMaxKnots = 40.0;

/// Wrap a course angle to [0, 360).
double wrap_course(double deg);

/// Wrap an angle difference to the signed shortest arc in (-180, 180].
double wrap_signed_angle(double deg);

/// Great-circle distance between two lat/lon points, kilometers.
double haversine_km(double lat1, double lon1, double lat2, double lon2);

/// Per-step rates of change of SOG (knots/s) and COG (deg/s, signed shortest
/// arc), length w-1.
struct RateSeries {
  std::vector<double> sog_rate;     // a_i = (SOG_i - SOG_{i-1}) / dt
  std::vector<double> course_rate;  // omega_i, wrapped signed difference / dt
  double dt = 0.0;                  // seconds
};

/// Gaussian fit of the rate channels (sample mean, n-1 standard deviation).
struct RateDistribution {
  double mu_sog_rate = 0.0;
  double sigma_sog_rate = 0.0;
  double mu_course_rate = 0.0;
  double sigma_course_rate = 0.0;
};

RateSeries rate_of_change(const Trajectory& traj);

RateDistribution fit_rate_distribution(const RateSeries& rates);

/// Pooled fit over several trajectories' rate series.
RateDistribution fit_rate_distribution(const std::vector<RateSeries>& pool);

/// Advance a position along a constant bearing for dt seconds.
///
/// Rhumb-line step on the small-angle plane: dist = sog * dt,
/// dlat = dist*cos(cog)/111.195, dlon = dist*sin(cog)/(111.195*cos(lat)).
/// The step is invertible via solve_step(). |lat| > 89 deg is rejected.
std::pair<double, double> dead_reckon(double lat, double lon, double sog_knots,
                                      double cog_deg, double dt_s);

/// Inverse of dead_reckon: the (sog, cog) that lands a dt-second step from
/// (lat, lon) onto (lat_to, lon_to) under the same plane approximation.
std::pair<double, double> solve_step(double lat, double lon, double lat_to,
                                     double lon_to, double dt_s);

/// Recompute states[i].lat/lon for i in [max(from,1), size) by chaining
/// dead_reckon from the predecessor state. Segment-start convention: motion
/// over [t_{i-1}, t_i) is governed by sog_{i-1}/cog_{i-1}.
void rederive_positions(Trajectory& traj, std::size_t from);

}  // namespace vesselgraph
