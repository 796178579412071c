#include "vesselgraph/kinematics.hpp"

#include <cmath>
#include <numbers>

#include "vesselgraph/errors.hpp"

namespace vesselgraph {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

double wrap_course(double deg) {
  if (deg >= 0.0 && deg < 360.0) return deg;
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r = 0.0;  // fmod can land exactly on 360 after the add
  return r;
}

double wrap_signed_angle(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r > 180.0) r -= 360.0;
  if (r <= -180.0) r += 360.0;
  return r;
}

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  const double phi1 = lat1 * kDegToRad;
  const double phi2 = lat2 * kDegToRad;
  const double dphi = (lat2 - lat1) * kDegToRad;
  const double dlambda = (lon2 - lon1) * kDegToRad;
  const double sp = std::sin(dphi / 2.0);
  const double sl = std::sin(dlambda / 2.0);
  double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
  if (h > 1.0) h = 1.0;
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

RateSeries rate_of_change(const Trajectory& traj) {
  RateSeries out;
  out.dt = static_cast<double>(traj.dt);
  if (traj.states.size() < 2) return out;
  out.sog_rate.reserve(traj.states.size() - 1);
  out.course_rate.reserve(traj.states.size() - 1);
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    out.sog_rate.push_back((traj.states[i].sog - traj.states[i - 1].sog) / out.dt);
    out.course_rate.push_back(
        wrap_signed_angle(traj.states[i].cog - traj.states[i - 1].cog) / out.dt);
  }
  return out;
}

namespace {

std::pair<double, double> mean_and_stddev(const std::vector<const std::vector<double>*>& chunks) {
  std::size_t n = 0;
  double sum = 0.0;
  for (const auto* c : chunks) {
    n += c->size();
    for (double v : *c) sum += v;
  }
  if (n < 2) throw InsufficientSamples("rate distribution fit needs at least 2 samples");
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (const auto* c : chunks) {
    for (double v : *c) {
      const double d = v - mean;
      ss += d * d;
    }
  }
  return {mean, std::sqrt(ss / static_cast<double>(n - 1))};
}

}  // namespace

RateDistribution fit_rate_distribution(const RateSeries& rates) {
  RateDistribution d;
  std::tie(d.mu_sog_rate, d.sigma_sog_rate) = mean_and_stddev({&rates.sog_rate});
  std::tie(d.mu_course_rate, d.sigma_course_rate) = mean_and_stddev({&rates.course_rate});
  return d;
}

RateDistribution fit_rate_distribution(const std::vector<RateSeries>& pool) {
  std::vector<const std::vector<double>*> a, w;
  a.reserve(pool.size());
  w.reserve(pool.size());
  for (const auto& r : pool) {
    a.push_back(&r.sog_rate);
    w.push_back(&r.course_rate);
  }
  RateDistribution d;
  std::tie(d.mu_sog_rate, d.sigma_sog_rate) = mean_and_stddev(a);
  std::tie(d.mu_course_rate, d.sigma_course_rate) = mean_and_stddev(w);
  return d;
}

std::pair<double, double> dead_reckon(double lat, double lon, double sog_knots,
                                      double cog_deg, double dt_s) {
  if (std::abs(lat) > 89.0) {
    throw PoleProximity("dead reckoning undefined above 89 degrees latitude");
  }
  const double dist_km = sog_knots * kKnotsToKmPerHour * (dt_s / 3600.0);
  const double cog_rad = cog_deg * kDegToRad;
  const double dlat = dist_km * std::cos(cog_rad) / kKmPerDegree;
  const double dlon = dist_km * std::sin(cog_rad) / (kKmPerDegree * std::cos(lat * kDegToRad));
  double lat2 = lat + dlat;
  double lon2 = lon + dlon;
  if (lon2 > 180.0) lon2 -= 360.0;
  if (lon2 < -180.0) lon2 += 360.0;
  return {lat2, lon2};
}

std::pair<double, double> solve_step(double lat, double lon, double lat_to,
                                     double lon_to, double dt_s) {
  const double north_km = (lat_to - lat) * kKmPerDegree;
  const double east_km = (lon_to - lon) * kKmPerDegree * std::cos(lat * kDegToRad);
  const double dist_km = std::hypot(north_km, east_km);
  const double sog = dist_km / (kKnotsToKmPerHour * (dt_s / 3600.0));
  double cog = 0.0;
  if (dist_km > 0.0) cog = wrap_course(std::atan2(east_km, north_km) / kDegToRad);
  return {sog, cog};
}

void rederive_positions(Trajectory& traj, std::size_t from) {
  if (traj.states.empty()) return;
  const double dt = static_cast<double>(traj.dt);
  for (std::size_t i = (from < 1 ? 1 : from); i < traj.states.size(); ++i) {
    const auto& prev = traj.states[i - 1];
    auto [lat, lon] = dead_reckon(prev.lat, prev.lon, prev.sog, prev.cog, dt);
    traj.states[i].lat = lat;
    traj.states[i].lon = lon;
  }
}

}  // namespace vesselgraph
