#include "vesselgraph/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vesselgraph/errors.hpp"
#include "vesselgraph/kinematics.hpp"

namespace vesselgraph {

Snapshot snapshot_at(const std::vector<Trajectory>& trajs, std::int64_t t) {
  Snapshot snap;
  snap.t = t;
  std::map<Mmsi, Snapshot::Point> seen;
  for (const auto& traj : trajs) {
    const auto idx = traj.index_of(t);
    if (!idx) continue;
    const auto& s = traj.states[*idx];
    seen.emplace(traj.mmsi, Snapshot::Point{traj.mmsi, s.lat, s.lon});
  }
  snap.points.reserve(seen.size());
  for (auto& [mmsi, p] : seen) snap.points.push_back(p);
  return snap;
}

ClusterAssignment optics_order(const Snapshot& snapshot, int min_samples,
                               double max_eps_km) {
  if (min_samples < 2) throw ConfigError("optics min_samples must be >= 2");
  const std::size_t n = snapshot.points.size();

  std::vector<Snapshot::Point> pts = snapshot.points;
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return a.mmsi < b.mmsi; });

  auto dist = [&](std::size_t i, std::size_t j) {
    return haversine_km(pts[i].lat, pts[i].lon, pts[j].lat, pts[j].lon);
  };

  // eps-neighborhoods (self included) and core distances
  std::vector<std::vector<std::size_t>> hood(n);
  std::vector<double> core(n, kUndefinedDistance);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> dists;
    dists.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist(i, j);
      if (d <= max_eps_km) {
        hood[i].push_back(j);
        dists.push_back(d);
      }
    }
    if (dists.size() >= static_cast<std::size_t>(min_samples)) {
      std::nth_element(dists.begin(), dists.begin() + (min_samples - 1), dists.end());
      core[i] = dists[static_cast<std::size_t>(min_samples - 1)];
    }
  }

  ClusterAssignment out;
  out.min_samples = min_samples;
  out.max_eps_km = max_eps_km;
  out.ordering.reserve(n);
  out.reachability.reserve(n);
  out.core_distance.reserve(n);

  std::vector<bool> processed(n, false);
  std::vector<double> reach(n, kUndefinedDistance);
  std::set<std::pair<double, std::size_t>> seeds;  // (reachability, mmsi rank)

  auto emit = [&](std::size_t i) {
    processed[i] = true;
    out.ordering.push_back(pts[i].mmsi);
    out.reachability.push_back(reach[i]);
    out.core_distance.push_back(core[i]);
  };

  auto update_seeds = [&](std::size_t p) {
    for (std::size_t o : hood[p]) {
      if (processed[o]) continue;
      const double candidate = std::max(core[p], dist(p, o));
      if (candidate < reach[o]) {
        if (std::isfinite(reach[o])) seeds.erase({reach[o], o});
        reach[o] = candidate;
        seeds.insert({reach[o], o});
      }
    }
  };

  for (std::size_t start = 0; start < n; ++start) {
    if (processed[start]) continue;
    emit(start);  // walk start: reachability stays UNDEFINED
    if (!std::isfinite(core[start])) continue;
    update_seeds(start);
    while (!seeds.empty()) {
      const auto [r, q] = *seeds.begin();
      seeds.erase(seeds.begin());
      emit(q);
      if (std::isfinite(core[q])) update_seeds(q);
    }
  }

  for (std::size_t i = 0; i < n; ++i) out.labels[pts[i].mmsi] = kNoiseLabel;
  return out;
}

namespace {

struct PlotArea {
  std::size_t s = 0;
  std::size_t e = 0;
};

// reachability at position i, +inf past the end
double plot_at(const std::vector<double>& plot, std::size_t i) {
  return i < plot.size() ? plot[i] : kUndefinedDistance;
}

bool steep_down_at(const std::vector<double>& plot, std::size_t i, double xi) {
  const double a = plot_at(plot, i);
  const double b = plot_at(plot, i + 1);
  if (std::isinf(a) && std::isinf(b)) return false;
  return a * (1.0 - xi) >= b;
}

bool steep_up_at(const std::vector<double>& plot, std::size_t i, double xi) {
  const double a = plot_at(plot, i);
  const double b = plot_at(plot, i + 1);
  if (std::isinf(a) && std::isinf(b)) return false;
  return a <= b * (1.0 - xi);
}

// Maximal monotone runs of steep points with at most min_samples consecutive
// non-steep points inside. `down` selects direction.
std::vector<PlotArea> steep_areas(const std::vector<double>& plot, double xi,
                                  int min_samples, bool down) {
  std::vector<PlotArea> areas;
  const std::size_t n = plot.size();
  auto steep = [&](std::size_t i) {
    return down ? steep_down_at(plot, i, xi) : steep_up_at(plot, i, xi);
  };
  auto monotone_ok = [&](std::size_t j) {
    // point j may extend the area if it does not move against the slope
    return down ? plot[j] <= plot[j - 1] : plot[j] >= plot[j - 1];
  };

  std::size_t i = 0;
  while (i < n) {
    if (!steep(i)) {
      ++i;
      continue;
    }
    std::size_t last = i;
    int gap = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!monotone_ok(j)) break;
      if (steep(j)) {
        last = j;
        gap = 0;
      } else if (++gap > min_samples) {
        break;
      }
    }
    areas.push_back({i, last});
    i = last + 1;
  }
  return areas;
}

}  // namespace

void extract_clusters(ClusterAssignment& assignment, double xi) {
  if (!(xi > 0.0 && xi < 1.0)) throw ConfigError("xi must be in (0, 1)");
  const auto& plot = assignment.reachability;
  const std::size_t n = plot.size();
  const int min_samples = assignment.min_samples;

  for (const Mmsi m : assignment.ordering) assignment.labels[m] = kNoiseLabel;
  if (n == 0) return;

  const auto downs = steep_areas(plot, xi, min_samples, true);
  const auto ups = steep_areas(plot, xi, min_samples, false);

  std::set<std::pair<std::size_t, std::size_t>> candidates;
  for (const auto& d : downs) {
    for (const auto& u : ups) {
      if (d.e >= u.s) continue;
      const double left = plot_at(plot, d.s);
      const double right = plot_at(plot, u.e + 1);
      std::size_t s = d.s;
      std::size_t e = u.e;
      if (left * (1.0 - xi) >= right) {
        // left wall significantly higher: skip down-area points above the right wall
        for (std::size_t x = d.e + 1; x-- > d.s;) {
          if (plot[x] > right) {
            s = x;
            break;
          }
        }
      } else if (right * (1.0 - xi) >= left) {
        // right wall significantly higher: end before the up area exceeds the left wall
        for (std::size_t x = u.s; x <= u.e; ++x) {
          if (plot[x] > left) {
            e = (x == 0) ? 0 : x - 1;
            break;
          }
        }
      }
      if (e < s) continue;
      if (e - s + 1 < static_cast<std::size_t>(min_samples)) continue;
      // valley must be significantly below both walls
      double interior = 0.0;
      for (std::size_t x = s + 1; x <= e; ++x) interior = std::max(interior, plot[x]);
      if (!(interior <= std::min(left, right) * (1.0 - xi))) continue;
      candidates.insert({s, e});
    }
  }

  // label each position by the smallest candidate containing it
  std::vector<std::pair<std::size_t, std::size_t>> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    const auto sa = a.second - a.first, sb = b.second - b.first;
    if (sa != sb) return sa < sb;
    return a.first < b.first;
  });

  std::vector<int> bucket(n, kNoiseLabel);
  for (std::size_t c = 0; c < order.size(); ++c) {
    for (std::size_t x = order[c].first; x <= order[c].second; ++x) {
      if (bucket[x] == kNoiseLabel) bucket[x] = static_cast<int>(c);
    }
  }

  // contiguous ids in order of first member position
  std::map<int, int> remap;
  int next_id = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if (bucket[x] == kNoiseLabel) continue;
    auto [it, inserted] = remap.emplace(bucket[x], next_id);
    if (inserted) ++next_id;
    assignment.labels[assignment.ordering[x]] = it->second;
  }
}

std::vector<NeighborHit> neighbors_within(const Trajectory& focal,
                                          const std::vector<Trajectory>& pool,
                                          double radius_km, std::size_t overlap) {
  if (radius_km <= 0.0) throw ConfigError("neighbor radius must be positive");
  if (overlap < 1) throw ConfigError("overlap must be >= 1");

  std::vector<NeighborHit> hits;
  for (const auto& cand : pool) {
    if (cand.mmsi == focal.mmsi) continue;
    if (cand.dt != focal.dt || focal.dt <= 0) continue;
    const std::int64_t lo = std::max(focal.t0, cand.t0);
    const std::int64_t hi = std::min(focal.end_time(), cand.end_time());
    if (hi < lo) continue;
    const auto shared = static_cast<std::size_t>((hi - lo) / focal.dt) + 1;
    if (shared < overlap) continue;

    double sum = 0.0;
    for (std::size_t k = 0; k < shared; ++k) {
      const std::int64_t t = lo + static_cast<std::int64_t>(k) * focal.dt;
      const auto fi = focal.index_of(t);
      const auto ci = cand.index_of(t);
      if (!fi || !ci) {
        sum = kUndefinedDistance;  // off-lattice mismatch; treat as unreachable
        break;
      }
      sum += haversine_km(focal.states[*fi].lat, focal.states[*fi].lon,
                          cand.states[*ci].lat, cand.states[*ci].lon);
    }
    if (!std::isfinite(sum)) continue;
    const double mean = sum / static_cast<double>(shared);
    if (mean <= radius_km) hits.push_back({cand.mmsi, mean});
  }
  std::sort(hits.begin(), hits.end(), [](const NeighborHit& a, const NeighborHit& b) {
    if (a.mean_km != b.mean_km) return a.mean_km < b.mean_km;
    return a.mmsi < b.mmsi;
  });
  return hits;
}

}  // namespace vesselgraph
