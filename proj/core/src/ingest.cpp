#include "vesselgraph/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "vesselgraph/errors.hpp"
#include "vesselgraph/kinematics.hpp"

namespace vesselgraph {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_double(const std::string& field, const char* name) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw MalformedRow(std::string("unparseable ") + name + ": \"" + field + "\"");
  }
  return v;
}

std::int64_t parse_int(const std::string& field, const char* name) {
  std::int64_t v = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw MalformedRow(std::string("unparseable ") + name + ": \"" + field + "\"");
  }
  return v;
}

// days since 1970-01-01 for a civil date (proleptic Gregorian)
std::int64_t days_from_civil(std::int64_t y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const auto doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::int64_t parse_timestamp(const std::string& field) {
  const bool iso = field.find('T') != std::string::npos || field.find('-') != std::string::npos;
  if (!iso) return parse_int(field, "timestamp");
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char sep = 0, z = 0;
  const int n = std::sscanf(field.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%c", &y, &mo, &d, &sep,
                            &h, &mi, &s, &z);
  if (n < 7 || (sep != 'T' && sep != ' ') || (n == 8 && z != 'Z')) {
    throw MalformedRow("unparseable timestamp: \"" + field + "\"");
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) {
    throw MalformedRow("invalid timestamp components: \"" + field + "\"");
  }
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

}  // namespace

std::string format_iso8601(std::int64_t epoch_s) {
  std::int64_t days = epoch_s / 86400;
  std::int64_t rem = epoch_s % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  // civil_from_days, inverse of days_from_civil
  std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : static_cast<unsigned>(-9));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<long long>(y + (m <= 2)), m, d,
                static_cast<long long>(rem / 3600), static_cast<long long>((rem / 60) % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

std::vector<std::string> split_row(const std::string& row, char delimiter) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : row) {
    if (c == delimiter) {
      out.push_back(trim(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

ColumnMap ColumnMap::from_header(const std::string& header, char delimiter) {
  const auto fields = split_row(header, delimiter);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < fields.size(); ++i) index[lower(fields[i])] = i;

  auto find = [&](std::initializer_list<const char*> names) -> std::size_t {
    for (const char* n : names) {
      auto it = index.find(n);
      if (it != index.end()) return it->second;
    }
    throw MalformedRow(std::string("header is missing mandatory column \"") +
                       *names.begin() + "\"");
  };

  ColumnMap map;
  map.mmsi = find({"mmsi"});
  map.timestamp = find({"timestamp", "time", "t", "basedatetime"});
  map.lat = find({"lat", "latitude"});
  map.lon = find({"lon", "longitude", "lng"});
  map.sog = find({"sog", "speed"});
  map.cog = find({"cog", "course"});
  map.vessel_type = find({"vessel_type", "vesseltype", "type"});
  map.min_fields = 1 + std::max({map.mmsi, map.timestamp, map.lat, map.lon, map.sog,
                                 map.cog, map.vessel_type});
  return map;
}

AisRecord parse_ais_record(const std::string& row, const ColumnMap& schema, char delimiter) {
  const auto fields = split_row(row, delimiter);
  if (fields.size() < schema.min_fields) {
    throw MalformedRow("row has " + std::to_string(fields.size()) + " fields, expected >= " +
                       std::to_string(schema.min_fields));
  }
  AisRecord rec;
  rec.mmsi = parse_int(fields[schema.mmsi], "mmsi");
  rec.t = parse_timestamp(fields[schema.timestamp]);
  rec.lat = parse_double(fields[schema.lat], "lat");
  rec.lon = parse_double(fields[schema.lon], "lon");
  rec.sog = parse_double(fields[schema.sog], "sog");
  rec.cog = parse_double(fields[schema.cog], "cog");
  rec.vessel_type = vessel_type_from_string(fields[schema.vessel_type]);

  if (rec.lat < -90.0 || rec.lat > 90.0) {
    throw OutOfRange("lat out of [-90, 90]: " + std::to_string(rec.lat));
  }
  if (rec.lon < -180.0 || rec.lon > 180.0) {
    throw OutOfRange("lon out of [-180, 180]: " + std::to_string(rec.lon));
  }
  if (rec.sog < 0.0) {
    throw OutOfRange("sog must be >= 0: " + std::to_string(rec.sog));
  }
  if (rec.cog < 0.0 || rec.cog >= 360.0) {
    throw OutOfRange("cog out of [0, 360): " + std::to_string(rec.cog));
  }
  return rec;
}

bool validate_region(const AisRecord& rec, const RegionBounds& bounds) {
  return in_region(rec.lat, rec.lon, bounds);
}

std::vector<RawTrack> assemble_trajectories(std::vector<AisRecord> records,
                                            std::int64_t gap_threshold_s) {
  std::map<Mmsi, std::vector<AisRecord>> by_vessel;
  for (auto& rec : records) by_vessel[rec.mmsi].push_back(rec);

  std::vector<RawTrack> out;
  for (auto& [mmsi, recs] : by_vessel) {
    std::stable_sort(recs.begin(), recs.end(),
                     [](const AisRecord& a, const AisRecord& b) { return a.t < b.t; });
    std::size_t segment = 0;
    RawTrack cur;

    auto flush = [&]() {
      if (!cur.states.empty()) {
        cur.source = "csv:" + std::to_string(mmsi) + "/" + std::to_string(segment++);
        out.push_back(std::move(cur));
        cur = RawTrack{};
      }
    };

    for (const auto& rec : recs) {
      if (!cur.times.empty() && rec.t == cur.times.back()) continue;  // duplicate: keep first
      if (!cur.times.empty() && rec.t - cur.times.back() > gap_threshold_s) flush();
      if (cur.times.empty()) {
        cur.mmsi = mmsi;
        cur.vessel_type = rec.vessel_type;
      }
      cur.times.push_back(rec.t);
      cur.states.push_back({rec.lat, rec.lon, rec.sog, rec.cog});
    }
    flush();
  }
  return out;
}

namespace {

Trajectory resample_impl(const std::vector<std::int64_t>& times,
                         const std::vector<VesselState>& states, std::int64_t dt,
                         Trajectory skeleton) {
  if (dt <= 0) throw ConfigError("resample dt must be positive");
  if (states.size() < 2 || times.back() - times.front() < dt) {
    throw TooShort("trajectory span shorter than dt");
  }

  const std::int64_t first = times.front();
  const std::int64_t last = times.back();
  // smallest lattice point >= first (lattice = integer multiples of dt)
  std::int64_t t0 = first / dt * dt;
  if (t0 < first) t0 += dt;
  const std::int64_t span = last - t0;
  if (span < dt) throw TooShort("fewer than two lattice points in span");
  const auto w = static_cast<std::size_t>(span / dt) + 1;

  Trajectory out = std::move(skeleton);
  out.t0 = t0;
  out.dt = dt;
  out.states.clear();
  out.states.reserve(w);

  std::size_t seg = 0;  // times[seg] <= t < times[seg+1]
  for (std::size_t i = 0; i < w; ++i) {
    const std::int64_t t = t0 + static_cast<std::int64_t>(i) * dt;
    while (seg + 2 < times.size() && times[seg + 1] <= t) ++seg;
    const std::int64_t ta = times[seg];
    const std::int64_t tb = times[seg + 1];
    const VesselState& a = states[seg];
    const VesselState& b = states[seg + 1];
    if (t == ta) {
      out.states.push_back(a);
      continue;
    }
    if (t == tb) {
      out.states.push_back(b);
      continue;
    }
    const double alpha = static_cast<double>(t - ta) / static_cast<double>(tb - ta);
    VesselState s;
    s.lat = a.lat + alpha * (b.lat - a.lat);
    s.lon = a.lon + alpha * (b.lon - a.lon);
    s.sog = a.sog + alpha * (b.sog - a.sog);
    s.cog = wrap_course(a.cog + alpha * wrap_signed_angle(b.cog - a.cog));
    out.states.push_back(s);
  }
  return out;
}

}  // namespace

Trajectory resample_trajectory(const RawTrack& track, std::int64_t dt) {
  Trajectory skeleton;
  skeleton.mmsi = track.mmsi;
  skeleton.vessel_type = track.vessel_type;
  skeleton.provenance = Provenance::Real;
  skeleton.source = track.source;
  return resample_impl(track.times, track.states, dt, std::move(skeleton));
}

Trajectory resample_trajectory(const Trajectory& traj, std::int64_t dt) {
  std::vector<std::int64_t> times(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) times[i] = traj.time_at(i);
  return resample_impl(times, traj.states, dt, traj);
}

std::vector<AisRecord> load_ais_records(std::istream& in, char delimiter,
                                        const RegionBounds& region, LoadReport* report) {
  std::string line;
  if (!std::getline(in, line)) throw MalformedRow("empty input: header row required");
  const ColumnMap schema = ColumnMap::from_header(line, delimiter);

  std::vector<AisRecord> out;
  LoadReport rep;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++rep.rows;
    AisRecord rec = parse_ais_record(line, schema, delimiter);
    if (!validate_region(rec, region)) {
      ++rep.dropped_out_of_region;
      continue;
    }
    out.push_back(rec);
  }
  if (report) *report = rep;
  return out;
}

std::vector<AisRecord> load_ais_file(const std::string& path, char delimiter,
                                     const RegionBounds& region, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path);
  return load_ais_records(in, delimiter, region, report);
}

void write_ais_csv(std::ostream& out, const std::vector<Trajectory>& trajs) {
  out << "mmsi,timestamp,lat,lon,sog,cog,vessel_type\n";
  char buf[256];
  for (const auto& traj : trajs) {
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      const auto& s = traj.states[i];
      std::snprintf(buf, sizeof(buf), "%lld,%s,%.7f,%.7f,%.3f,%.3f,%s\n",
                    static_cast<long long>(traj.mmsi),
                    format_iso8601(traj.time_at(i)).c_str(), s.lat, s.lon, s.sog, s.cog,
                    to_string(traj.vessel_type));
      out << buf;
    }
  }
}

}  // namespace vesselgraph
