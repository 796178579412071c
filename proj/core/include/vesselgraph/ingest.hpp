#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "vesselgraph/types.hpp"

namespace vesselgraph {

/// Column positions of the mandatory AIS fields within a delimited row.
struct ColumnMap {
  std::size_t mmsi = 0;
  std::size_t timestamp = 0;
  std::size_t lat = 0;
  std::size_t lon = 0;
  std::size_t sog = 0;
  std::size_t cog = 0;
  std::size_t vessel_type = 0;
  std::size_t min_fields = 0;

  /// Build from a header row. Field names are matched case-insensitively;
  /// missing mandatory columns raise MalformedRow.
  static ColumnMap from_header(const std::string& header, char delimiter);
};

/// Split a delimited row; strips a trailing '\r' and surrounding blanks.
std::vector<std::string> split_row(const std::string& row, char delimiter);

/// Parse one delimited record into a validated AisRecord.
///
/// Accepted timestamp forms: ISO-8601 UTC ("2019-01-01T00:10:00Z", trailing
/// 'Z' optional) or plain epoch seconds.
AisRecord parse_ais_record(const std::string& row, const ColumnMap& schema,
                           char delimiter = ',');

/// True iff the record lies inside the region bounds (inclusive).
bool validate_region(const AisRecord& rec, const RegionBounds& bounds);

/// One vessel's contiguous record run before resampling; timestamps are
/// strictly increasing but not necessarily uniform.
struct RawTrack {
  Mmsi mmsi = 0;
  VesselType vessel_type = VesselType::Cargo;
  std::vector<std::int64_t> times;
  std::vector<VesselState> states;
  std::string source;
};

/// Group records by mmsi, sort by time, deduplicate (keep first), and split
/// wherever a gap exceeds gap_threshold_s. Result is ordered by
/// (mmsi, start time); each piece carries source "csv:<mmsi>/<segment>".
std::vector<RawTrack> assemble_trajectories(std::vector<AisRecord> records,
                                            std::int64_t gap_threshold_s);

/// Resample onto the global dt lattice (timestamps that are multiples of dt
/// within the source span). lat/lon/sog are linearly interpolated; cog is
/// interpolated along the shortest arc and wrapped to [0, 360). Sampling a
/// grid point that coincides with a source fix copies the fix untouched, so
/// resampling an already-uniform on-lattice trajectory is the identity.
/// Throws TooShort when fewer than two grid points fit in the span.
Trajectory resample_trajectory(const RawTrack& track, std::int64_t dt);

/// Same, over an already-uniform trajectory (re-resampling at the same dt
/// is the identity).
Trajectory resample_trajectory(const Trajectory& traj, std::int64_t dt);

struct LoadReport {
  std::size_t rows = 0;
  std::size_t dropped_out_of_region = 0;
};

/// Parse a whole delimited stream (header row required). Records outside
/// `region` are dropped and counted.
std::vector<AisRecord> load_ais_records(std::istream& in, char delimiter,
                                        const RegionBounds& region, LoadReport* report);

std::vector<AisRecord> load_ais_file(const std::string& path, char delimiter,
                                     const RegionBounds& region, LoadReport* report);

/// Emit trajectories as a delimited file with the canonical header
/// (mmsi,timestamp,lat,lon,sog,cog,vessel_type); inverse of ingestion.
void write_ais_csv(std::ostream& out, const std::vector<Trajectory>& trajs);

std::string format_iso8601(std::int64_t epoch_s);

}  // namespace vesselgraph
