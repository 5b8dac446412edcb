#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "etiquette/events/types.hpp"

namespace etiquette::events {

// Trajectory CSV schema (header required, UTF-8, '.' decimal, empty = absent):
//   trip_id,driver_id,road_class,t,lat_deg,lon_deg,v,a,brake,R_L,Rdot_L,d_lat,Y,link_id,posted_limit
// brake is 0/1, road_class is highway|local, t in seconds, posted_limit in m/s.
inline constexpr const char* kTrajectoryCsvHeader =
    "trip_id,driver_id,road_class,t,lat_deg,lon_deg,v,a,brake,R_L,Rdot_L,d_lat,Y,link_id,posted_limit";

// Rows are grouped by trip_id in file order; per-trip time monotonicity is
// validated. Malformed rows raise ParseError naming the 1-based data row and
// column.
std::vector<Trip> load_trajectory_csv(std::istream& in);
std::vector<Trip> load_trajectory_csv(const std::filesystem::path& path);

// Writes the exact schema above. Numbers use shortest round-trip formatting,
// so write -> load is lossless and output is byte-deterministic.
void write_trajectory_csv(std::ostream& out, std::span<const Trip> trips);
void write_trajectory_csv(const std::filesystem::path& path, std::span<const Trip> trips);

}  // namespace etiquette::events
