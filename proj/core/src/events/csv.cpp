#include "etiquette/events/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "etiquette/errors.hpp"

namespace etiquette::events {

namespace {

constexpr std::array<const char*, 15> kColumns = {
    "trip_id", "driver_id", "road_class", "t",     "lat_deg",
    "lon_deg", "v",         "a",          "brake", "R_L",
    "Rdot_L",  "d_lat",     "Y",          "link_id", "posted_limit"};

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double(std::string_view token, std::size_t row, const char* column) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("row " + std::to_string(row) + ", column " + column +
                         ": cannot parse '" + std::string(token) + "' as a number",
                      row, column);
  }
  return value;
}

std::string format_double(double value) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

}  // namespace

std::vector<Trip> load_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryCsvHeader) {
    throw ParseError("unexpected CSV header; expected: " + std::string(kTrajectoryCsvHeader));
  }

  std::vector<Trip> trips;
  std::unordered_map<std::string, std::size_t> trip_index;
  std::size_t row = 0;

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row;

    const auto fields = split_row(line);
    if (fields.size() != kColumns.size()) {
      throw ParseError("row " + std::to_string(row) + ": expected " +
                           std::to_string(kColumns.size()) + " columns, got " +
                           std::to_string(fields.size()),
                        row, "");
    }

    const std::string trip_id(fields[0]);
    if (trip_id.empty()) {
      throw ParseError("row " + std::to_string(row) + ", column trip_id: empty", row, "trip_id");
    }

    TrajectorySample s;
    s.road_class = [&] {
      try {
        return road_class_from_string(std::string(fields[2]));
      } catch (const DomainError& e) {
        throw ParseError("row " + std::to_string(row) + ", column road_class: " + e.what(),
                          row, "road_class");
      }
    }();
    s.t = parse_double(fields[3], row, "t");
    s.lat_deg = parse_double(fields[4], row, "lat_deg");
    s.lon_deg = parse_double(fields[5], row, "lon_deg");
    s.v = parse_double(fields[6], row, "v");
    s.a = parse_double(fields[7], row, "a");
    if (fields[8] == "0") {
      s.brake = false;
    } else if (fields[8] == "1") {
      s.brake = true;
    } else {
      throw ParseError("row " + std::to_string(row) + ", column brake: expected 0 or 1, got '" +
                           std::string(fields[8]) + "'",
                        row, "brake");
    }
    if (!fields[9].empty()) s.range = parse_double(fields[9], row, "R_L");
    if (!fields[10].empty()) s.range_rate = parse_double(fields[10], row, "Rdot_L");
    if (!fields[11].empty()) s.target_lat = parse_double(fields[11], row, "d_lat");
    s.lane_offset = parse_double(fields[12], row, "Y");
    if (!fields[14].empty()) s.posted_limit = parse_double(fields[14], row, "posted_limit");

    if (s.v < 0.0) {
      throw ParseError("row " + std::to_string(row) + ", column v: negative speed", row, "v");
    }
    if (s.has_target() && !(s.range > 0.0)) {
      throw ParseError("row " + std::to_string(row) + ", column R_L: range must be > 0 when present",
                        row, "R_L");
    }

    auto [it, inserted] = trip_index.try_emplace(trip_id, trips.size());
    if (inserted) {
      Trip trip;
      trip.trip_id = trip_id;
      trip.driver_id = std::string(fields[1]);
      trips.push_back(std::move(trip));
    }
    Trip& trip = trips[it->second];

    if (!fields[13].empty()) {
      const std::string link(fields[13]);
      std::int32_t index = -1;
      for (std::size_t i = 0; i < trip.link_names.size(); ++i) {
        if (trip.link_names[i] == link) {
          index = static_cast<std::int32_t>(i);
          break;
        }
      }
      if (index < 0) {
        index = static_cast<std::int32_t>(trip.link_names.size());
        trip.link_names.push_back(link);
      }
      s.link = index;
    }

    if (!trip.samples.empty() && !(s.t > trip.samples.back().t)) {
      throw ParseError("trip " + trip_id + ": time not strictly increasing at row " +
                           std::to_string(row),
                        row, "t");
    }
    trip.samples.push_back(s);
  }
  return trips;
}

std::vector<Trip> load_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return load_trajectory_csv(in);
}

void write_trajectory_csv(std::ostream& out, std::span<const Trip> trips) {
  out << kTrajectoryCsvHeader << '\n';
  std::string line;
  for (const Trip& trip : trips) {
    for (const TrajectorySample& s : trip.samples) {
      line.clear();
      line += trip.trip_id;
      line += ',';
      line += trip.driver_id;
      line += ',';
      line += to_string(s.road_class);
      line += ',';
      line += format_double(s.t);
      line += ',';
      line += format_double(s.lat_deg);
      line += ',';
      line += format_double(s.lon_deg);
      line += ',';
      line += format_double(s.v);
      line += ',';
      line += format_double(s.a);
      line += ',';
      line += s.brake ? '1' : '0';
      line += ',';
      if (s.has_target()) line += format_double(s.range);
      line += ',';
      if (s.has_range_rate()) line += format_double(s.range_rate);
      line += ',';
      if (s.has_target_lat()) line += format_double(s.target_lat);
      line += ',';
      line += format_double(s.lane_offset);
      line += ',';
      if (const std::string* name = trip.link_name(s.link)) line += *name;
      line += ',';
      if (s.has_posted_limit()) line += format_double(s.posted_limit);
      line += '\n';
      out << line;
    }
  }
}

void write_trajectory_csv(const std::filesystem::path& path, std::span<const Trip> trips) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  write_trajectory_csv(out, trips);
}

}  // namespace etiquette::events
