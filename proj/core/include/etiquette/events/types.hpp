#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace etiquette::events {

enum class RoadClass { kHighway, kLocal };

const char* to_string(RoadClass road_class);
RoadClass road_class_from_string(const std::string& token);

// One 10 Hz BSM-style record: host motion plus the single forward-target
// measurement set. Absent target fields are NaN; use has_target().
struct TrajectorySample {
  double t = 0.0;        // s, strictly increasing within a trip
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double v = 0.0;        // host speed, m/s
  double a = 0.0;        // host longitudinal acceleration, m/s^2
  bool brake = false;
  RoadClass road_class = RoadClass::kHighway;
  double range = std::numeric_limits<double>::quiet_NaN();        // R_L, m
  double range_rate = std::numeric_limits<double>::quiet_NaN();   // Rdot_L, m/s
  double target_lat = std::numeric_limits<double>::quiet_NaN();   // d_lat, m (signed, + = left)
  double lane_offset = 0.0;                                       // Y, m
  std::int32_t link = -1;                                         // index into Trip::link_names
  double posted_limit = std::numeric_limits<double>::quiet_NaN(); // m/s

  bool has_target() const { return !std::isnan(range); }
  bool has_range_rate() const { return !std::isnan(range_rate); }
  bool has_target_lat() const { return !std::isnan(target_lat); }
  bool has_posted_limit() const { return !std::isnan(posted_limit); }
  // Leader lane position, Y_L = Y + d_lat.
  double leader_lane_offset() const { return lane_offset + target_lat; }
  // Leader speed, v_L = v + Rdot_L; falls back to host speed without a rate.
  double leader_speed() const { return has_range_rate() ? v + range_rate : v; }
};

struct Trip {
  std::string trip_id;
  std::string driver_id;
  std::vector<TrajectorySample> samples;
  std::vector<std::string> link_names;  // interned link_id tokens

  double duration() const;  // t_last - t_first
  double length() const;    // sum of v_i * dt_i (left rule)
  const std::string* link_name(std::int32_t index) const;
};

// Maximal contiguous car-following window of one trip. Stored as a view plus
// a patch list for sensor gaps that were bridged by linear interpolation; the
// backing Trip must outlive the episode.
struct CarFollowingEpisode {
  std::string driver_id;
  RoadClass road_class = RoadClass::kHighway;
  const Trip* trip = nullptr;
  std::size_t first = 0;  // inclusive
  std::size_t last = 0;   // exclusive

  struct TargetPatch {
    std::size_t index;  // absolute index into trip->samples
    double range;
    double range_rate;
    double target_lat;
  };
  std::vector<TargetPatch> patches;

  std::size_t size() const { return last - first; }
  double duration() const;
  // Sample with any gap patch applied.
  TrajectorySample sample(std::size_t i) const;
};

struct LaneChangeEvent {
  std::string driver_id;
  RoadClass road_class = RoadClass::kHighway;
  enum class Direction { kLeftToRight, kRightToLeft } direction = Direction::kLeftToRight;
  double t_start = 0.0;
  double t_end = 0.0;
  double duration = 0.0;             // t_end - t_start
  double initial_range = 0.0;        // R_L0, m, read at t_start
  double initial_ttc_recip = 0.0;    // 1/TTC_0 = -Rdot/R at t_start, 1/s
  std::optional<double> initial_ttc; // signed; absent when the rate is zero
  double initial_speed = 0.0;        // host v at t_start
  double dt = 0.1;                   // sampling step of the series below
  std::vector<double> d_lat_series;        // target lateral offset, t_start..t_end
  std::vector<double> leader_speed_series; // v + Rdot per sample (host v fallback)
  std::optional<double> max_yaw_rate;      // deg/s, filled by estimation
};

const char* to_string(LaneChangeEvent::Direction direction);

}  // namespace etiquette::events
