#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "etiquette/events/types.hpp"

namespace etiquette::events {

struct GeoBox {
  double lat_min, lat_max, lon_min, lon_max;
  bool contains(double lat, double lon) const {
    return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
  }
};

// Per-sample car-following window: range in [0.1, 90] m, range rate within
// +/-10 m/s, speed above 10 m/s, position inside the box, target lateral
// offset within 0.5 m (no cut-in), lane offsets within 0.5 m of their values
// at the run start (no lane change), range jumps above 10 m treated as a
// target switch. Sensor gaps up to 0.3 s are bridged by linear interpolation;
// longer gaps break the run. Runs of 50 s or less are discarded.
struct CfCriteria {
  double min_range = 0.1;
  double max_range = 90.0;
  double max_abs_range_rate = 10.0;
  double min_speed = 10.0;
  GeoBox box{41.0, 44.5, -88.2, -82.0};
  double max_target_lat = 0.5;
  double max_target_jump = 10.0;
  double max_lane_excursion = 0.5;
  double min_duration = 50.0;
  double max_bridge_gap = 0.3;
};

std::vector<CarFollowingEpisode> segment_car_following(const Trip& trip,
                                                       const CfCriteria& criteria = {});

// Cut-in detection: a monotone descent of |d_lat| from above start_lat to
// below end_lat while the host keeps its lane (|Y| < host_keep throughout).
// t_start is the last sample above start_lat, t_end the first below end_lat.
struct CutInCriteria {
  double start_lat = 3.0;
  double end_lat = 0.3;
  double host_keep = 0.5;
  double descent_slack = 0.1;  // tolerated counter-trend jitter, m
};

std::vector<LaneChangeEvent> detect_cut_ins(const Trip& trip,
                                            const CutInCriteria& criteria = {});

// Free-flow candidate trips: longer than 10 minutes and 300 m, every sample
// inside the box.
struct FreeFlowCriteria {
  double min_duration = 600.0;
  double min_length = 300.0;
  GeoBox box{42.18, 42.34, -83.85, -83.55};
};

std::vector<const Trip*> select_free_flow_trips(std::span<const Trip> trips,
                                                const FreeFlowCriteria& criteria = {});

// Speed observations pooled per (link, road class) across free-flow trips.
struct FreeFlowLinkSamples {
  std::string link_id;
  RoadClass road_class = RoadClass::kHighway;
  std::optional<double> posted_limit;
  std::vector<double> speeds;
};

struct ExtractionOptions {
  CfCriteria car_following;
  CutInCriteria cut_in;
  FreeFlowCriteria free_flow;
};

// Full extraction pass over a set of trips. Episodes hold views into the
// input span, which must stay alive while the bundle is used.
struct ExtractionBundle {
  std::vector<CarFollowingEpisode> episodes;
  std::vector<LaneChangeEvent> lane_changes;
  std::vector<FreeFlowLinkSamples> free_flow_links;
};

ExtractionBundle extract_all(std::span<const Trip> trips, const ExtractionOptions& options = {});

}  // namespace etiquette::events
