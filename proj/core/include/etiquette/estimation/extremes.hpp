#pragma once

#include <span>
#include <string>
#include <vector>

#include "etiquette/events/types.hpp"

namespace etiquette::estimation {

// Per-driver behavior summary over one road class. Deceleration is
// acceleration with the brake applied; acceleration is positive acceleration
// without it (coasting samples feed only the headway pool).
struct DriverExtremes {
  std::string driver_id;
  events::RoadClass road_class = events::RoadClass::kHighway;
  double accel_limit = 0.0;      // a_lim,a: 97.5th percentile of throttle accel, > 0
  double decel_limit = 0.0;      // a_lim,d: 2.5th percentile of brake accel, < 0
  double extreme_headway = 0.0;  // Th_lim: 2.5th percentile of headway, s
  double mean_headway = 0.0;     // s
  std::vector<double> brake_ttcs;  // start-to-brake TTC samples, time order
  std::size_t pooled_samples = 0;
};

// Episodes must all belong to one driver and one road class. Requires at
// least `min_samples` pooled samples and non-empty throttle and brake pools.
DriverExtremes driver_extremes(std::span<const events::CarFollowingEpisode> episodes,
                               std::size_t min_samples = 1000);

}  // namespace etiquette::estimation
