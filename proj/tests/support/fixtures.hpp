#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "etiquette/events/types.hpp"

namespace testsupport {

using etiquette::events::RoadClass;
using etiquette::events::TrajectorySample;
using etiquette::events::Trip;

// Steady car-following sample: 20 m/s at 1.4 s headway, inside the default
// query box, highway.
inline TrajectorySample steady_cf_sample(double t) {
  TrajectorySample s;
  s.t = t;
  s.lat_deg = 42.3;
  s.lon_deg = -83.7;
  s.v = 20.0;
  s.a = 0.0;
  s.brake = false;
  s.road_class = RoadClass::kHighway;
  s.range = 28.0;
  s.range_rate = 0.0;
  s.target_lat = 0.0;
  s.lane_offset = 0.0;
  return s;
}

// Trip of `n` samples at 10 Hz; `mutate(i, sample)` tweaks individual rows.
inline Trip make_trip(std::size_t n,
                      const std::function<void(std::size_t, TrajectorySample&)>& mutate = {},
                      const std::string& trip_id = "T1", const std::string& driver_id = "D1") {
  Trip trip;
  trip.trip_id = trip_id;
  trip.driver_id = driver_id;
  trip.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    TrajectorySample s = steady_cf_sample(0.1 * static_cast<double>(i));
    if (mutate) mutate(i, s);
    trip.samples.push_back(s);
  }
  return trip;
}

// Episode spanning a whole synthetic trip (bypasses segmentation).
inline etiquette::events::CarFollowingEpisode episode_of(const Trip& trip) {
  etiquette::events::CarFollowingEpisode ep;
  ep.driver_id = trip.driver_id;
  ep.road_class = trip.samples.empty() ? RoadClass::kHighway : trip.samples.front().road_class;
  ep.trip = &trip;
  ep.first = 0;
  ep.last = trip.samples.size();
  return ep;
}

}  // namespace testsupport
