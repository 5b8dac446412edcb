#include "etiquette/estimation/extremes.hpp"

#include <numeric>
#include <string>

#include "etiquette/dist/empirical.hpp"
#include "etiquette/errors.hpp"
#include "etiquette/estimation/headway.hpp"

namespace etiquette::estimation {

DriverExtremes driver_extremes(std::span<const events::CarFollowingEpisode> episodes,
                               std::size_t min_samples) {
  if (episodes.empty()) throw InsufficientDataError("driver_extremes: no episodes");
  const std::string& driver = episodes.front().driver_id;
  const events::RoadClass road_class = episodes.front().road_class;
  for (const auto& ep : episodes) {
    if (ep.driver_id != driver || ep.road_class != road_class) {
      throw DomainError("driver_extremes: episodes must share one driver and road class");
    }
  }

  std::vector<double> throttle_accels, brake_accels, headways;
  DriverExtremes result;
  result.driver_id = driver;
  result.road_class = road_class;

  for (const auto& ep : episodes) {
    for (std::size_t i = 0; i < ep.size(); ++i) {
      const events::TrajectorySample s = ep.sample(i);
      headways.push_back(s.range / s.v);
      if (s.brake) {
        brake_accels.push_back(s.a);
      } else if (s.a > 0.0) {
        throttle_accels.push_back(s.a);
      }
    }
    auto ttcs = start_to_brake_ttc(ep);
    result.brake_ttcs.insert(result.brake_ttcs.end(), ttcs.begin(), ttcs.end());
  }

  result.pooled_samples = headways.size();
  if (result.pooled_samples < min_samples) {
    throw InsufficientDataError("driver_extremes: driver " + driver + " has " +
                                std::to_string(result.pooled_samples) + " samples; need " +
                                std::to_string(min_samples));
  }
  if (throttle_accels.empty()) {
    throw InsufficientDataError("driver_extremes: driver " + driver + " has no throttle samples");
  }
  if (brake_accels.empty()) {
    throw InsufficientDataError("driver_extremes: driver " + driver + " has no brake samples");
  }

  result.accel_limit = dist::empirical_percentile(throttle_accels, 0.975);
  result.decel_limit = dist::empirical_percentile(brake_accels, 0.025);
  result.extreme_headway = dist::empirical_percentile(headways, 0.025);
  result.mean_headway = std::accumulate(headways.begin(), headways.end(), 0.0) /
                        static_cast<double>(headways.size());
  return result;
}

}  // namespace etiquette::estimation
