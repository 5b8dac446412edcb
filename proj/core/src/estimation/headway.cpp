#include "etiquette/estimation/headway.hpp"

namespace etiquette::estimation {

std::vector<double> time_headway_series(const events::CarFollowingEpisode& episode) {
  std::vector<double> headways;
  headways.reserve(episode.size());
  for (std::size_t i = 0; i < episode.size(); ++i) {
    const events::TrajectorySample s = episode.sample(i);
    headways.push_back(s.range / s.v);
  }
  return headways;
}

std::vector<double> start_to_brake_ttc(const events::CarFollowingEpisode& episode) {
  std::vector<double> ttcs;
  bool prev_brake = true;  // an edge needs a preceding released sample
  for (std::size_t i = 0; i < episode.size(); ++i) {
    const events::TrajectorySample s = episode.sample(i);
    if (s.brake && !prev_brake && s.range_rate < 0.0) {
      ttcs.push_back(s.range / -s.range_rate);
    }
    prev_brake = s.brake;
  }
  return ttcs;
}

}  // namespace etiquette::estimation
