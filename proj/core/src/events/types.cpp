#include "etiquette/events/types.hpp"

#include <algorithm>

#include "etiquette/errors.hpp"

namespace etiquette::events {

const char* to_string(RoadClass road_class) {
  return road_class == RoadClass::kHighway ? "highway" : "local";
}

RoadClass road_class_from_string(const std::string& token) {
  if (token == "highway") return RoadClass::kHighway;
  if (token == "local") return RoadClass::kLocal;
  throw DomainError("unknown road_class '" + token + "' (expected highway or local)");
}

double Trip::duration() const {
  return samples.size() < 2 ? 0.0 : samples.back().t - samples.front().t;
}

double Trip::length() const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    total += samples[i].v * (samples[i + 1].t - samples[i].t);
  }
  return total;
}

const std::string* Trip::link_name(std::int32_t index) const {
  if (index < 0 || static_cast<std::size_t>(index) >= link_names.size()) return nullptr;
  return &link_names[static_cast<std::size_t>(index)];
}

double CarFollowingEpisode::duration() const {
  if (size() < 2) return 0.0;
  return trip->samples[last - 1].t - trip->samples[first].t;
}

TrajectorySample CarFollowingEpisode::sample(std::size_t i) const {
  TrajectorySample s = trip->samples[first + i];
  // Patches are stored in ascending index order.
  const auto it = std::lower_bound(
      patches.begin(), patches.end(), first + i,
      [](const TargetPatch& patch, std::size_t index) { return patch.index < index; });
  if (it != patches.end() && it->index == first + i) {
    s.range = it->range;
    s.range_rate = it->range_rate;
    s.target_lat = it->target_lat;
  }
  return s;
}

const char* to_string(LaneChangeEvent::Direction direction) {
  return direction == LaneChangeEvent::Direction::kLeftToRight ? "left_to_right"
                                                               : "right_to_left";
}

}  // namespace etiquette::events
