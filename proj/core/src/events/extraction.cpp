#include "etiquette/events/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace etiquette::events {

namespace {

bool target_complete(const TrajectorySample& s) {
  return s.has_target() && s.has_range_rate() && s.has_target_lat();
}

bool host_ok(const TrajectorySample& s, const CfCriteria& c) {
  return s.v > c.min_speed && c.box.contains(s.lat_deg, s.lon_deg);
}

bool target_ok(double range, double range_rate, double target_lat, const CfCriteria& c) {
  return range >= c.min_range && range <= c.max_range &&
         std::abs(range_rate) <= c.max_abs_range_rate && std::abs(target_lat) <= c.max_target_lat;
}

}  // namespace

std::vector<CarFollowingEpisode> segment_car_following(const Trip& trip,
                                                       const CfCriteria& criteria) {
  const auto& samples = trip.samples;
  std::vector<CarFollowingEpisode> episodes;

  bool active = false;
  std::size_t start = 0, last_good = 0;
  double anchor_y = 0.0, anchor_yl = 0.0;
  RoadClass run_class = RoadClass::kHighway;
  std::vector<CarFollowingEpisode::TargetPatch> patches;
  std::vector<std::size_t> pending_gap;

  auto close_run = [&] {
    if (!active) return;
    active = false;
    CarFollowingEpisode ep;
    ep.driver_id = trip.driver_id;
    ep.road_class = run_class;
    ep.trip = &trip;
    ep.first = start;
    ep.last = last_good + 1;
    if (ep.duration() > criteria.min_duration) {
      ep.patches = patches;
      episodes.push_back(std::move(ep));
    }
    patches.clear();
    pending_gap.clear();
  };

  auto try_start = [&](std::size_t i) {
    const TrajectorySample& s = samples[i];
    if (!target_complete(s) || !host_ok(s, criteria) ||
        !target_ok(s.range, s.range_rate, s.target_lat, criteria)) {
      return;
    }
    active = true;
    start = last_good = i;
    anchor_y = s.lane_offset;
    anchor_yl = s.leader_lane_offset();
    run_class = s.road_class;
    patches.clear();
    pending_gap.clear();
  };

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const TrajectorySample& s = samples[i];
    if (!active) {
      try_start(i);
      continue;
    }

    if (!host_ok(s, criteria) || s.road_class != run_class ||
        std::abs(s.lane_offset - anchor_y) > criteria.max_lane_excursion) {
      close_run();
      try_start(i);
      continue;
    }

    if (!target_complete(s)) {
      // Sensor dropout; hold the run open while the gap stays bridgeable.
      if (s.t - samples[last_good].t <= criteria.max_bridge_gap) {
        pending_gap.push_back(i);
      } else {
        close_run();
      }
      continue;
    }

    const TrajectorySample& prev = samples[last_good];
    const double prev_range =
        patches.empty() || patches.back().index != last_good ? prev.range : patches.back().range;
    const bool continues =
        target_ok(s.range, s.range_rate, s.target_lat, criteria) &&
        std::abs(s.range - prev_range) <= criteria.max_target_jump &&
        std::abs(s.leader_lane_offset() - anchor_yl) <= criteria.max_lane_excursion &&
        s.t - prev.t <= criteria.max_bridge_gap;

    if (!continues) {
      close_run();
      try_start(i);
      continue;
    }

    if (!pending_gap.empty()) {
      // Interpolate the dropout stretch; reject the bridge if any patched
      // value falls outside the window.
      const double t0 = prev.t, t1 = s.t;
      bool bridge_ok = true;
      std::vector<CarFollowingEpisode::TargetPatch> bridge;
      for (std::size_t gi : pending_gap) {
        const TrajectorySample& g = samples[gi];
        const double w = (g.t - t0) / (t1 - t0);
        CarFollowingEpisode::TargetPatch patch;
        patch.index = gi;
        patch.range = prev.range + w * (s.range - prev.range);
        patch.range_rate = prev.range_rate + w * (s.range_rate - prev.range_rate);
        patch.target_lat = prev.target_lat + w * (s.target_lat - prev.target_lat);
        const double patched_yl = g.lane_offset + patch.target_lat;
        if (!target_ok(patch.range, patch.range_rate, patch.target_lat, criteria) ||
            std::abs(patched_yl - anchor_yl) > criteria.max_lane_excursion) {
          bridge_ok = false;
          break;
        }
        bridge.push_back(patch);
      }
      if (!bridge_ok) {
        close_run();
        try_start(i);
        continue;
      }
      patches.insert(patches.end(), bridge.begin(), bridge.end());
      pending_gap.clear();
    }
    last_good = i;
  }
  close_run();
  return episodes;
}

std::vector<LaneChangeEvent> detect_cut_ins(const Trip& trip, const CutInCriteria& criteria) {
  const auto& samples = trip.samples;
  std::vector<LaneChangeEvent> events;

  for (std::size_t i = 1; i < samples.size(); ++i) {
    const TrajectorySample& cur = samples[i];
    const TrajectorySample& before = samples[i - 1];
    if (!cur.has_target_lat() || !before.has_target_lat()) continue;
    if (!(std::abs(cur.target_lat) < criteria.end_lat &&
          std::abs(before.target_lat) >= criteria.end_lat)) {
      continue;
    }

    // Walk back along the monotone descent of |d_lat|.
    const double side = before.target_lat > 0.0 ? 1.0 : -1.0;
    std::size_t j = i - 1;
    while (j > 0) {
      const TrajectorySample& prev = samples[j - 1];
      if (!prev.has_target_lat()) break;
      if (prev.target_lat * side < 0.0) break;
      if (std::abs(prev.target_lat) + criteria.descent_slack < std::abs(samples[j].target_lat)) break;
      --j;
    }

    // Latest sample of the descent still above the start threshold.
    std::size_t start_idx = i;
    for (std::size_t s = i - 1; ; --s) {
      if (std::abs(samples[s].target_lat) > criteria.start_lat) {
        start_idx = s;
        break;
      }
      if (s == j) break;
    }
    if (start_idx == i) continue;  // descent never reached above start_lat

    bool host_keeps_lane = true;
    for (std::size_t s = start_idx; s <= i; ++s) {
      if (std::abs(samples[s].lane_offset) >= criteria.host_keep) {
        host_keeps_lane = false;
        break;
      }
    }
    if (!host_keeps_lane) continue;

    const TrajectorySample& at_start = samples[start_idx];
    if (!at_start.has_target() || !at_start.has_range_rate()) continue;

    LaneChangeEvent ev;
    ev.driver_id = trip.driver_id;
    ev.road_class = at_start.road_class;
    ev.direction = side > 0.0 ? LaneChangeEvent::Direction::kLeftToRight
                              : LaneChangeEvent::Direction::kRightToLeft;
    ev.t_start = at_start.t;
    ev.t_end = cur.t;
    ev.duration = ev.t_end - ev.t_start;
    ev.initial_range = at_start.range;
    // Positive TTC means the host is catching up (closing, Rdot < 0).
    ev.initial_ttc_recip = -at_start.range_rate / at_start.range;
    if (at_start.range_rate != 0.0) {
      ev.initial_ttc = at_start.range / -at_start.range_rate;
    }
    ev.initial_speed = at_start.v;
    const std::size_t count = i - start_idx + 1;
    ev.dt = count > 1 ? ev.duration / static_cast<double>(count - 1) : 0.1;
    ev.d_lat_series.reserve(count);
    ev.leader_speed_series.reserve(count);
    for (std::size_t s = start_idx; s <= i; ++s) {
      ev.d_lat_series.push_back(samples[s].target_lat);
      ev.leader_speed_series.push_back(samples[s].leader_speed());
    }
    events.push_back(std::move(ev));
  }
  return events;
}

std::vector<const Trip*> select_free_flow_trips(std::span<const Trip> trips,
                                                const FreeFlowCriteria& criteria) {
  std::vector<const Trip*> selected;
  for (const Trip& trip : trips) {
    if (!(trip.duration() > criteria.min_duration)) continue;
    if (!(trip.length() > criteria.min_length)) continue;
    const bool inside = std::all_of(trip.samples.begin(), trip.samples.end(),
                                    [&](const TrajectorySample& s) {
                                      return criteria.box.contains(s.lat_deg, s.lon_deg);
                                    });
    if (inside) selected.push_back(&trip);
  }
  return selected;
}

ExtractionBundle extract_all(std::span<const Trip> trips, const ExtractionOptions& options) {
  ExtractionBundle bundle;
  for (const Trip& trip : trips) {
    auto episodes = segment_car_following(trip, options.car_following);
    bundle.episodes.insert(bundle.episodes.end(), std::make_move_iterator(episodes.begin()),
                           std::make_move_iterator(episodes.end()));
    auto cut_ins = detect_cut_ins(trip, options.cut_in);
    bundle.lane_changes.insert(bundle.lane_changes.end(),
                               std::make_move_iterator(cut_ins.begin()),
                               std::make_move_iterator(cut_ins.end()));
  }

  std::map<std::pair<std::string, RoadClass>, FreeFlowLinkSamples> links;
  for (const Trip* trip : select_free_flow_trips(trips, options.free_flow)) {
    for (const TrajectorySample& s : trip->samples) {
      const std::string* name = trip->link_name(s.link);
      if (name == nullptr) continue;
      auto [it, inserted] = links.try_emplace({*name, s.road_class});
      if (inserted) {
        it->second.link_id = *name;
        it->second.road_class = s.road_class;
      }
      if (!it->second.posted_limit && s.has_posted_limit()) {
        it->second.posted_limit = s.posted_limit;
      }
      it->second.speeds.push_back(s.v);
    }
  }
  bundle.free_flow_links.reserve(links.size());
  for (auto& [key, value] : links) bundle.free_flow_links.push_back(std::move(value));
  return bundle;
}

}  // namespace etiquette::events
