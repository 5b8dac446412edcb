#include "etiquette/estimation/samples.hpp"

#include <map>
#include <utility>

#include "etiquette/errors.hpp"

namespace etiquette::estimation {

namespace {

using events::RoadClass;

void add_lane_change(ScenarioSamples& out, const events::LaneChangeEvent& event,
                     const YawRateOptions& yaw_options, std::vector<std::string>& warnings) {
  out.lane_changes += 1;
  out.lc_durations.push_back(event.duration);
  out.lc_init_range_recips.push_back(1.0 / event.initial_range);
  out.lc_init_ttc_recips.push_back(event.initial_ttc_recip);
  try {
    events::LaneChangeEvent copy = event;
    out.lc_max_yaw_rates.push_back(fill_max_yaw_rate(copy, yaw_options).max_abs_deg_s);
  } catch (const std::runtime_error& e) {
    warnings.push_back("lane change at t=" + std::to_string(event.t_start) + " (driver " +
                       event.driver_id + "): yaw rate skipped: " + e.what());
  }
}

}  // namespace

BehaviorSamples behavior_samples(const events::ExtractionBundle& bundle,
                                 const BehaviorSamplesOptions& options) {
  BehaviorSamples out;

  // Group episodes by (driver, class), preserving first-seen order.
  std::map<std::pair<std::string, RoadClass>, std::vector<events::CarFollowingEpisode>> groups;
  for (const auto& ep : bundle.episodes) {
    groups[{ep.driver_id, ep.road_class}].push_back(ep);
    out.scenario(ep.road_class).episodes += 1;
  }

  std::map<RoadClass, std::vector<GainPolynomials>> gain_fits;
  for (const auto& [key, episodes] : groups) {
    ScenarioSamples& scenario = out.scenario(key.second);
    try {
      DriverExtremes extremes = driver_extremes(episodes, options.min_driver_samples);
      scenario.driver_accel_limits.push_back(extremes.accel_limit);
      scenario.driver_decel_magnitudes.push_back(-extremes.decel_limit);
      scenario.driver_mean_headways.push_back(extremes.mean_headway);
      scenario.driver_extreme_headways.push_back(extremes.extreme_headway);
      scenario.brake_ttcs.insert(scenario.brake_ttcs.end(), extremes.brake_ttcs.begin(),
                                 extremes.brake_ttcs.end());
      scenario.drivers += 1;
    } catch (const InsufficientDataError& e) {
      out.warnings.push_back(std::string("driver skipped: ") + e.what());
      continue;
    }
    if (options.fit_gains) {
      try {
        gain_fits[key.second].push_back(
            fit_gain_polynomials(episodes, options.gain_fit).polynomials);
      } catch (const std::runtime_error& e) {
        out.warnings.push_back("gain fit skipped for driver " + key.first + ": " + e.what());
      }
    }
  }

  if (options.fit_gains) {
    const auto grid = default_gain_grid();
    for (auto& [road_class, fits] : gain_fits) {
      try {
        out.scenario(road_class).gain_curves = gain_population_stats(fits, grid);
      } catch (const InsufficientDataError& e) {
        out.warnings.push_back(std::string("gain curves skipped: ") + e.what());
      }
    }
  }

  for (const auto& event : bundle.lane_changes) {
    add_lane_change(out.scenario(event.road_class), event, options.yaw_rate, out.warnings);
  }

  if (options.fit_free_flow) {
    for (const auto& link : bundle.free_flow_links) {
      try {
        if (link.speeds.size() > options.max_link_speeds) {
          const std::size_t stride = link.speeds.size() / options.max_link_speeds + 1;
          std::vector<double> thinned;
          thinned.reserve(link.speeds.size() / stride + 1);
          for (std::size_t i = 0; i < link.speeds.size(); i += stride) {
            thinned.push_back(link.speeds[i]);
          }
          out.free_flow_models.push_back(
              free_flow_link_model(link.link_id, thinned, link.posted_limit));
        } else {
          out.free_flow_models.push_back(
              free_flow_link_model(link.link_id, link.speeds, link.posted_limit));
        }
      } catch (const InsufficientDataError& e) {
        out.warnings.push_back(std::string("free-flow link skipped: ") + e.what());
      }
    }
  }
  return out;
}

}  // namespace etiquette::estimation
