#pragma once

#include <optional>
#include <string>
#include <vector>

#include "etiquette/estimation/extremes.hpp"
#include "etiquette/estimation/free_flow.hpp"
#include "etiquette/estimation/gains.hpp"
#include "etiquette/estimation/kalman.hpp"
#include "etiquette/events/extraction.hpp"

namespace etiquette::estimation {

// Population statistics for one road class, ready for distribution fitting.
// Per-driver entries carry one value per qualifying driver; pooled entries
// carry one value per event.
struct ScenarioSamples {
  std::vector<double> driver_accel_limits;      // a_lim,a per driver
  std::vector<double> driver_decel_magnitudes;  // -a_lim,d per driver (positive)
  std::vector<double> driver_mean_headways;     // s
  std::vector<double> driver_extreme_headways;  // Th_lim per driver, s
  std::vector<double> brake_ttcs;               // pooled across episodes, s
  std::vector<double> lc_max_yaw_rates;         // r_max per cut-in, deg/s
  std::vector<double> lc_init_range_recips;     // 1/R_L0, 1/m
  std::vector<double> lc_init_ttc_recips;       // signed 1/TTC_0, 1/s
  std::vector<double> lc_durations;             // T, s
  std::size_t drivers = 0;
  std::size_t episodes = 0;
  std::size_t lane_changes = 0;
  std::optional<GainPopulationCurves> gain_curves;
};

struct BehaviorSamplesOptions {
  std::size_t min_driver_samples = 1000;  // driver_extremes floor
  bool fit_gains = true;
  bool fit_free_flow = true;
  // Per-link speed pools are strided down to this size before the mixture
  // fit; EM gains nothing from millions of near-duplicate observations.
  std::size_t max_link_speeds = 50000;
  GainFitOptions gain_fit;
  YawRateOptions yaw_rate;
};

struct BehaviorSamples {
  ScenarioSamples highway;
  ScenarioSamples local;
  std::vector<FreeFlowLinkModel> free_flow_models;
  std::vector<std::string> warnings;

  ScenarioSamples& scenario(events::RoadClass road_class) {
    return road_class == events::RoadClass::kHighway ? highway : local;
  }
  const ScenarioSamples& scenario(events::RoadClass road_class) const {
    return road_class == events::RoadClass::kHighway ? highway : local;
  }
};

// Reduces an extraction bundle to fitting-ready population samples: per-driver
// extremes and mean headways, pooled brake TTCs, lane-change statistics
// (Kalman yaw rates included), optional gain curves, and per-link free-flow
// models. Drivers or events that fail a floor are skipped with a warning.
BehaviorSamples behavior_samples(const events::ExtractionBundle& bundle,
                                 const BehaviorSamplesOptions& options = {});

}  // namespace etiquette::estimation
