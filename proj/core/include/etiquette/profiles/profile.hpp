#pragma once

#include <optional>
#include <string>
#include <vector>

#include "etiquette/dist/exponential.hpp"
#include "etiquette/dist/gev.hpp"
#include "etiquette/dist/laplace.hpp"
#include "etiquette/dist/lognormal.hpp"
#include "etiquette/events/types.hpp"

namespace etiquette::profiles {

// Tabulated cross-driver gain statistics versus range.
struct GainCurveTable {
  std::vector<double> range_m;
  std::vector<double> kd_mean, kd_p25, kd_p75;
  std::vector<double> kp_mean, kp_p25, kp_p75;

  bool empty() const { return range_m.empty(); }
  // Linear interpolation, clamped to the tabulated band.
  double kd_mean_at(double range) const;
  double kp_mean_at(double range) const;
};

// Fitted behavior distributions for one road class. Absent fields are
// allowed; consumers check for what they need. decel_limit is stored over
// positive deceleration magnitudes (-a_lim,d); consumers negate on use.
// The reciprocal fields are stored in reciprocal space (1/m, 1/s) and are
// inverted only at reporting and sampling boundaries.
struct ScenarioProfile {
  std::optional<dist::GevParams> accel_limit;        // a_lim,a, m/s^2
  std::optional<dist::GevParams> decel_limit;        // -a_lim,d, m/s^2, positive
  std::optional<dist::LognormalParams> mean_headway; // s
  std::optional<dist::GevParams> extreme_headway;    // Th_lim, s
  std::optional<dist::GevParams> brake_ttc;          // TTC_lim, s
  std::optional<dist::GevParams> max_yaw_rate;       // r_max, deg/s
  std::optional<dist::GevParams> init_range_recip;   // 1/R_L0, 1/m
  std::optional<dist::LaplaceParams> init_ttc_recip; // 1/TTC_0, 1/s
  std::optional<dist::ExponentialParams> pos_init_ttc_recip;  // +1/TTC_0, 1/s
  std::optional<dist::GevParams> lc_duration;        // T, s
  std::optional<GainCurveTable> gain_curves;
};

// A named etiquette profile: one scenario block per road class. Immutable
// value object; safe to share across readers.
struct EtiquetteProfile {
  std::string name;
  ScenarioProfile highway;
  ScenarioProfile local;

  ScenarioProfile& scenario(events::RoadClass road_class) {
    return road_class == events::RoadClass::kHighway ? highway : local;
  }
  const ScenarioProfile& scenario(events::RoadClass road_class) const {
    return road_class == events::RoadClass::kHighway ? highway : local;
  }
};

bool operator==(const GainCurveTable&, const GainCurveTable&);
bool operator==(const ScenarioProfile&, const ScenarioProfile&);
bool operator==(const EtiquetteProfile&, const EtiquetteProfile&);

}  // namespace etiquette::profiles
