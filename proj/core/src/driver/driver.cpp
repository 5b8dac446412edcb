#include "etiquette/driver/driver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "etiquette/dist/normal.hpp"
#include "etiquette/dist/rng.hpp"
#include "etiquette/errors.hpp"

namespace etiquette::driver {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;
// Peak of d/dtau (6 tau^5 - 15 tau^4 + 10 tau^3), at tau = 1/2.
constexpr double kQuinticPeakSlope = 1.875;

template <typename T>
const T& require(const std::optional<T>& field, const char* name) {
  if (!field) {
    throw DomainError(std::string("sample_driver: profile is missing field '") + name + "'");
  }
  return *field;
}

// Inverse-transform draw from a GEV truncated to [lo, hi].
double sample_gev_truncated(const dist::GevParams& params, double u, double lo, double hi) {
  const double p_lo = dist::gev_cdf(params, lo);
  const double p_hi = dist::gev_cdf(params, hi);
  const double p = p_lo + u * (p_hi - p_lo);
  if (!(p > 0.0 && p < 1.0)) return std::clamp(dist::gev_quantile(params, 0.5), lo, hi);
  return std::clamp(dist::gev_quantile(params, p), lo, hi);
}

}  // namespace

FreeFlowTarget default_free_flow_target(events::RoadClass road_class) {
  // Posted-limit conventions of the two road classes (70 / 40 mph) plus the
  // 2.2 m/s base free-flow offset.
  return road_class == events::RoadClass::kHighway ? FreeFlowTarget{33.49, 1.5}
                                                   : FreeFlowTarget{20.08, 1.5};
}

DriverParams sample_driver(const profiles::EtiquetteProfile& profile,
                           events::RoadClass road_class, std::uint64_t seed,
                           const SampleOptions& options) {
  const profiles::ScenarioProfile& s = profile.scenario(road_class);
  const auto& mean_headway = require(s.mean_headway, "mean_headway");
  const auto& accel_limit = require(s.accel_limit, "accel_limit");
  const auto& decel_limit = require(s.decel_limit, "decel_limit");
  const auto& lc_duration = require(s.lc_duration, "lc_duration");
  const auto& max_yaw_rate = require(s.max_yaw_rate, "max_yaw_rate");
  const auto& init_range_recip = require(s.init_range_recip, "init_range_recip");
  const auto& pos_init_ttc_recip = require(s.pos_init_ttc_recip, "pos_init_ttc_recip");

  dist::Rng rng(seed);
  DriverParams d;
  d.id = seed;

  // Draw order is part of the determinism contract; keep it fixed.
  d.desired_headway = dist::lognormal_quantile(mean_headway, rng.uniform01());
  d.accel_max = dist::gev_quantile(accel_limit, rng.uniform01());
  d.accel_min = -dist::gev_quantile(decel_limit, rng.uniform01());
  d.lc_duration = sample_gev_truncated(lc_duration, rng.uniform01(), options.min_lc_duration,
                                       options.max_lc_duration);
  // Yaw cap truncated positive: map the draw into (F(0), 1).
  {
    const double p0 = dist::gev_cdf(max_yaw_rate, 0.0);
    const double p = p0 + rng.uniform01() * (1.0 - p0);
    d.max_yaw_rate = dist::gev_quantile(max_yaw_rate, std::clamp(p, 1e-12, 1.0 - 1e-12));
  }
  {
    const FreeFlowTarget target = options.free_flow.value_or(default_free_flow_target(road_class));
    if (target.sd <= 0.0) {
      d.free_flow_speed = std::max(target.mean, 1.0);
    } else {
      // Truncated normal (>= 1 m/s) via the probit map.
      const double p_lo = dist::normal_cdf((1.0 - target.mean) / target.sd);
      const double p = p_lo + rng.uniform01() * (1.0 - p_lo);
      d.free_flow_speed =
          target.mean + target.sd * dist::normal_quantile(std::clamp(p, 1e-12, 1.0 - 1e-12));
    }
  }

  // Acceptance thresholds are quantile ceilings, not draws.
  d.gap_accept_recip = dist::gev_quantile(init_range_recip, options.gap_quantile);
  d.ttc_accept_recip = dist::exponential_quantile(pos_init_ttc_recip, options.gap_quantile);

  if (s.gain_curves && !s.gain_curves->empty()) {
    d.gain_curves = s.gain_curves;
    d.gain_curve_band = {s.gain_curves->range_m.front(), s.gain_curves->range_m.back()};
  }

  if (!(d.accel_max > 0.0) || !(d.accel_min < 0.0)) {
    throw DomainError("sample_driver: profile produced a non-positive accel_max or "
                      "non-negative accel_min");
  }
  return d;
}

double car_following_accel(const DriverParams& driver, const LongitudinalState& state) {
  double kd = driver.kd0;
  double kp = driver.kp0;
  if (driver.gain_curves) {
    const double r = std::clamp(state.range, driver.gain_curve_band[0], driver.gain_curve_band[1]);
    kd = driver.gain_curves->kd_mean_at(r);
    kp = driver.gain_curves->kp_mean_at(r);
  }
  const double raw =
      kd * state.range_rate + kp * (state.range - driver.desired_headway * state.v);
  return std::clamp(raw, driver.accel_min, driver.accel_max);
}

double free_flow_accel(const DriverParams& driver, double v, double gain) {
  return std::clamp(gain * (driver.free_flow_speed - v), driver.accel_min, driver.accel_max);
}

double yaw_capped_duration(double duration, double lane_width, double v, double yaw_cap_deg_s) {
  const double min_duration = kQuinticPeakSlope * lane_width * kDegPerRad / (v * yaw_cap_deg_s);
  return std::max(duration, min_duration);
}

LaneChangeDecision plan_lane_change(const DriverParams& driver, const GapMeasurement& gap,
                                    double v, double lane_width) {
  if (!(gap.range > 0.0)) throw DomainError("plan_lane_change: gap range must be positive");
  LaneChangeDecision decision;
  const bool range_ok = 1.0 / gap.range <= driver.gap_accept_recip;
  const bool closing = gap.range_rate < 0.0;
  const bool ttc_ok = !closing || (-gap.range_rate / gap.range) <= driver.ttc_accept_recip;
  decision.accept = range_ok && ttc_ok;
  if (decision.accept) {
    decision.plan.lane_width = lane_width;
    decision.plan.duration =
        yaw_capped_duration(driver.lc_duration, lane_width, v, driver.max_yaw_rate);
  }
  return decision;
}

LateralSample lateral_offset(const LaneChangePlan& plan, double t, double v) {
  if (!(t >= 0.0 && t <= plan.duration)) {
    throw DomainError("lateral_offset: t outside [0, duration]");
  }
  const double tau = plan.duration > 0.0 ? t / plan.duration : 0.0;
  const double tau2 = tau * tau;
  const double tau3 = tau2 * tau;
  LateralSample out;
  out.offset = plan.lane_width * (tau3 * (6.0 * tau2 - 15.0 * tau + 10.0));
  const double slope = 30.0 * tau2 * (1.0 - tau) * (1.0 - tau);  // d/dtau of the quintic
  const double lateral_rate = plan.lane_width * slope / plan.duration;
  out.yaw_rate_deg_s = lateral_rate / v * kDegPerRad;
  return out;
}

}  // namespace etiquette::driver
