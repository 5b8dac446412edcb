#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "etiquette/events/types.hpp"
#include "etiquette/profiles/profile.hpp"

namespace etiquette::driver {

// One realized driver: every behavioral quantity sampled from (or derived
// from a quantile of) the profile's population distributions.
struct DriverParams {
  std::uint64_t id = 0;
  double desired_headway = 1.5;   // Th_d, s
  double accel_max = 1.0;         // m/s^2, > 0
  double accel_min = -2.5;        // m/s^2, < 0
  double free_flow_speed = 30.0;  // m/s
  double kd0 = 0.2;               // fallback range-rate gain, 1/s
  double kp0 = 0.05;              // fallback spacing-error gain, 1/s^2
  std::optional<profiles::GainCurveTable> gain_curves;
  std::array<double, 2> gain_curve_band{0.0, 0.0};  // clamp band when curves are set
  double gap_accept_recip = 0.05; // 1/m; accept gaps with 1/range at or below this
  double ttc_accept_recip = 0.1;  // 1/s; accept closing gaps with 1/TTC at or below this
  double lc_duration = 4.0;       // s
  double max_yaw_rate = 1.0;      // r_cap, deg/s
};

// Free-flow target speed spec: a truncated normal (>= 1 m/s) sampled per
// driver. The profile does not carry a free-flow distribution, so this comes
// from the caller (per-link models or corridor configuration).
struct FreeFlowTarget {
  double mean = 33.49;  // m/s
  double sd = 1.5;      // m/s
};

struct SampleOptions {
  std::optional<FreeFlowTarget> free_flow;  // defaults by road class when absent
  double gap_quantile = 0.9;                // aggressiveness ceiling
  double min_lc_duration = 0.5;             // sampled-duration truncation, s
  double max_lc_duration = 15.0;
};

FreeFlowTarget default_free_flow_target(events::RoadClass road_class);

// Deterministic realization of one driver from the profile population:
// Th_d ~ lognormal(mean_headway), a_max ~ GEV(accel_limit),
// a_min = -sample(decel_limit), lc duration ~ GEV truncated to the bounds,
// yaw cap ~ GEV(max_yaw_rate) truncated positive, and the gap/TTC acceptance
// thresholds pinned at the profile's 90% quantiles. Missing profile fields
// raise a DomainError naming the field.
DriverParams sample_driver(const profiles::EtiquetteProfile& profile,
                           events::RoadClass road_class, std::uint64_t seed,
                           const SampleOptions& options = {});

struct LongitudinalState {
  double v = 0.0;           // m/s
  double range = 0.0;       // m, leader distance
  double range_rate = 0.0;  // m/s
  bool has_leader = false;
};

// a = K_D(R) Rdot + K_P(R) (R - Th_d v), clipped to [a_min, a_max]. Gains
// come from the curve table when present (clamped to its band) and from the
// (kd0, kp0) fallback otherwise.
double car_following_accel(const DriverParams& driver, const LongitudinalState& state);

// Proportional pull toward the free-flow speed, same clipping.
double free_flow_accel(const DriverParams& driver, double v, double gain = 0.3);

struct GapMeasurement {
  double range = 0.0;       // m, to the new leader
  double range_rate = 0.0;  // m/s
};

struct LaneChangePlan {
  double duration = 0.0;    // s, yaw-cap stretch already applied
  double lane_width = 3.5;  // m
  double start_time = 0.0;  // s, filled by the caller
};

struct LaneChangeDecision {
  bool accept = false;
  LaneChangePlan plan;
};

// Accept iff 1/range <= gap_accept_recip and, when closing, the TTC
// reciprocal is within ttc_accept_recip (boundaries accept). On accept the
// plan duration is the driver's sampled duration, stretched if needed so the
// peak implied yaw rate at speed `v` stays within the driver's cap.
LaneChangeDecision plan_lane_change(const DriverParams& driver, const GapMeasurement& gap,
                                    double v, double lane_width = 3.5);

// Smallest duration whose quintic path keeps the peak implied yaw rate at or
// below `yaw_cap_deg_s`; returns `duration` unchanged when it already does.
double yaw_capped_duration(double duration, double lane_width, double v, double yaw_cap_deg_s);

struct LateralSample {
  double offset = 0.0;            // m, 0 at t=0 up to lane_width at t=duration
  double yaw_rate_deg_s = 0.0;    // implied, ydot / v
};

// Quintic ease through the lane change: zero lateral velocity and
// acceleration at both ends. t must lie in [0, plan.duration].
LateralSample lateral_offset(const LaneChangePlan& plan, double t, double v);

}  // namespace etiquette::driver
