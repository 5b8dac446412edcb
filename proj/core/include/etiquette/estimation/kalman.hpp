#pragma once

#include <span>
#include <vector>

#include "etiquette/events/types.hpp"

namespace etiquette::estimation {

// Constant-acceleration kinematic filter over the lateral-offset series:
// state [y, y_dot, y_ddot], white-jerk process noise of spectral density
// `jerk_psd`, position measurement with variance `meas_noise_var` (0.2 m sd
// default, per the forward camera's error bounds). Initial state is
// [y_0, 0, 0] (zero initial yaw rate), initial covariance diag(0.04, 1, 1).
// Yaw rate uses the small-angle conversion r = y_dot / v_leader.
struct YawRateOptions {
  double meas_noise_var = 0.04;  // m^2
  double jerk_psd = 1.0;         // m^2/s^5
  double min_leader_speed = 1.0; // m/s; below this the small-angle form is invalid
};

struct YawRateResult {
  std::vector<double> yaw_rate_deg_s;   // per-sample estimate
  double max_abs_deg_s = 0.0;           // r_max
  // Covariance health across all steps: the smallest eigenvalue seen and the
  // largest symmetry defect max|P - P^T|.
  double min_covariance_eigenvalue = 0.0;
  double max_covariance_asymmetry = 0.0;
};

// `lat_offset` and `leader_speed` are parallel series at uniform step `dt`;
// at least 5 samples are required.
YawRateResult yaw_rate_kalman(std::span<const double> lat_offset,
                              std::span<const double> leader_speed, double dt,
                              const YawRateOptions& options = {});

YawRateResult yaw_rate_kalman(const events::LaneChangeEvent& event,
                              const YawRateOptions& options = {});

// Runs the filter and stores r_max on the event; returns the full result.
YawRateResult fill_max_yaw_rate(events::LaneChangeEvent& event,
                                const YawRateOptions& options = {});

}  // namespace etiquette::estimation
