#include "etiquette/estimation/kalman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "etiquette/errors.hpp"

namespace etiquette::estimation {

YawRateResult yaw_rate_kalman(std::span<const double> lat_offset,
                              std::span<const double> leader_speed, double dt,
                              const YawRateOptions& options) {
  if (lat_offset.size() < 5) {
    throw InsufficientDataError("yaw_rate_kalman: need at least 5 samples, got " +
                                std::to_string(lat_offset.size()));
  }
  if (lat_offset.size() != leader_speed.size()) {
    throw DomainError("yaw_rate_kalman: series lengths differ");
  }
  if (!(dt > 0.0)) throw DomainError("yaw_rate_kalman: dt must be positive");

  using Eigen::Matrix3d;
  using Eigen::RowVector3d;
  using Eigen::Vector3d;

  Matrix3d F;
  F << 1, dt, 0.5 * dt * dt,
       0, 1, dt,
       0, 0, 1;

  // Discrete covariance of integrated white jerk.
  const double q = options.jerk_psd;
  const double d2 = dt * dt, d3 = d2 * dt, d4 = d3 * dt, d5 = d4 * dt;
  Matrix3d Q;
  Q << q * d5 / 20.0, q * d4 / 8.0, q * d3 / 6.0,
       q * d4 / 8.0,  q * d3 / 3.0, q * d2 / 2.0,
       q * d3 / 6.0,  q * d2 / 2.0, q * dt;

  const RowVector3d H{1, 0, 0};
  const double R = options.meas_noise_var;
  const Matrix3d I = Matrix3d::Identity();

  Vector3d x{lat_offset[0], 0.0, 0.0};
  Matrix3d P = Vector3d{0.04, 1.0, 1.0}.asDiagonal();

  YawRateResult result;
  result.yaw_rate_deg_s.reserve(lat_offset.size());
  result.min_covariance_eigenvalue = std::numeric_limits<double>::infinity();
  constexpr double kDegPerRad = 180.0 / std::numbers::pi;

  for (std::size_t i = 0; i < lat_offset.size(); ++i) {
    if (i > 0) {
      x = F * x;
      P = F * P * F.transpose() + Q;
    }
    const double innovation = lat_offset[i] - H * x;
    const double s = (H * P * H.transpose())(0) + R;
    const Vector3d gain = P * H.transpose() / s;
    x += gain * innovation;
    // Joseph form keeps P symmetric positive-definite.
    const Matrix3d A = I - gain * H;
    P = A * P * A.transpose() + gain * R * gain.transpose();
    result.max_covariance_asymmetry =
        std::max(result.max_covariance_asymmetry, (P - P.transpose()).cwiseAbs().maxCoeff());
    P = 0.5 * (P + P.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Matrix3d> eigen(P);
    result.min_covariance_eigenvalue =
        std::min(result.min_covariance_eigenvalue, eigen.eigenvalues().minCoeff());

    const double v = leader_speed[i];
    if (v <= options.min_leader_speed) {
      throw LowSpeedError("yaw_rate_kalman: leader speed " + std::to_string(v) +
                          " m/s at sample " + std::to_string(i) +
                          " is too low for the small-angle conversion");
    }
    const double r = x(1) / v * kDegPerRad;
    result.yaw_rate_deg_s.push_back(r);
    result.max_abs_deg_s = std::max(result.max_abs_deg_s, std::abs(r));
  }
  return result;
}

YawRateResult yaw_rate_kalman(const events::LaneChangeEvent& event,
                              const YawRateOptions& options) {
  return yaw_rate_kalman(event.d_lat_series, event.leader_speed_series, event.dt, options);
}

YawRateResult fill_max_yaw_rate(events::LaneChangeEvent& event, const YawRateOptions& options) {
  YawRateResult result = yaw_rate_kalman(event, options);
  event.max_yaw_rate = result.max_abs_deg_s;
  return result;
}

}  // namespace etiquette::estimation
