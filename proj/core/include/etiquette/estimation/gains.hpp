#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "etiquette/dist/gev.hpp"
#include "etiquette/events/types.hpp"

namespace etiquette::estimation {

// One car-following observation for the gain regression.
struct GainSample {
  double range;       // R_L, m
  double range_rate;  // Rdot_L, m/s
  double speed;       // host v, m/s
  double accel;       // host a, m/s^2
};

// Cubic-in-range feedback gains of the longitudinal control law
//   a = K_D(R) * Rdot + K_P(R) * (R - Th_d * v).
struct GainPolynomials {
  std::string driver_id;
  events::RoadClass road_class = events::RoadClass::kHighway;
  std::array<double, 4> kd{};  // K_D coefficients, constant term first
  std::array<double, 4> kp{};  // K_P coefficients
  double desired_headway = 0.0;             // Th_d, s
  std::array<double, 2> fit_range{0.0, 0.0};  // supporting-data range, m

  double kd_at(double range) const;
  double kp_at(double range) const;
  bool covers(double range) const {
    return range >= fit_range[0] && range <= fit_range[1];
  }
};

struct GainFitOptions {
  std::size_t min_samples = 5000;
  double min_range_span = 20.0;      // m
  double bisquare_tuning = 4.685;    // times the MAD residual scale
  double coefficient_tol = 1e-8;
  int max_iterations = 50;
  // Th_d handling: two-stage fixes it to the driver's mean headway before the
  // regression; co-fit searches Th_d by minimizing the robust loss.
  enum class HeadwayMode { kTwoStage, kCoFit } headway_mode = HeadwayMode::kTwoStage;
};

struct GainFitResult {
  GainPolynomials polynomials;
  std::vector<double> objective_trace;  // robust loss per IRLS iteration (fixed scale)
  int iterations = 0;
};

// Robust regression of accel onto {R^j * Rdot, R^j * (R - Th_d v)}, j = 0..3,
// by iteratively reweighted least squares with Tukey bisquare weights. The
// residual scale is frozen from the initial least-squares pass (1.4826 * MAD),
// which makes the iteration a descent on the robust loss. fit_range is the
// [2.5%, 97.5%] band of observed ranges.
GainFitResult fit_gain_polynomials(const std::string& driver_id, events::RoadClass road_class,
                                   std::span<const GainSample> samples,
                                   const GainFitOptions& options = {});

// Collects (R, Rdot, v, a) tuples from a driver's episodes and fits.
GainFitResult fit_gain_polynomials(std::span<const events::CarFollowingEpisode> episodes,
                                   const GainFitOptions& options = {});

// Cross-driver gain statistics on a range grid (default 5..90 m, step 5).
struct GainPopulationPoint {
  double range = 0.0;
  enum class Status { kOk, kTooFewDrivers, kDegenerate } status = Status::kOk;
  std::size_t contributing_drivers = 0;
  dist::GevParams kd_dist, kp_dist;  // valid when status == kOk
  double kd_mean = 0.0, kp_mean = 0.0;          // GEV model means
  double kd_p25 = 0.0, kd_p75 = 0.0;            // empirical quartiles
  double kp_p25 = 0.0, kp_p75 = 0.0;
};

struct GainPopulationCurves {
  std::vector<GainPopulationPoint> points;
  std::vector<std::string> warnings;
};

std::vector<double> default_gain_grid();  // 5, 10, ..., 90 m

// Requires at least 20 drivers overall; grid points with fewer than 20
// contributing drivers are reported with kTooFewDrivers and a warning, and
// identical-gain populations with kDegenerate.
GainPopulationCurves gain_population_stats(std::span<const GainPolynomials> drivers,
                                           std::span<const double> range_grid);

}  // namespace etiquette::estimation
