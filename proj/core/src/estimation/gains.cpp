#include "etiquette/estimation/gains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "etiquette/dist/empirical.hpp"
#include "etiquette/errors.hpp"

namespace etiquette::estimation {

namespace {

constexpr int kRegressors = 8;

double median_of(std::vector<double> values) {
  const std::size_t n = values.size();
  std::nth_element(values.begin(), values.begin() + n / 2, values.end());
  double upper = values[n / 2];
  if (n % 2 == 1) return upper;
  std::nth_element(values.begin(), values.begin() + n / 2 - 1, values.end());
  return 0.5 * (values[n / 2 - 1] + upper);
}

// Design matrix columns: {R^j Rdot} then {R^j (R - Th_d v)}, j = 0..3.
Eigen::MatrixXd build_design(std::span<const GainSample> samples, double desired_headway) {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(samples.size()), kRegressors);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const GainSample& s = samples[static_cast<std::size_t>(i)];
    const double spacing_error = s.range - desired_headway * s.speed;
    double r_pow = 1.0;
    for (int j = 0; j < 4; ++j) {
      X(i, j) = r_pow * s.range_rate;
      X(i, 4 + j) = r_pow * spacing_error;
      r_pow *= s.range;
    }
  }
  return X;
}

struct IrlsOutput {
  Eigen::VectorXd coefficients;
  std::vector<double> objective_trace;
  int iterations = 0;
};

double bisquare_loss(const Eigen::VectorXd& residuals, double cutoff) {
  // rho(r) = (c^2/6) (1 - (1 - (r/c)^2)^3) inside the cutoff, c^2/6 beyond.
  const double c2_over_6 = cutoff * cutoff / 6.0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < residuals.size(); ++i) {
    const double u = residuals(i) / cutoff;
    if (std::abs(u) >= 1.0) {
      total += c2_over_6;
    } else {
      const double w = 1.0 - u * u;
      total += c2_over_6 * (1.0 - w * w * w);
    }
  }
  return total;
}

IrlsOutput irls_bisquare(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const GainFitOptions& options) {
  const Eigen::Index n = X.rows();

  // Column scaling for conditioning (R^3 spans ~6 orders of magnitude).
  Eigen::VectorXd scale(kRegressors);
  for (int j = 0; j < kRegressors; ++j) {
    const double rms = std::sqrt(X.col(j).squaredNorm() / static_cast<double>(n));
    scale(j) = rms > 0.0 ? rms : 1.0;
  }
  const Eigen::MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xs);
  if (qr.rank() < kRegressors) {
    throw DegenerateDataError("fit_gain_polynomials: rank-deficient regressor matrix");
  }

  IrlsOutput out;
  Eigen::VectorXd beta = qr.solve(y);
  Eigen::VectorXd residuals = y - Xs * beta;

  // Freeze the robust scale from the initial residuals.
  std::vector<double> abs_dev(static_cast<std::size_t>(n));
  const double res_median = median_of({residuals.data(), residuals.data() + n});
  for (Eigen::Index i = 0; i < n; ++i) {
    abs_dev[static_cast<std::size_t>(i)] = std::abs(residuals(i) - res_median);
  }
  const double mad_scale = 1.4826 * median_of(std::move(abs_dev));
  if (!(mad_scale > 0.0)) {
    // Exact fit; nothing for the reweighting to do.
    out.coefficients = scale.cwiseInverse().asDiagonal() * beta;
    out.objective_trace.push_back(0.0);
    return out;
  }
  const double cutoff = options.bisquare_tuning * mad_scale;
  out.objective_trace.push_back(bisquare_loss(residuals, cutoff));

  Eigen::VectorXd weights(n);
  Eigen::MatrixXd Xw(n, kRegressors);
  Eigen::VectorXd yw(n);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double u = residuals(i) / cutoff;
      const double w = std::abs(u) < 1.0 ? (1.0 - u * u) * (1.0 - u * u) : 0.0;
      weights(i) = std::sqrt(w);
    }
    Xw = weights.asDiagonal() * Xs;
    yw = weights.asDiagonal() * y;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> wqr(Xw);
    if (wqr.rank() < kRegressors) {
      // Reweighting downweighted too much of the data; keep the incumbent.
      break;
    }
    const Eigen::VectorXd next = wqr.solve(yw);
    const double change = (next - beta).cwiseAbs().maxCoeff();
    beta = next;
    residuals = y - Xs * beta;
    out.objective_trace.push_back(bisquare_loss(residuals, cutoff));
    out.iterations = iter + 1;
    if (change < options.coefficient_tol) break;
  }

  out.coefficients = scale.cwiseInverse().asDiagonal() * beta;
  return out;
}

GainFitResult fit_with_headway(const std::string& driver_id, events::RoadClass road_class,
                               std::span<const GainSample> samples, double desired_headway,
                               const GainFitOptions& options) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(samples.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = samples[static_cast<std::size_t>(i)].accel;

  const Eigen::MatrixXd X = build_design(samples, desired_headway);
  IrlsOutput irls = irls_bisquare(X, y, options);

  GainFitResult result;
  result.polynomials.driver_id = driver_id;
  result.polynomials.road_class = road_class;
  result.polynomials.desired_headway = desired_headway;
  for (int j = 0; j < 4; ++j) {
    result.polynomials.kd[static_cast<std::size_t>(j)] = irls.coefficients(j);
    result.polynomials.kp[static_cast<std::size_t>(j)] = irls.coefficients(4 + j);
  }
  std::vector<double> ranges;
  ranges.reserve(samples.size());
  for (const GainSample& s : samples) ranges.push_back(s.range);
  result.polynomials.fit_range = {dist::empirical_percentile(ranges, 0.025),
                                  dist::empirical_percentile(ranges, 0.975)};
  result.objective_trace = std::move(irls.objective_trace);
  result.iterations = irls.iterations;
  return result;
}

}  // namespace

double GainPolynomials::kd_at(double range) const {
  return ((kd[3] * range + kd[2]) * range + kd[1]) * range + kd[0];
}

double GainPolynomials::kp_at(double range) const {
  return ((kp[3] * range + kp[2]) * range + kp[1]) * range + kp[0];
}

GainFitResult fit_gain_polynomials(const std::string& driver_id, events::RoadClass road_class,
                                   std::span<const GainSample> samples,
                                   const GainFitOptions& options) {
  if (samples.size() < options.min_samples) {
    throw InsufficientDataError("fit_gain_polynomials: " + std::to_string(samples.size()) +
                                " samples; need " + std::to_string(options.min_samples));
  }
  double r_min = std::numeric_limits<double>::infinity();
  double r_max = -std::numeric_limits<double>::infinity();
  double headway_sum = 0.0;
  for (const GainSample& s : samples) {
    r_min = std::min(r_min, s.range);
    r_max = std::max(r_max, s.range);
    headway_sum += s.range / s.speed;
  }
  if (r_max - r_min < options.min_range_span) {
    throw DegenerateDataError("fit_gain_polynomials: observed range span " +
                              std::to_string(r_max - r_min) + " m is below " +
                              std::to_string(options.min_range_span) + " m");
  }

  const double mean_headway = headway_sum / static_cast<double>(samples.size());
  if (options.headway_mode == GainFitOptions::HeadwayMode::kTwoStage) {
    return fit_with_headway(driver_id, road_class, samples, mean_headway, options);
  }

  // Co-fit: golden-section search of Th_d against the final robust loss.
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.25 * mean_headway, hi = 3.0 * mean_headway;
  auto loss_at = [&](double th) {
    return fit_with_headway(driver_id, road_class, samples, th, options)
        .objective_trace.back();
  };
  double m1 = hi - golden * (hi - lo), m2 = lo + golden * (hi - lo);
  double f1 = loss_at(m1), f2 = loss_at(m2);
  for (int iter = 0; iter < 40 && hi - lo > 1e-4; ++iter) {
    if (f1 <= f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - golden * (hi - lo);
      f1 = loss_at(m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + golden * (hi - lo);
      f2 = loss_at(m2);
    }
  }
  return fit_with_headway(driver_id, road_class, samples, 0.5 * (lo + hi), options);
}

GainFitResult fit_gain_polynomials(std::span<const events::CarFollowingEpisode> episodes,
                                   const GainFitOptions& options) {
  if (episodes.empty()) throw InsufficientDataError("fit_gain_polynomials: no episodes");
  std::vector<GainSample> samples;
  for (const auto& ep : episodes) {
    for (std::size_t i = 0; i < ep.size(); ++i) {
      const events::TrajectorySample s = ep.sample(i);
      samples.push_back(GainSample{s.range, s.range_rate, s.v, s.a});
    }
  }
  return fit_gain_polynomials(episodes.front().driver_id, episodes.front().road_class, samples,
                              options);
}

std::vector<double> default_gain_grid() {
  std::vector<double> grid;
  for (double r = 5.0; r <= 90.0; r += 5.0) grid.push_back(r);
  return grid;
}

GainPopulationCurves gain_population_stats(std::span<const GainPolynomials> drivers,
                                           std::span<const double> range_grid) {
  if (drivers.size() < 20) {
    throw InsufficientDataError("gain_population_stats: need at least 20 drivers, got " +
                                std::to_string(drivers.size()));
  }
  GainPopulationCurves curves;
  for (double range : range_grid) {
    GainPopulationPoint point;
    point.range = range;
    std::vector<double> kd_values, kp_values;
    for (const GainPolynomials& d : drivers) {
      if (!d.covers(range)) continue;
      kd_values.push_back(d.kd_at(range));
      kp_values.push_back(d.kp_at(range));
    }
    point.contributing_drivers = kd_values.size();
    if (kd_values.size() < 20) {
      point.status = GainPopulationPoint::Status::kTooFewDrivers;
      curves.warnings.push_back("range " + std::to_string(range) + " m: only " +
                                std::to_string(kd_values.size()) +
                                " drivers cover it; point omitted");
      curves.points.push_back(point);
      continue;
    }
    try {
      point.kd_dist = dist::gev_fit(kd_values).params;
      point.kp_dist = dist::gev_fit(kp_values).params;
    } catch (const DegenerateDataError&) {
      point.status = GainPopulationPoint::Status::kDegenerate;
      curves.warnings.push_back("range " + std::to_string(range) +
                                " m: zero spread across drivers");
      curves.points.push_back(point);
      continue;
    }
    point.kd_mean = dist::gev_mean(point.kd_dist);
    point.kp_mean = dist::gev_mean(point.kp_dist);
    point.kd_p25 = dist::empirical_percentile(kd_values, 0.25);
    point.kd_p75 = dist::empirical_percentile(kd_values, 0.75);
    point.kp_p25 = dist::empirical_percentile(kp_values, 0.25);
    point.kp_p75 = dist::empirical_percentile(kp_values, 0.75);
    curves.points.push_back(point);
  }
  return curves;
}

}  // namespace etiquette::estimation
