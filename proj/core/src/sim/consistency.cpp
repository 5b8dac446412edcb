#include "etiquette/sim/consistency.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "etiquette/errors.hpp"
#include "etiquette/profiles/fit.hpp"

namespace etiquette::sim {

namespace {

double rel_error(double source, double refit) {
  const double denom = std::max(std::abs(source), 1e-12);
  return std::abs(refit - source) / denom;
}

class Comparer {
 public:
  Comparer(ConsistencyReport& report, const std::string& scenario) : report_(report),
        scenario_(scenario) {}

  template <typename T, typename F>
  void field(const char* name, const std::optional<T>& source, const std::optional<T>& refit,
             std::size_t count, F&& emit) {
    if (!source) {
      report_.warnings.push_back(scenario_ + "." + name + ": absent in source profile; skipped");
      return;
    }
    if (!refit) {
      report_.warnings.push_back(scenario_ + "." + name +
                                 ": not refittable from the log (insufficient data)");
      return;
    }
    emit(*source, *refit, count);
  }

  void parameter(const char* field, const char* param, double source, double refit,
                 std::size_t count) {
    report_.comparisons.push_back(
        FieldComparison{scenario_, field, param, source, refit, rel_error(source, refit), count});
  }

 private:
  ConsistencyReport& report_;
  std::string scenario_;
};

void compare_scenario(ConsistencyReport& report, const std::string& name,
                      const profiles::ScenarioProfile& source,
                      const profiles::ScenarioProfile& refit,
                      const estimation::ScenarioSamples& samples) {
  Comparer c(report, name);

  auto gev = [&](const char* field, const std::optional<dist::GevParams>& s,
                 const std::optional<dist::GevParams>& r, std::size_t count) {
    c.field(field, s, r, count, [&](const dist::GevParams& a, const dist::GevParams& b,
                                    std::size_t n) {
      c.parameter(field, "k", a.k, b.k, n);
      c.parameter(field, "sigma", a.sigma, b.sigma, n);
      c.parameter(field, "mu", a.mu, b.mu, n);
    });
  };

  gev("accel_limit", source.accel_limit, refit.accel_limit, samples.driver_accel_limits.size());
  gev("decel_limit", source.decel_limit, refit.decel_limit,
      samples.driver_decel_magnitudes.size());
  c.field("mean_headway", source.mean_headway, refit.mean_headway,
          samples.driver_mean_headways.size(),
          [&](const dist::LognormalParams& a, const dist::LognormalParams& b, std::size_t n) {
            c.parameter("mean_headway", "arith_mean", a.arith_mean, b.arith_mean, n);
            c.parameter("mean_headway", "arith_var", a.arith_var, b.arith_var, n);
          });
  gev("extreme_headway", source.extreme_headway, refit.extreme_headway,
      samples.driver_extreme_headways.size());
  gev("brake_ttc", source.brake_ttc, refit.brake_ttc, samples.brake_ttcs.size());
  gev("max_yaw_rate", source.max_yaw_rate, refit.max_yaw_rate, samples.lc_max_yaw_rates.size());
  gev("init_range_recip", source.init_range_recip, refit.init_range_recip,
      samples.lc_init_range_recips.size());
  c.field("init_ttc_recip", source.init_ttc_recip, refit.init_ttc_recip,
          samples.lc_init_ttc_recips.size(),
          [&](const dist::LaplaceParams& a, const dist::LaplaceParams& b, std::size_t n) {
            c.parameter("init_ttc_recip", "lambda", a.lambda, b.lambda, n);
            c.parameter("init_ttc_recip", "mu", a.mu, b.mu, n);
          });
  c.field("pos_init_ttc_recip", source.pos_init_ttc_recip, refit.pos_init_ttc_recip,
          samples.lc_init_ttc_recips.size(),
          [&](const dist::ExponentialParams& a, const dist::ExponentialParams& b, std::size_t n) {
            c.parameter("pos_init_ttc_recip", "mu", a.mu, b.mu, n);
          });
  gev("lc_duration", source.lc_duration, refit.lc_duration, samples.lc_durations.size());
}

}  // namespace

std::string ConsistencyReport::text() const {
  std::ostringstream out;
  out << "self-consistency check: refit vs source\n";
  out << "scenario      field                parameter   source      refit      rel_error  n\n";
  char buf[160];
  for (const FieldComparison& row : comparisons) {
    std::snprintf(buf, sizeof(buf), "%-13s %-20s %-11s %-11.5g %-10.5g %-10.3g %zu\n",
                  row.scenario.c_str(), row.field.c_str(), row.parameter.c_str(), row.source,
                  row.refit, row.rel_error, row.sample_count);
    out << buf;
  }
  if (!warnings.empty()) {
    out << "warnings:\n";
    for (const auto& w : warnings) out << "  - " << w << "\n";
  }
  return out.str();
}

double ConsistencyReport::max_rel_error(const std::string& scenario,
                                        const std::string& field) const {
  double worst = std::numeric_limits<double>::quiet_NaN();
  for (const FieldComparison& row : comparisons) {
    if (row.scenario != scenario || row.field != field) continue;
    if (std::isnan(worst) || row.rel_error > worst) worst = row.rel_error;
  }
  return worst;
}

ConsistencyReport self_consistency_check(std::span<const events::Trip> log,
                                         const profiles::EtiquetteProfile& source,
                                         const CheckOptions& options) {
  const events::ExtractionBundle bundle = events::extract_all(log, options.extraction);
  const estimation::BehaviorSamples samples = estimation::behavior_samples(bundle,
                                                                           options.estimation);
  ConsistencyReport report;
  try {
    auto fitted = profiles::fit_profile(samples, source.name + "-refit");
    report.refit = std::move(fitted.profile);
    report.warnings = std::move(fitted.warnings);
  } catch (const InsufficientDataError& e) {
    // Nothing fittable at all: every source field shows up below as a
    // not-refittable entry instead of aborting the check.
    report.refit.name = source.name + "-refit";
    report.warnings.push_back(e.what());
  }
  for (const auto& w : samples.warnings) report.warnings.push_back(w);

  compare_scenario(report, "highway", source.highway, report.refit.highway, samples.highway);
  compare_scenario(report, "local", source.local, report.refit.local, samples.local);
  return report;
}

}  // namespace etiquette::sim
