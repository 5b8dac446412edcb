#include "etiquette/profiles/fit.hpp"

#include <functional>

#include "etiquette/errors.hpp"

namespace etiquette::profiles {

namespace {

struct FieldFitter {
  ProfileFitResult& result;
  const char* scenario_name;
  int fitted = 0;

  template <typename Setter>
  void fit(const char* field, const std::vector<double>& samples, Setter&& setter) {
    try {
      setter(samples);
      ++fitted;
    } catch (const std::runtime_error& e) {
      result.warnings.push_back(std::string(scenario_name) + "." + field + " left absent: " +
                                e.what());
    }
  }
};

int fit_scenario(ProfileFitResult& result, ScenarioProfile& out,
                 const estimation::ScenarioSamples& in, const char* name) {
  FieldFitter fitter{result, name};

  fitter.fit("accel_limit", in.driver_accel_limits,
             [&](const std::vector<double>& s) { out.accel_limit = dist::gev_fit(s).params; });
  fitter.fit("decel_limit", in.driver_decel_magnitudes,
             [&](const std::vector<double>& s) { out.decel_limit = dist::gev_fit(s).params; });
  fitter.fit("mean_headway", in.driver_mean_headways,
             [&](const std::vector<double>& s) { out.mean_headway = dist::lognormal_fit(s); });
  fitter.fit("extreme_headway", in.driver_extreme_headways,
             [&](const std::vector<double>& s) { out.extreme_headway = dist::gev_fit(s).params; });
  fitter.fit("brake_ttc", in.brake_ttcs,
             [&](const std::vector<double>& s) { out.brake_ttc = dist::gev_fit(s).params; });
  fitter.fit("max_yaw_rate", in.lc_max_yaw_rates,
             [&](const std::vector<double>& s) { out.max_yaw_rate = dist::gev_fit(s).params; });
  fitter.fit("init_range_recip", in.lc_init_range_recips, [&](const std::vector<double>& s) {
    out.init_range_recip = dist::gev_fit(s).params;
  });
  fitter.fit("init_ttc_recip", in.lc_init_ttc_recips,
             [&](const std::vector<double>& s) { out.init_ttc_recip = dist::laplace_fit(s); });
  fitter.fit("pos_init_ttc_recip", in.lc_init_ttc_recips, [&](const std::vector<double>& s) {
    std::vector<double> positive;
    for (double r : s) {
      if (r > 0.0) positive.push_back(r);
    }
    if (positive.size() < 20) {
      throw InsufficientDataError("only " + std::to_string(positive.size()) +
                                  " positive TTC reciprocals; need 20");
    }
    out.pos_init_ttc_recip = dist::exponential_fit(positive);
  });
  fitter.fit("lc_duration", in.lc_durations,
             [&](const std::vector<double>& s) { out.lc_duration = dist::gev_fit(s).params; });

  if (in.gain_curves) {
    GainCurveTable table;
    for (const auto& point : in.gain_curves->points) {
      if (point.status != estimation::GainPopulationPoint::Status::kOk) continue;
      table.range_m.push_back(point.range);
      table.kd_mean.push_back(point.kd_mean);
      table.kd_p25.push_back(point.kd_p25);
      table.kd_p75.push_back(point.kd_p75);
      table.kp_mean.push_back(point.kp_mean);
      table.kp_p25.push_back(point.kp_p25);
      table.kp_p75.push_back(point.kp_p75);
    }
    if (!table.empty()) {
      out.gain_curves = std::move(table);
      ++fitter.fitted;
    }
  }
  return fitter.fitted;
}

}  // namespace

ProfileFitResult fit_profile(const estimation::BehaviorSamples& samples, const std::string& name) {
  ProfileFitResult result;
  result.profile.name = name;
  int fitted = 0;
  fitted += fit_scenario(result, result.profile.highway, samples.highway, "highway");
  fitted += fit_scenario(result, result.profile.local, samples.local, "local");
  if (fitted == 0) {
    throw InsufficientDataError("fit_profile: no field had enough data; profile would be empty");
  }
  return result;
}

}  // namespace etiquette::profiles
