#include "etiquette/profiles/profile.hpp"

#include <algorithm>

namespace etiquette::profiles {

namespace {

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (xs.empty()) return 0.0;
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

bool same(const std::optional<dist::GevParams>& a, const std::optional<dist::GevParams>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->k == b->k && a->sigma == b->sigma && a->mu == b->mu;
}

}  // namespace

double GainCurveTable::kd_mean_at(double range) const { return interpolate(range_m, kd_mean, range); }
double GainCurveTable::kp_mean_at(double range) const { return interpolate(range_m, kp_mean, range); }

bool operator==(const GainCurveTable& a, const GainCurveTable& b) {
  return a.range_m == b.range_m && a.kd_mean == b.kd_mean && a.kd_p25 == b.kd_p25 &&
         a.kd_p75 == b.kd_p75 && a.kp_mean == b.kp_mean && a.kp_p25 == b.kp_p25 &&
         a.kp_p75 == b.kp_p75;
}

bool operator==(const ScenarioProfile& a, const ScenarioProfile& b) {
  const auto same_lognormal = [](const auto& x, const auto& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return x->arith_mean == y->arith_mean && x->arith_var == y->arith_var &&
           x->log_mu == y->log_mu && x->log_sigma == y->log_sigma;
  };
  const auto same_laplace = [](const auto& x, const auto& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return x->lambda == y->lambda && x->mu == y->mu;
  };
  const auto same_exponential = [](const auto& x, const auto& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return x->mu == y->mu;
  };
  return same(a.accel_limit, b.accel_limit) && same(a.decel_limit, b.decel_limit) &&
         same_lognormal(a.mean_headway, b.mean_headway) &&
         same(a.extreme_headway, b.extreme_headway) && same(a.brake_ttc, b.brake_ttc) &&
         same(a.max_yaw_rate, b.max_yaw_rate) && same(a.init_range_recip, b.init_range_recip) &&
         same_laplace(a.init_ttc_recip, b.init_ttc_recip) &&
         same_exponential(a.pos_init_ttc_recip, b.pos_init_ttc_recip) &&
         same(a.lc_duration, b.lc_duration) && a.gain_curves == b.gain_curves;
}

bool operator==(const EtiquetteProfile& a, const EtiquetteProfile& b) {
  return a.name == b.name && a.highway == b.highway && a.local == b.local;
}

}  // namespace etiquette::profiles
