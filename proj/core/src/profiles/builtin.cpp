#include "etiquette/profiles/builtin.hpp"

#include "etiquette/errors.hpp"

namespace etiquette::profiles {

namespace {

EtiquetteProfile make_spmd_2018() {
  EtiquetteProfile p;
  p.name = "spmd-2018";

  ScenarioProfile& hw = p.highway;
  hw.accel_limit = dist::GevParams{0.3711, 0.1628, 0.5314};
  hw.decel_limit = dist::GevParams{0.1669, 0.4722, 2.4461};
  hw.mean_headway = dist::lognormal_from_arith_moments(1.42, 0.08);
  hw.extreme_headway = dist::GevParams{0.0415, 0.1058, 0.3720};
  hw.brake_ttc = dist::GevParams{0.4006, 7.1869, 13.1760};
  hw.max_yaw_rate = dist::GevParams{-0.0083, 0.2325, 0.5900};
  hw.init_range_recip = dist::GevParams{0.8429, 0.0049, 0.0132};
  hw.init_ttc_recip = dist::LaplaceParams{16.5370, -0.0120};
  hw.pos_init_ttc_recip = dist::ExponentialParams{0.0376};
  hw.lc_duration = dist::GevParams{0.2675, 2.6435, 4.3243};

  ScenarioProfile& lc = p.local;
  lc.accel_limit = dist::GevParams{0.1426, 0.1930, 1.0457};
  lc.decel_limit = dist::GevParams{0.1649, 0.3289, 2.3865};
  lc.mean_headway = dist::lognormal_from_arith_moments(2.07, 0.18);
  lc.extreme_headway = dist::GevParams{-0.0737, 0.2267, 0.6880};
  lc.brake_ttc = dist::GevParams{0.3989, 7.6780, 13.2650};
  lc.max_yaw_rate = dist::GevParams{0.1525, 0.7381, 1.3953};
  lc.init_range_recip = dist::GevParams{0.4495, 0.0069, 0.0166};
  lc.init_ttc_recip = dist::LaplaceParams{14.0112, -0.0185};
  lc.pos_init_ttc_recip = dist::ExponentialParams{0.0619};
  lc.lc_duration = dist::GevParams{0.6585, 1.1138, 2.0052};

  // No tabulated gain curves ship with this profile; the field is populated
  // only by fitting.
  return p;
}

}  // namespace

EtiquetteProfile builtin_profile(const std::string& name) {
  if (name == "spmd-2018") return make_spmd_2018();
  std::string available;
  for (const auto& n : builtin_profile_names()) {
    if (!available.empty()) available += ", ";
    available += n;
  }
  throw DomainError("unknown profile '" + name + "'; available: " + available);
}

std::vector<std::string> builtin_profile_names() { return {"spmd-2018"}; }

}  // namespace etiquette::profiles
