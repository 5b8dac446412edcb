#pragma once

#include <string>
#include <vector>

#include "etiquette/profiles/builtin.hpp"

namespace testsupport {

struct NamedGev {
  std::string name;
  etiquette::dist::GevParams params;
};

// Every GEV field of the reference profile, both scenarios: 14 rows.
inline std::vector<NamedGev> reference_gev_rows() {
  const auto profile = etiquette::profiles::builtin_profile("spmd-2018");
  std::vector<NamedGev> rows;
  for (const auto& [scenario, block] :
       {std::pair{"highway", &profile.highway}, std::pair{"local", &profile.local}}) {
    const auto add = [&](const char* field, const auto& opt) {
      rows.push_back({std::string(scenario) + "." + field, *opt});
    };
    add("accel_limit", block->accel_limit);
    add("decel_limit", block->decel_limit);
    add("extreme_headway", block->extreme_headway);
    add("brake_ttc", block->brake_ttc);
    add("max_yaw_rate", block->max_yaw_rate);
    add("init_range_recip", block->init_range_recip);
    add("lc_duration", block->lc_duration);
  }
  return rows;
}

}  // namespace testsupport
