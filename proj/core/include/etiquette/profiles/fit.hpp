#pragma once

#include <string>
#include <vector>

#include "etiquette/estimation/samples.hpp"
#include "etiquette/profiles/profile.hpp"

namespace etiquette::profiles {

struct ProfileFitResult {
  EtiquetteProfile profile;
  std::vector<std::string> warnings;  // one entry per field left absent
};

// Fits every profile field from the corresponding population statistic: GEV
// over per-driver extremes, lognormal over per-driver mean headways, GEV over
// pooled brake TTCs and per-event lane-change statistics, Laplace/exponential
// over the TTC reciprocals. Fields whose delegate floor is not met are left
// absent with a warning; if nothing is fittable at all the call fails.
ProfileFitResult fit_profile(const estimation::BehaviorSamples& samples,
                             const std::string& name = "fitted");

}  // namespace etiquette::profiles
