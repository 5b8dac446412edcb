#pragma once

#include <optional>
#include <span>
#include <string>

#include "etiquette/dist/gmm.hpp"

namespace etiquette::estimation {

// Per-link speed model: 3-component mixture with the free-flow phase taken
// from the highest-mean component. hcm_base is posted limit + 2.2 m/s when a
// limit is known.
struct FreeFlowLinkModel {
  std::string link_id;
  std::optional<double> posted_limit;  // m/s
  dist::GmmParams gmm;
  double free_flow_mean = 0.0;  // m/s
  double free_flow_sd = 0.0;    // m/s
  std::optional<double> hcm_base;
};

inline constexpr double kHcmFreeFlowOffset = 2.2;  // m/s above the posted limit

FreeFlowLinkModel free_flow_link_model(const std::string& link_id,
                                       std::span<const double> speeds,
                                       std::optional<double> posted_limit,
                                       std::size_t min_samples = 30,
                                       const dist::GmmFitOptions& options = {});

}  // namespace etiquette::estimation
