#include "etiquette/estimation/free_flow.hpp"

#include <cmath>
#include <string>

#include "etiquette/errors.hpp"

namespace etiquette::estimation {

FreeFlowLinkModel free_flow_link_model(const std::string& link_id,
                                       std::span<const double> speeds,
                                       std::optional<double> posted_limit,
                                       std::size_t min_samples,
                                       const dist::GmmFitOptions& options) {
  if (speeds.size() < min_samples) {
    throw InsufficientDataError("free_flow_link_model: link " + link_id + " has " +
                                std::to_string(speeds.size()) + " observations; need " +
                                std::to_string(min_samples));
  }
  FreeFlowLinkModel model;
  model.link_id = link_id;
  model.posted_limit = posted_limit;
  model.gmm = dist::gmm_fit_em(speeds, options).params;
  const std::size_t c = model.gmm.highest_mean_component();
  model.free_flow_mean = model.gmm.means[c];
  model.free_flow_sd = std::sqrt(model.gmm.variances[c]);
  if (posted_limit) model.hcm_base = *posted_limit + kHcmFreeFlowOffset;
  return model;
}

}  // namespace etiquette::estimation
