#pragma once

#include <span>
#include <string>
#include <vector>

#include "etiquette/estimation/samples.hpp"
#include "etiquette/events/extraction.hpp"
#include "etiquette/profiles/profile.hpp"

namespace etiquette::sim {

// One parameter of one profile field, source vs refit.
struct FieldComparison {
  std::string scenario;
  std::string field;
  std::string parameter;
  double source = 0.0;
  double refit = 0.0;
  double rel_error = 0.0;
  std::size_t sample_count = 0;
};

struct ConsistencyReport {
  profiles::EtiquetteProfile refit;
  std::vector<FieldComparison> comparisons;
  std::vector<std::string> warnings;  // skipped fields, insufficient data

  std::string text() const;
  // Largest relative error among compared parameters of one field; NaN if
  // the field was not compared.
  double max_rel_error(const std::string& scenario, const std::string& field) const;
};

struct CheckOptions {
  events::ExtractionOptions extraction;
  estimation::BehaviorSamplesOptions estimation;

  CheckOptions() {
    // The distribution fields are what the check compares; gain-curve and
    // free-flow fitting are opt-in (the profile carries neither).
    estimation.fit_gains = false;
    estimation.fit_free_flow = false;
  }
};

// Closes the loop: extracts events from the log, refits a profile, and
// reports per-parameter relative error against the source profile plus
// sample counts. Fields absent on either side are listed as warnings.
ConsistencyReport self_consistency_check(std::span<const events::Trip> log,
                                         const profiles::EtiquetteProfile& source,
                                         const CheckOptions& options = {});

}  // namespace etiquette::sim
