#pragma once

#include <optional>
#include <string>
#include <vector>

#include "etiquette/profiles/profile.hpp"

namespace etiquette::profiles {

// One statistic of the report table. `paper_empirical` is populated only for
// the built-in reference profile, from its published empirical percentile
// rows; those are data percentiles, not model quantiles, and the report
// labels them as such rather than asserting agreement.
struct ReportRow {
  std::string scenario;
  std::string field;
  std::string statistic;
  double value = 0.0;
  std::string units;
  std::optional<double> paper_empirical;
};

struct ProfileReport {
  std::string text;
  std::vector<ReportRow> rows;
  std::vector<std::string> footnotes;
};

// Pure function of the profile: model-implied means/modes, quantiles at
// 10/30/50/70/90% (25/50/75% for the headway lognormal), and inverted values
// for the reciprocal-parameterized fields.
ProfileReport profile_report(const EtiquetteProfile& profile);

// Machine-readable CSV of the report rows.
std::string report_table_csv(const ProfileReport& report);

}  // namespace etiquette::profiles
