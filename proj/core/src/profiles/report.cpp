#include "etiquette/profiles/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

namespace etiquette::profiles {

namespace {

constexpr std::array<double, 5> kGevQuantiles = {0.10, 0.30, 0.50, 0.70, 0.90};
constexpr std::array<double, 3> kHeadwayQuantiles = {0.25, 0.50, 0.75};

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", value);
  return buf;
}

std::string percent_label(double p) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "q%02d", static_cast<int>(std::lround(p * 100)));
  return buf;
}

// Published empirical percentile rows of the reference profile, keyed by
// (scenario, field, statistic).
const std::map<std::tuple<std::string, std::string, std::string>, double>& paper_empirical_rows() {
  static const std::map<std::tuple<std::string, std::string, std::string>, double> rows = {
      {{"highway", "mean_headway", "q25"}, 1.21},
      {{"highway", "mean_headway", "q50"}, 1.39},
      {{"highway", "mean_headway", "q75"}, 1.60},
      {{"local", "mean_headway", "q25"}, 1.77},
      {{"local", "mean_headway", "q50"}, 2.03},
      {{"local", "mean_headway", "q75"}, 2.33},
      {{"highway", "init_range_recip", "q10"}, 1.0 / 82.3},
      {{"highway", "init_range_recip", "q50"}, 1.0 / 44.8},
      {{"highway", "init_range_recip", "q90"}, 1.0 / 17.0},
      {{"local", "init_range_recip", "q10"}, 1.0 / 66.5},
      {{"local", "init_range_recip", "q50"}, 1.0 / 36.8},
      {{"local", "init_range_recip", "q90"}, 1.0 / 21.8},
      {{"highway", "pos_init_ttc_recip", "q10"}, 1.0 / 219.7},
      {{"highway", "pos_init_ttc_recip", "q30"}, 1.0 / 68.0},
      {{"highway", "pos_init_ttc_recip", "q70"}, 1.0 / 22.5},
      {{"highway", "pos_init_ttc_recip", "q90"}, 1.0 / 12.1},
      {{"local", "pos_init_ttc_recip", "q10"}, 1.0 / 148.5},
      {{"local", "pos_init_ttc_recip", "q30"}, 1.0 / 45.0},
      {{"local", "pos_init_ttc_recip", "q70"}, 1.0 / 13.4},
      {{"local", "pos_init_ttc_recip", "q90"}, 1.0 / 6.95},
      {{"highway", "lc_duration", "q10"}, 2.2},
      {{"highway", "lc_duration", "q30"}, 3.6},
      {{"highway", "lc_duration", "q70"}, 8.1},
      {{"highway", "lc_duration", "q90"}, 13.1},
      {{"local", "lc_duration", "q10"}, 1.2},
      {{"local", "lc_duration", "q30"}, 1.8},
      {{"local", "lc_duration", "q70"}, 4.0},
      {{"local", "lc_duration", "q90"}, 7.8},
  };
  return rows;
}

class ReportBuilder {
 public:
  explicit ReportBuilder(bool with_empirical) : with_empirical_(with_empirical) {}

  void add(const std::string& scenario, const std::string& field, const std::string& statistic,
           double value, const std::string& units) {
    ReportRow row{scenario, field, statistic, value, units, std::nullopt};
    if (with_empirical_) {
      const auto it = paper_empirical_rows().find({scenario, field, statistic});
      if (it != paper_empirical_rows().end()) row.paper_empirical = it->second;
    }
    rows_.push_back(std::move(row));
  }

  void gev_field(const std::string& scenario, const std::string& field,
                 const dist::GevParams& params, const std::string& units,
                 bool reciprocal = false, const std::string& inverted_units = {}) {
    if (params.k < 1.0) add(scenario, field, "mean", dist::gev_mean(params), units);
    add(scenario, field, "mode", dist::gev_mode(params), units);
    if (params.k < 0.5) {
      add(scenario, field, "sd", std::sqrt(dist::gev_variance(params)), units);
    }
    for (double p : kGevQuantiles) {
      const double q = dist::gev_quantile(params, p);
      add(scenario, field, percent_label(p), q, units);
      if (reciprocal && q != 0.0) {
        add(scenario, field, percent_label(p) + "_inverted", 1.0 / q, inverted_units);
      }
    }
  }

  std::vector<ReportRow> take() { return std::move(rows_); }

 private:
  bool with_empirical_;
  std::vector<ReportRow> rows_;
};

void report_scenario(ReportBuilder& b, const std::string& name, const ScenarioProfile& s) {
  if (s.accel_limit) b.gev_field(name, "accel_limit", *s.accel_limit, "m/s^2");
  if (s.decel_limit) b.gev_field(name, "decel_limit", *s.decel_limit, "m/s^2");
  if (s.mean_headway) {
    b.add(name, "mean_headway", "arith_mean", s.mean_headway->arith_mean, "s");
    b.add(name, "mean_headway", "arith_var", s.mean_headway->arith_var, "s^2");
    for (double p : kHeadwayQuantiles) {
      b.add(name, "mean_headway", percent_label(p),
            dist::lognormal_quantile(*s.mean_headway, p), "s");
    }
  }
  if (s.extreme_headway) b.gev_field(name, "extreme_headway", *s.extreme_headway, "s");
  if (s.brake_ttc) b.gev_field(name, "brake_ttc", *s.brake_ttc, "s");
  if (s.max_yaw_rate) b.gev_field(name, "max_yaw_rate", *s.max_yaw_rate, "deg/s");
  if (s.init_range_recip) {
    b.gev_field(name, "init_range_recip", *s.init_range_recip, "1/m", true, "m");
  }
  if (s.init_ttc_recip) {
    b.add(name, "init_ttc_recip", "mean", s.init_ttc_recip->mu, "1/s");
    b.add(name, "init_ttc_recip", "sd", std::numbers::sqrt2 / s.init_ttc_recip->lambda, "1/s");
    for (double p : kGevQuantiles) {
      const double q = dist::laplace_quantile(*s.init_ttc_recip, p);
      b.add(name, "init_ttc_recip", percent_label(p), q, "1/s");
      if (q != 0.0) b.add(name, "init_ttc_recip", percent_label(p) + "_inverted", 1.0 / q, "s");
    }
  }
  if (s.pos_init_ttc_recip) {
    b.add(name, "pos_init_ttc_recip", "mean", s.pos_init_ttc_recip->mu, "1/s");
    for (double p : kGevQuantiles) {
      const double q = dist::exponential_quantile(*s.pos_init_ttc_recip, p);
      b.add(name, "pos_init_ttc_recip", percent_label(p), q, "1/s");
      if (q != 0.0) {
        b.add(name, "pos_init_ttc_recip", percent_label(p) + "_inverted", 1.0 / q, "s");
      }
    }
  }
  if (s.lc_duration) b.gev_field(name, "lc_duration", *s.lc_duration, "s");
}

}  // namespace

ProfileReport profile_report(const EtiquetteProfile& profile) {
  ProfileReport report;
  ReportBuilder builder(profile.name == "spmd-2018");
  report_scenario(builder, "highway", profile.highway);
  report_scenario(builder, "local", profile.local);
  report.rows = builder.take();

  std::ostringstream out;
  out << "etiquette profile: " << profile.name << "\n";
  std::string section;
  for (const ReportRow& row : report.rows) {
    const std::string key = row.scenario + "." + row.field;
    if (key != section) {
      section = key;
      out << "\n" << key << "\n";
    }
    out << "  " << row.statistic << " = " << fmt(row.value) << " " << row.units;
    if (row.paper_empirical) {
      out << "   [published empirical: " << fmt(*row.paper_empirical) << "]";
    }
    out << "\n";
  }

  if (profile.name == "spmd-2018") {
    report.footnotes.push_back(
        "Published empirical columns are percentiles of the source data, not of the "
        "fitted models; the two are reported side by side and not asserted equal.");
    report.footnotes.push_back(
        "The published initial-range-reciprocal percentile row prints three values under a "
        "single 10% label; they are interpreted as the 10/50/90% points by analogy with the "
        "other percentile rows.");
  }
  if (!report.footnotes.empty()) {
    out << "\nnotes:\n";
    for (const auto& note : report.footnotes) out << "  - " << note << "\n";
  }
  report.text = out.str();
  return report;
}

std::string report_table_csv(const ProfileReport& report) {
  std::ostringstream out;
  out << "scenario,field,statistic,value,units,paper_empirical\n";
  char buf[64];
  for (const ReportRow& row : report.rows) {
    std::snprintf(buf, sizeof(buf), "%.12g", row.value);
    out << row.scenario << ',' << row.field << ',' << row.statistic << ',' << buf << ','
        << row.units << ',';
    if (row.paper_empirical) {
      std::snprintf(buf, sizeof(buf), "%.12g", *row.paper_empirical);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace etiquette::profiles
