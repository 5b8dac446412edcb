#include "cli_app.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "etiquette/dist/gev.hpp"
#include "etiquette/dist/rng.hpp"
#include "etiquette/errors.hpp"
#include "etiquette/events/csv.hpp"
#include "etiquette/events/store.hpp"
#include "etiquette/profiles/builtin.hpp"
#include "etiquette/profiles/fit.hpp"
#include "etiquette/profiles/io.hpp"
#include "etiquette/profiles/report.hpp"
#include "etiquette/sim/consistency.hpp"
#include "etiquette/sim/corridor.hpp"

namespace etiquette::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kInternalError = 3;

std::uint64_t env_seed_fallback(std::uint64_t explicit_seed, bool seed_given) {
  if (seed_given) return explicit_seed;
  if (const char* env = std::getenv("ETIQUETTE_SEED")) {
    std::uint64_t value = 0;
    const std::string text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size()) return value;
    throw DomainError("ETIQUETTE_SEED is not an integer: '" + text + "'");
  }
  return explicit_seed;
}

profiles::EtiquetteProfile load_profile_or_builtin(const std::string& ref) {
  if (fs::exists(ref)) return profiles::load_profile_json(ref);
  return profiles::builtin_profile(ref);
}

sim::SimConfig sim_config_from_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("sim config: ") + e.what());
  }
  sim::SimConfig cfg;
  if (j.contains("road_class")) {
    cfg.road_class = events::road_class_from_string(j["road_class"].get<std::string>());
  }
  cfg.corridor_length = j.value("corridor_length_m", cfg.corridor_length);
  cfg.duration = j.value("duration_s", cfg.duration);
  cfg.dt = j.value("dt_s", cfg.dt);
  cfg.spawn_rate = j.value("spawn_rate_veh_s", cfg.spawn_rate);
  cfg.cut_in_rate = j.value("cut_in_rate_events_s", cfg.cut_in_rate);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.ring = j.value("ring", cfg.ring);
  cfg.record = j.value("record", cfg.record);
  cfg.lane_width = j.value("lane_width_m", cfg.lane_width);
  cfg.sensor_range = j.value("sensor_range_m", cfg.sensor_range);
  cfg.max_vehicles = j.value("max_vehicles", cfg.max_vehicles);
  if (j.contains("free_flow")) {
    cfg.free_flow = driver::FreeFlowTarget{j["free_flow"].value("mean", 25.5),
                                           j["free_flow"].value("sd", 1.5)};
  }
  return cfg;
}

int cmd_extract(const std::string& input, const std::string& output, std::ostream& out) {
  const auto trips = events::load_trajectory_csv(input);
  const auto bundle = events::extract_all(trips);
  events::save_events_json(fs::path(output), bundle);
  out << "trips: " << trips.size() << "\n"
      << "car-following episodes: " << bundle.episodes.size() << "\n"
      << "cut-in events: " << bundle.lane_changes.size() << "\n"
      << "free-flow links: " << bundle.free_flow_links.size() << "\n"
      << "wrote " << output << "\n";
  return kOk;
}

int cmd_fit(const std::string& input, const std::string& output, const std::string& name,
            std::ostream& out) {
  const auto store = events::load_events_json(fs::path(input));
  const auto samples = estimation::behavior_samples(store.bundle);
  auto fitted = profiles::fit_profile(samples, name);
  profiles::save_profile_json(fs::path(output), fitted.profile);
  for (const auto& w : samples.warnings) out << "warning: " << w << "\n";
  for (const auto& w : fitted.warnings) out << "warning: " << w << "\n";
  for (const auto& model : samples.free_flow_models) {
    out << "free-flow link " << model.link_id << ": mean " << model.free_flow_mean << " m/s";
    if (model.hcm_base) out << " (posted-limit base " << *model.hcm_base << " m/s)";
    out << "\n";
  }
  out << "wrote " << output << "\n";
  return kOk;
}

int cmd_report(const std::string& ref, const std::string& table, std::ostream& out) {
  const auto profile = load_profile_or_builtin(ref);
  const auto report = profiles::profile_report(profile);
  out << report.text;
  if (!table.empty()) {
    std::ofstream file(table);
    if (!file) throw ParseError("cannot open '" + table + "' for writing");
    file << profiles::report_table_csv(report);
    out << "wrote " << table << "\n";
  }
  return kOk;
}

int cmd_simulate(const std::string& profile_ref, const std::string& config_path,
                 const std::string& output, std::uint64_t seed, bool seed_given,
                 std::ostream& out) {
  const auto profile = load_profile_or_builtin(profile_ref);
  sim::SimConfig cfg = config_path.empty() ? sim::SimConfig{} : sim_config_from_json(config_path);
  cfg.seed = env_seed_fallback(seed_given ? seed : cfg.seed, seed_given);
  const auto result = sim::simulate(cfg, profile);
  events::write_trajectory_csv(fs::path(output), result.trips);
  out << "simulated " << result.trips.size() << " trips, " << result.stats.cut_ins
      << " cut-ins over " << cfg.duration << " s\n"
      << "wrote " << output << "\n";
  return kOk;
}

int cmd_check(const std::string& log_path, const std::string& profile_ref, std::ostream& out) {
  const auto trips = events::load_trajectory_csv(log_path);
  const auto profile = load_profile_or_builtin(profile_ref);
  const auto report = sim::self_consistency_check(trips, profile, {});
  out << report.text();
  return kOk;
}

int cmd_synth(const std::string& profile_ref, const std::string& out_dir, std::size_t count,
              std::uint64_t seed, bool seed_given, std::ostream& out) {
  const auto profile = load_profile_or_builtin(profile_ref);
  const std::uint64_t base_seed = env_seed_fallback(seed, seed_given);
  fs::create_directories(out_dir);

  json manifest;
  manifest["schema_version"] = 1;
  manifest["profile"] = profile.name;
  manifest["seed"] = base_seed;
  manifest["count"] = count;
  manifest["files"] = json::array();

  std::uint64_t stream = 0;
  auto write_samples = [&](const std::string& scenario, const char* field,
                           const std::vector<double>& values) {
    const std::string filename = scenario + "_" + field + ".csv";
    std::ofstream file(fs::path(out_dir) / filename);
    if (!file) throw ParseError("cannot open '" + filename + "' for writing");
    file << "value\n";
    char buf[32];
    for (double v : values) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      file.write(buf, ptr - buf);
      file.put('\n');
    }
    manifest["files"].push_back(filename);
  };

  for (const auto& [scenario_name, scenario] :
       {std::pair{"highway", &profile.highway}, std::pair{"local", &profile.local}}) {
    const auto next = [&] { return dist::derive_seed(base_seed, ++stream); };
    if (scenario->accel_limit) {
      write_samples(scenario_name, "accel_limit", dist::gev_sample(*scenario->accel_limit, count, next()));
    }
    if (scenario->decel_limit) {
      write_samples(scenario_name, "decel_limit", dist::gev_sample(*scenario->decel_limit, count, next()));
    }
    if (scenario->mean_headway) {
      write_samples(scenario_name, "mean_headway",
                    dist::lognormal_sample(*scenario->mean_headway, count, next()));
    }
    if (scenario->extreme_headway) {
      write_samples(scenario_name, "extreme_headway",
                    dist::gev_sample(*scenario->extreme_headway, count, next()));
    }
    if (scenario->brake_ttc) {
      write_samples(scenario_name, "brake_ttc", dist::gev_sample(*scenario->brake_ttc, count, next()));
    }
    if (scenario->max_yaw_rate) {
      write_samples(scenario_name, "max_yaw_rate",
                    dist::gev_sample(*scenario->max_yaw_rate, count, next()));
    }
    if (scenario->init_range_recip) {
      write_samples(scenario_name, "init_range_recip",
                    dist::gev_sample(*scenario->init_range_recip, count, next()));
    }
    if (scenario->init_ttc_recip) {
      write_samples(scenario_name, "init_ttc_recip",
                    dist::laplace_sample(*scenario->init_ttc_recip, count, next()));
    }
    if (scenario->pos_init_ttc_recip) {
      write_samples(scenario_name, "pos_init_ttc_recip",
                    dist::exponential_sample(*scenario->pos_init_ttc_recip, count, next()));
    }
    if (scenario->lc_duration) {
      write_samples(scenario_name, "lc_duration",
                    dist::gev_sample(*scenario->lc_duration, count, next()));
    }
  }

  std::ofstream manifest_file(fs::path(out_dir) / "manifest.json");
  manifest_file << manifest.dump(1, '\t') << '\n';
  out << "wrote " << manifest["files"].size() << " sample files to " << out_dir << "\n";
  return kOk;
}

struct FigureSpec {
  const char* field;
  const char* family;
};

const std::map<std::string, FigureSpec>& figure_specs() {
  static const std::map<std::string, FigureSpec> specs = {
      {"fig5", {"accel_limit", "gev"}},
      {"fig13", {"mean_headway", "lognormal"}},
      {"fig15", {"brake_ttc", "gev"}},
      {"fig23", {"init_range_recip", "gev"}},
      {"fig24", {"init_ttc_recip", "laplace"}},
      {"fig26", {"lc_duration", "gev"}},
  };
  return specs;
}

// Model density columns over a quantile-spanned grid.
int plot_profile_data(const profiles::EtiquetteProfile& profile, const FigureSpec& spec,
                      const std::string& output, std::ostream& out) {
  auto density = [&](const profiles::ScenarioProfile& s, double x) -> std::optional<double> {
    const std::string field = spec.field;
    if (field == "accel_limit" && s.accel_limit) return dist::gev_pdf(*s.accel_limit, x);
    if (field == "mean_headway" && s.mean_headway) return dist::lognormal_pdf(*s.mean_headway, x);
    if (field == "brake_ttc" && s.brake_ttc) return dist::gev_pdf(*s.brake_ttc, x);
    if (field == "init_range_recip" && s.init_range_recip) {
      return dist::gev_pdf(*s.init_range_recip, x);
    }
    if (field == "init_ttc_recip" && s.init_ttc_recip) return dist::laplace_pdf(*s.init_ttc_recip, x);
    if (field == "lc_duration" && s.lc_duration) return dist::gev_pdf(*s.lc_duration, x);
    return std::nullopt;
  };
  auto quantile = [&](const profiles::ScenarioProfile& s, double p) -> std::optional<double> {
    const std::string field = spec.field;
    if (field == "accel_limit" && s.accel_limit) return dist::gev_quantile(*s.accel_limit, p);
    if (field == "mean_headway" && s.mean_headway) return dist::lognormal_quantile(*s.mean_headway, p);
    if (field == "brake_ttc" && s.brake_ttc) return dist::gev_quantile(*s.brake_ttc, p);
    if (field == "init_range_recip" && s.init_range_recip) {
      return dist::gev_quantile(*s.init_range_recip, p);
    }
    if (field == "init_ttc_recip" && s.init_ttc_recip) {
      return dist::laplace_quantile(*s.init_ttc_recip, p);
    }
    if (field == "lc_duration" && s.lc_duration) return dist::gev_quantile(*s.lc_duration, p);
    return std::nullopt;
  };

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto* s : {&profile.highway, &profile.local}) {
    const auto a = quantile(*s, 0.001);
    const auto b = quantile(*s, 0.999);
    if (a) lo = std::min(lo, *a);
    if (b) hi = std::max(hi, *b);
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError(std::string("profile has no data for field ") + spec.field);
  }

  std::ofstream file(output);
  if (!file) throw ParseError("cannot open '" + output + "' for writing");
  file << "x,highway_pdf,local_pdf\n";
  constexpr int kPoints = 400;
  for (int i = 0; i <= kPoints; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / kPoints;
    file << x;
    for (const auto* s : {&profile.highway, &profile.local}) {
      file << ',';
      if (const auto d = density(*s, x)) file << *d;
    }
    file << '\n';
  }
  out << "wrote " << output << "\n";
  return kOk;
}

// Histogram density columns from extracted events, with a same-family fit.
int plot_events_data(const events::ExtractionBundle& bundle, const FigureSpec& spec,
                     const std::string& output, std::ostream& out) {
  const auto samples = estimation::behavior_samples(bundle);
  auto values_for = [&](events::RoadClass rc) -> const std::vector<double>& {
    const auto& s = samples.scenario(rc);
    const std::string field = spec.field;
    if (field == "accel_limit") return s.driver_accel_limits;
    if (field == "mean_headway") return s.driver_mean_headways;
    if (field == "brake_ttc") return s.brake_ttcs;
    if (field == "init_range_recip") return s.lc_init_range_recips;
    if (field == "init_ttc_recip") return s.lc_init_ttc_recips;
    return s.lc_durations;
  };

  const auto& highway = values_for(events::RoadClass::kHighway);
  const auto& local = values_for(events::RoadClass::kLocal);
  if (highway.empty() && local.empty()) {
    throw InsufficientDataError(std::string("no extracted samples for field ") + spec.field);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto* v : {&highway, &local}) {
    for (double x : *v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (lo == hi) hi = lo + 1.0;

  constexpr int kBins = 60;
  const double width = (hi - lo) / kBins;
  auto histogram = [&](const std::vector<double>& v) {
    std::vector<double> bins(kBins, 0.0);
    if (v.empty()) return bins;
    for (double x : v) {
      const auto b = std::min<std::size_t>(static_cast<std::size_t>((x - lo) / width), kBins - 1);
      bins[b] += 1.0;
    }
    for (double& b : bins) b /= static_cast<double>(v.size()) * width;  // density
    return bins;
  };
  const auto hw_bins = histogram(highway);
  const auto local_bins = histogram(local);

  std::ofstream file(output);
  if (!file) throw ParseError("cannot open '" + output + "' for writing");
  file << "bin_center,highway_density,local_density\n";
  for (int b = 0; b < kBins; ++b) {
    file << lo + width * (b + 0.5) << ',' << hw_bins[static_cast<std::size_t>(b)] << ','
         << local_bins[static_cast<std::size_t>(b)] << '\n';
  }
  out << "wrote " << output << "\n";
  return kOk;
}

int cmd_plot_data(const std::string& input, const std::string& figure, const std::string& output,
                  std::ostream& out) {
  const auto it = figure_specs().find(figure);
  if (it == figure_specs().end()) {
    std::string known;
    for (const auto& [name, spec] : figure_specs()) {
      if (!known.empty()) known += ", ";
      known += name;
    }
    throw DomainError("unknown figure '" + figure + "'; available: " + known);
  }

  if (fs::exists(input)) {
    // Peek at the JSON to tell a profile from an event store.
    std::ifstream probe(input);
    json j;
    try {
      j = json::parse(probe);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("plot-data input: ") + e.what());
    }
    if (j.contains("scenarios")) {
      return plot_profile_data(profiles::load_profile_json(fs::path(input)), it->second, output, out);
    }
    if (j.contains("episodes")) {
      const auto store = events::load_events_json(fs::path(input));
      return plot_events_data(store.bundle, it->second, output, out);
    }
    throw SchemaError("plot-data input '" + input + "' is neither a profile nor an event store");
  }
  return plot_profile_data(profiles::builtin_profile(input), it->second, output, out);
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"naturalistic driving behavior models and corridor microsimulation"};
  app.require_subcommand(1);

  std::string input, output, profile_ref, config_path, table, figure, name = "fitted";
  std::string log_path;
  std::uint64_t seed = 1;
  std::size_t count = 100000;

  auto* extract = app.add_subcommand("extract", "segment a trajectory CSV into events");
  extract->add_option("csv", input, "input trajectory CSV")->required();
  extract->add_option("--out", output, "output events JSON")->required();

  auto* fit = app.add_subcommand("fit", "fit an etiquette profile from extracted events");
  fit->add_option("events", input, "input events JSON")->required();
  fit->add_option("--out", output, "output profile JSON")->required();
  fit->add_option("--name", name, "profile name");

  auto* report = app.add_subcommand("report", "print a profile's summary statistics");
  report->add_option("profile", profile_ref, "profile JSON path or built-in name")->required();
  report->add_option("--table", table, "also write the rows as CSV");

  auto* simulate = app.add_subcommand("simulate", "run the corridor microsimulation");
  simulate->add_option("--profile", profile_ref, "profile JSON path or built-in name")->required();
  simulate->add_option("--config", config_path, "sim config JSON (defaults apply if omitted)");
  simulate->add_option("--out", output, "output trajectory CSV")->required();
  auto* sim_seed = simulate->add_option("--seed", seed, "seed override");

  auto* check = app.add_subcommand("check", "re-extract and refit a log against a profile");
  check->add_option("--log", log_path, "trajectory CSV to check")->required();
  check->add_option("--profile", profile_ref, "source profile")->required();

  auto* synth = app.add_subcommand("synth", "generate per-field sample fixtures from a profile");
  synth->add_option("--profile", profile_ref, "profile JSON path or built-in name")->required();
  synth->add_option("--out", output, "output directory")->required();
  synth->add_option("--count", count, "samples per field");
  auto* synth_seed = synth->add_option("--seed", seed, "sampling seed");

  auto* plot = app.add_subcommand("plot-data", "emit x,y columns for a figure");
  plot->add_option("input", input, "profile or events JSON (or built-in profile name)")->required();
  plot->add_option("--figure", figure, "fig5|fig13|fig15|fig23|fig24|fig26")->required();
  plot->add_option("--out", output, "output CSV")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends.
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (extract->parsed()) return cmd_extract(input, output, out);
    if (fit->parsed()) return cmd_fit(input, output, name, out);
    if (report->parsed()) return cmd_report(profile_ref, table, out);
    if (simulate->parsed()) {
      return cmd_simulate(profile_ref, config_path, output, seed, !sim_seed->empty(), out);
    }
    if (check->parsed()) return cmd_check(log_path, profile_ref, out);
    if (synth->parsed()) return cmd_synth(profile_ref, output, count, seed, !synth_seed->empty(), out);
    if (plot->parsed()) return cmd_plot_data(input, figure, output, out);
    err << "error: no subcommand\n";
    return kUsageError;
  } catch (const ParseError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const SchemaError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const DomainError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const InsufficientDataError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const DegenerateDataError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const LowSpeedError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const CollisionError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace etiquette::cli
