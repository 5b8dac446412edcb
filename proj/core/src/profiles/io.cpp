#include "etiquette/profiles/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "etiquette/errors.hpp"

namespace etiquette::profiles {

namespace {

using nlohmann::json;

json gev_to_json(const dist::GevParams& p, const char* units) {
  return json{{"family", "gev"},
              {"params", {{"k", p.k}, {"sigma", p.sigma}, {"mu", p.mu}}},
              {"units", units}};
}

dist::GevParams gev_from_json(const json& j) {
  const json& p = j.at("params");
  return dist::GevParams{p.at("k").get<double>(), p.at("sigma").get<double>(),
                         p.at("mu").get<double>()};
}

void require_family(const json& j, const char* family, const std::string& field) {
  if (j.at("family").get<std::string>() != family) {
    throw SchemaError("profile field '" + field + "': expected family '" + family + "', got '" +
                      j.at("family").get<std::string>() + "'");
  }
}

json scenario_to_json(const ScenarioProfile& s) {
  json j = json::object();
  if (s.accel_limit) j["accel_limit"] = gev_to_json(*s.accel_limit, "m/s^2");
  if (s.decel_limit) j["decel_limit"] = gev_to_json(*s.decel_limit, "m/s^2");
  if (s.mean_headway) {
    j["mean_headway"] = json{{"family", "lognormal"},
                             {"params",
                              {{"arith_mean", s.mean_headway->arith_mean},
                               {"arith_var", s.mean_headway->arith_var},
                               {"log_mu", s.mean_headway->log_mu},
                               {"log_sigma", s.mean_headway->log_sigma}}},
                             {"units", "s"}};
  }
  if (s.extreme_headway) j["extreme_headway"] = gev_to_json(*s.extreme_headway, "s");
  if (s.brake_ttc) j["brake_ttc"] = gev_to_json(*s.brake_ttc, "s");
  if (s.max_yaw_rate) j["max_yaw_rate"] = gev_to_json(*s.max_yaw_rate, "deg/s");
  if (s.init_range_recip) j["init_range_recip"] = gev_to_json(*s.init_range_recip, "1/m");
  if (s.init_ttc_recip) {
    j["init_ttc_recip"] = json{{"family", "laplace"},
                               {"params",
                                {{"lambda", s.init_ttc_recip->lambda},
                                 {"mu", s.init_ttc_recip->mu}}},
                               {"units", "1/s"}};
  }
  if (s.pos_init_ttc_recip) {
    j["pos_init_ttc_recip"] = json{{"family", "exponential"},
                                   {"params", {{"mu", s.pos_init_ttc_recip->mu}}},
                                   {"units", "1/s"}};
  }
  if (s.lc_duration) j["lc_duration"] = gev_to_json(*s.lc_duration, "s");
  if (s.gain_curves) {
    const GainCurveTable& t = *s.gain_curves;
    j["gain_curves"] = json{{"range_m", t.range_m}, {"kd_mean", t.kd_mean},
                            {"kd_p25", t.kd_p25},   {"kd_p75", t.kd_p75},
                            {"kp_mean", t.kp_mean}, {"kp_p25", t.kp_p25},
                            {"kp_p75", t.kp_p75}};
  }
  return j;
}

ScenarioProfile scenario_from_json(const json& j, const std::string& label) {
  ScenarioProfile s;
  if (j.contains("accel_limit")) {
    require_family(j["accel_limit"], "gev", label + ".accel_limit");
    s.accel_limit = gev_from_json(j["accel_limit"]);
  }
  if (j.contains("decel_limit")) {
    require_family(j["decel_limit"], "gev", label + ".decel_limit");
    s.decel_limit = gev_from_json(j["decel_limit"]);
  }
  if (j.contains("mean_headway")) {
    require_family(j["mean_headway"], "lognormal", label + ".mean_headway");
    const json& p = j["mean_headway"].at("params");
    dist::LognormalParams stored{p.at("arith_mean").get<double>(), p.at("arith_var").get<double>(),
                                 p.at("log_mu").get<double>(), p.at("log_sigma").get<double>()};
    // Stored values are kept verbatim (lossless round-trip); the two
    // parameterizations only have to agree within tolerance.
    const auto rebuilt = dist::lognormal_from_arith_moments(stored.arith_mean, stored.arith_var);
    if (std::abs(rebuilt.log_mu - stored.log_mu) > 1e-9 ||
        std::abs(rebuilt.log_sigma - stored.log_sigma) > 1e-9) {
      throw SchemaError("profile field '" + label +
                        ".mean_headway': arithmetic and log-space parameters disagree");
    }
    s.mean_headway = stored;
  }
  if (j.contains("extreme_headway")) {
    require_family(j["extreme_headway"], "gev", label + ".extreme_headway");
    s.extreme_headway = gev_from_json(j["extreme_headway"]);
  }
  if (j.contains("brake_ttc")) {
    require_family(j["brake_ttc"], "gev", label + ".brake_ttc");
    s.brake_ttc = gev_from_json(j["brake_ttc"]);
  }
  if (j.contains("max_yaw_rate")) {
    require_family(j["max_yaw_rate"], "gev", label + ".max_yaw_rate");
    s.max_yaw_rate = gev_from_json(j["max_yaw_rate"]);
  }
  if (j.contains("init_range_recip")) {
    require_family(j["init_range_recip"], "gev", label + ".init_range_recip");
    s.init_range_recip = gev_from_json(j["init_range_recip"]);
  }
  if (j.contains("init_ttc_recip")) {
    require_family(j["init_ttc_recip"], "laplace", label + ".init_ttc_recip");
    const json& p = j["init_ttc_recip"].at("params");
    s.init_ttc_recip = dist::LaplaceParams{p.at("lambda").get<double>(), p.at("mu").get<double>()};
  }
  if (j.contains("pos_init_ttc_recip")) {
    require_family(j["pos_init_ttc_recip"], "exponential", label + ".pos_init_ttc_recip");
    s.pos_init_ttc_recip =
        dist::ExponentialParams{j["pos_init_ttc_recip"].at("params").at("mu").get<double>()};
  }
  if (j.contains("lc_duration")) {
    require_family(j["lc_duration"], "gev", label + ".lc_duration");
    s.lc_duration = gev_from_json(j["lc_duration"]);
  }
  if (j.contains("gain_curves")) {
    const json& t = j["gain_curves"];
    GainCurveTable table;
    table.range_m = t.at("range_m").get<std::vector<double>>();
    table.kd_mean = t.at("kd_mean").get<std::vector<double>>();
    table.kd_p25 = t.at("kd_p25").get<std::vector<double>>();
    table.kd_p75 = t.at("kd_p75").get<std::vector<double>>();
    table.kp_mean = t.at("kp_mean").get<std::vector<double>>();
    table.kp_p25 = t.at("kp_p25").get<std::vector<double>>();
    table.kp_p75 = t.at("kp_p75").get<std::vector<double>>();
    s.gain_curves = std::move(table);
  }
  return s;
}

}  // namespace

void save_profile_json(std::ostream& out, const EtiquetteProfile& profile) {
  json root;
  root["schema_version"] = kProfileSchemaVersion;
  root["name"] = profile.name;
  root["scenarios"] = json{{"highway", scenario_to_json(profile.highway)},
                           {"local", scenario_to_json(profile.local)}};
  out << root.dump(1, '\t') << '\n';
}

void save_profile_json(const std::filesystem::path& path, const EtiquetteProfile& profile) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  save_profile_json(out, profile);
}

EtiquetteProfile load_profile_json(std::istream& in) {
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("profile JSON: ") + e.what());
  }
  if (!root.contains("schema_version") || !root["schema_version"].is_number_integer()) {
    throw SchemaError("profile JSON: missing schema_version");
  }
  if (root["schema_version"].get<int>() != kProfileSchemaVersion) {
    throw SchemaError("profile JSON: unsupported schema_version " + root["schema_version"].dump() +
                      "; expected " + std::to_string(kProfileSchemaVersion));
  }
  EtiquetteProfile profile;
  profile.name = root.value("name", std::string{});
  if (root.contains("scenarios")) {
    const json& s = root["scenarios"];
    if (s.contains("highway")) profile.highway = scenario_from_json(s["highway"], "highway");
    if (s.contains("local")) profile.local = scenario_from_json(s["local"], "local");
  }
  return profile;
}

EtiquetteProfile load_profile_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return load_profile_json(in);
}

}  // namespace etiquette::profiles
