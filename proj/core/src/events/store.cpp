#include "etiquette/events/store.hpp"

#include <fstream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "etiquette/errors.hpp"

namespace etiquette::events {

namespace {

using nlohmann::json;

json episode_to_json(const CarFollowingEpisode& ep) {
  json cols{{"t", json::array()},          {"v", json::array()},
            {"a", json::array()},          {"brake", json::array()},
            {"range", json::array()},      {"range_rate", json::array()},
            {"d_lat", json::array()},      {"lane_offset", json::array()}};
  for (std::size_t i = 0; i < ep.size(); ++i) {
    const TrajectorySample s = ep.sample(i);
    cols["t"].push_back(s.t);
    cols["v"].push_back(s.v);
    cols["a"].push_back(s.a);
    cols["brake"].push_back(s.brake ? 1 : 0);
    cols["range"].push_back(s.range);
    cols["range_rate"].push_back(s.range_rate);
    cols["d_lat"].push_back(s.target_lat);
    cols["lane_offset"].push_back(s.lane_offset);
  }
  return json{{"driver_id", ep.driver_id},
              {"road_class", to_string(ep.road_class)},
              {"samples", std::move(cols)}};
}

json lane_change_to_json(const LaneChangeEvent& ev) {
  json j{{"driver_id", ev.driver_id},
         {"road_class", to_string(ev.road_class)},
         {"direction", to_string(ev.direction)},
         {"t_start", ev.t_start},
         {"t_end", ev.t_end},
         {"duration", ev.duration},
         {"initial_range", ev.initial_range},
         {"initial_ttc_recip", ev.initial_ttc_recip},
         {"initial_speed", ev.initial_speed},
         {"dt", ev.dt},
         {"d_lat_series", ev.d_lat_series},
         {"leader_speed_series", ev.leader_speed_series}};
  if (ev.initial_ttc) j["initial_ttc"] = *ev.initial_ttc;
  if (ev.max_yaw_rate) j["max_yaw_rate"] = *ev.max_yaw_rate;
  return j;
}

LaneChangeEvent lane_change_from_json(const json& j) {
  LaneChangeEvent ev;
  ev.driver_id = j.at("driver_id").get<std::string>();
  ev.road_class = road_class_from_string(j.at("road_class").get<std::string>());
  const auto dir = j.at("direction").get<std::string>();
  if (dir == "left_to_right") {
    ev.direction = LaneChangeEvent::Direction::kLeftToRight;
  } else if (dir == "right_to_left") {
    ev.direction = LaneChangeEvent::Direction::kRightToLeft;
  } else {
    throw SchemaError("events store: unknown direction '" + dir + "'");
  }
  ev.t_start = j.at("t_start").get<double>();
  ev.t_end = j.at("t_end").get<double>();
  ev.duration = j.at("duration").get<double>();
  ev.initial_range = j.at("initial_range").get<double>();
  ev.initial_ttc_recip = j.at("initial_ttc_recip").get<double>();
  ev.initial_speed = j.at("initial_speed").get<double>();
  ev.dt = j.at("dt").get<double>();
  ev.d_lat_series = j.at("d_lat_series").get<std::vector<double>>();
  ev.leader_speed_series = j.at("leader_speed_series").get<std::vector<double>>();
  if (j.contains("initial_ttc")) ev.initial_ttc = j.at("initial_ttc").get<double>();
  if (j.contains("max_yaw_rate")) ev.max_yaw_rate = j.at("max_yaw_rate").get<double>();
  return ev;
}

}  // namespace

void save_events_json(std::ostream& out, const ExtractionBundle& bundle) {
  json root;
  root["schema_version"] = kEventStoreSchemaVersion;
  root["episodes"] = json::array();
  for (const auto& ep : bundle.episodes) root["episodes"].push_back(episode_to_json(ep));
  root["lane_changes"] = json::array();
  for (const auto& ev : bundle.lane_changes) root["lane_changes"].push_back(lane_change_to_json(ev));
  root["free_flow_links"] = json::array();
  for (const auto& link : bundle.free_flow_links) {
    json j{{"link_id", link.link_id},
           {"road_class", to_string(link.road_class)},
           {"speeds", link.speeds}};
    if (link.posted_limit) j["posted_limit"] = *link.posted_limit;
    root["free_flow_links"].push_back(std::move(j));
  }
  out << root.dump(1, '\t') << '\n';
}

void save_events_json(const std::filesystem::path& path, const ExtractionBundle& bundle) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  save_events_json(out, bundle);
}

EventStore load_events_json(std::istream& in) {
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("events store: ") + e.what());
  }
  if (!root.contains("schema_version") || !root["schema_version"].is_number_integer()) {
    throw SchemaError("events store: missing schema_version");
  }
  if (root["schema_version"].get<int>() != kEventStoreSchemaVersion) {
    throw SchemaError("events store: unsupported schema_version " +
                      root["schema_version"].dump() + "; expected " +
                      std::to_string(kEventStoreSchemaVersion));
  }

  EventStore store;
  for (const json& j : root.value("episodes", json::array())) {
    auto trip = std::make_unique<Trip>();
    const json& cols = j.at("samples");
    const auto& t = cols.at("t");
    const std::size_t n = t.size();
    trip->trip_id = "episode";
    trip->driver_id = j.at("driver_id").get<std::string>();
    const RoadClass rc = road_class_from_string(j.at("road_class").get<std::string>());
    trip->samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      TrajectorySample& s = trip->samples[i];
      s.t = cols.at("t")[i].get<double>();
      s.v = cols.at("v")[i].get<double>();
      s.a = cols.at("a")[i].get<double>();
      s.brake = cols.at("brake")[i].get<int>() != 0;
      s.range = cols.at("range")[i].get<double>();
      s.range_rate = cols.at("range_rate")[i].get<double>();
      s.target_lat = cols.at("d_lat")[i].get<double>();
      s.lane_offset = cols.at("lane_offset")[i].get<double>();
      s.road_class = rc;
    }
    CarFollowingEpisode ep;
    ep.driver_id = trip->driver_id;
    ep.road_class = rc;
    ep.trip = trip.get();
    ep.first = 0;
    ep.last = n;
    store.bundle.episodes.push_back(std::move(ep));
    store.backing.push_back(std::move(trip));
  }
  for (const json& j : root.value("lane_changes", json::array())) {
    store.bundle.lane_changes.push_back(lane_change_from_json(j));
  }
  for (const json& j : root.value("free_flow_links", json::array())) {
    FreeFlowLinkSamples link;
    link.link_id = j.at("link_id").get<std::string>();
    link.road_class = road_class_from_string(j.at("road_class").get<std::string>());
    if (j.contains("posted_limit")) link.posted_limit = j.at("posted_limit").get<double>();
    link.speeds = j.at("speeds").get<std::vector<double>>();
    store.bundle.free_flow_links.push_back(std::move(link));
  }
  return store;
}

EventStore load_events_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return load_events_json(in);
}

}  // namespace etiquette::events
