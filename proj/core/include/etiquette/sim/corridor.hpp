#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "etiquette/driver/driver.hpp"
#include "etiquette/events/types.hpp"
#include "etiquette/profiles/profile.hpp"

namespace etiquette::sim {

// Scripted starting vehicle; free_flow_override pins the driver's target
// speed (a vehicle with no leader then holds that speed exactly).
struct InitialVehicle {
  double position = 0.0;  // m along the corridor
  double speed = 0.0;     // m/s
  std::optional<double> free_flow_override;
  std::uint64_t driver_seed = 0;
};

struct SimConfig {
  events::RoadClass road_class = events::RoadClass::kHighway;
  double corridor_length = 18000.0;  // m
  double duration = 600.0;           // s
  double dt = 0.1;                   // s, matches the 10 Hz log cadence
  double spawn_rate = 0.5;           // veh/s, Poisson arrivals
  double cut_in_rate = 0.05;         // cut-in injections/s, Poisson
  std::uint64_t seed = 1;
  // Ring topology wraps positions so density stays constant; cut-in vehicles
  // are then drawn from the existing fleet (relocated into the gap) instead
  // of growing it. An open corridor retires vehicles at the far end.
  bool ring = true;
  bool record = true;  // keep per-step logs; off for long safety sweeps
  double lane_width = 3.5;      // m
  double sensor_range = 90.0;   // m, forward-target horizon
  double sensor_lat_window = 4.5;  // m, how far aside the sensor still tracks
  std::optional<driver::FreeFlowTarget> free_flow;  // default chosen by road class
  std::size_t max_vehicles = 200;
  std::vector<InitialVehicle> initial_vehicles;
  // Stamps for emitted logs; defaults sit inside the extraction bounding boxes.
  double log_lat = 42.26;
  double log_lon = -83.70;
  double link_length = 1000.0;  // m per emitted link id
};

struct SimStats {
  std::size_t spawned = 0;
  std::size_t cut_ins = 0;
  std::size_t steps = 0;
  // Threshold-crossing duration scheduled for each injected cut-in, in
  // injection order (what detection should recover).
  std::vector<double> cut_in_durations;
};

struct SimResult {
  std::vector<events::Trip> trips;  // one per vehicle, in spawn order
  SimStats stats;
};

// Deterministic microsimulation: per step each vehicle runs the free-flow
// controller (no leader within the sensor horizon) or the car-following law,
// then integrates v += a dt, x += v dt + a dt^2 / 2 with v floored at 0.
// Cut-ins are injected as a Poisson process: a vehicle is placed ahead of a
// random host at a range and closing rate sampled from the profile's
// lane-change distributions, then slides into the lane on a quintic lateral
// schedule. Leader-follower range crossing zero aborts with a diagnostic
// dump (CollisionError). Identical (config, profile) runs are bit-identical.
SimResult simulate(const SimConfig& config, const profiles::EtiquetteProfile& profile);

}  // namespace etiquette::sim
