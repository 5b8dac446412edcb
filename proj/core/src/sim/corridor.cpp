#include "etiquette/sim/corridor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "etiquette/dist/rng.hpp"
#include "etiquette/errors.hpp"

namespace etiquette::sim {

namespace {

using events::RoadClass;
using events::TrajectorySample;
using events::Trip;

constexpr double kBrakeFlagThreshold = -0.3;  // m/s^2; lighter decel is engine drag, not braking
constexpr double kHalfLane = 1.75;            // m; in-lane window for control and collisions
// Braking layers above the spacing law. A closing time-to-collision under
// the trigger gets the driver's full personal brake (the mechanism behind
// the start-to-brake statistics). Underneath sits a safe-speed backstop:
// the follower never exceeds the speed from which it can stop, braking at
// kBackstopBrake after one reaction interval, a margin behind the leader's
// own stopping point. The backstop is inert in steady following and only
// shapes genuine emergencies.
constexpr double kBrakeTtcTrigger = 10.0;  // s
constexpr double kCloseOverspeed = 5.0;    // m/s allowed above target while closing
constexpr double kSafetyMargin = 4.0;      // m
constexpr double kBackstopBrake = 4.0;     // m/s^2, follower's assumed authority
constexpr double kLeaderStopBrake = 4.5;   // m/s^2, leader's assumed authority
constexpr double kPhysicalBrake = -5.0;    // m/s^2, command floor

double quintic(double tau) { return tau * tau * tau * (6.0 * tau * tau - 15.0 * tau + 10.0); }

// Inverse of the quintic ease on [0, 1] (monotone); bisection is plenty.
double quintic_inverse(double y) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (quintic(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct Vehicle {
  std::uint64_t id = 0;
  driver::DriverParams params;
  double x = 0.0;    // cumulative distance, non-decreasing
  double v = 0.0;
  double lat = 0.0;  // lateral offset from the main-lane center
  bool active = true;
  // Lateral cut-in schedule: |lat| eases from |from| to 0 over `total` s.
  bool maneuvering = false;
  bool brake_latch = false;
  std::size_t last_host_step = 0;  // cut-in exposure rotation
  double maneuver_t = 0.0;
  double maneuver_total = 0.0;
  double maneuver_from = 0.0;
  double accel = 0.0;  // last commanded
  std::vector<TrajectorySample> log;
};

struct Neighbor {
  int index = -1;
  double gap = 0.0;
};

class Corridor {
 public:
  Corridor(const SimConfig& config, const profiles::EtiquetteProfile& profile)
      : cfg_(config), profile_(profile), rng_(config.seed) {
    validate();
    // The corridor default sits below the sensing-horizon speed cap so the
    // target-speed spread survives it: faster drivers can close surplus
    // gaps while slower ones anchor stable platoons.
    free_flow_ = cfg_.free_flow.value_or(
        cfg_.road_class == events::RoadClass::kHighway
            ? driver::FreeFlowTarget{25.5, 1.5}
            : driver::FreeFlowTarget{16.5, 1.5});
    // The lateral schedule is anchored so that the |d_lat| crossing from the
    // 3 m detection threshold down to 0.3 m spans exactly the sampled
    // duration; the full lane width takes proportionally longer.
    const double w = cfg_.lane_width;
    threshold_span_ = quintic_inverse(1.0 - 0.3 / w) - quintic_inverse(1.0 - 3.0 / w);
    // Fastest speed from which a stopped queue first seen at the sensor
    // horizon can still be avoided at full physical braking; free-flow
    // targets are capped just below it.
    const double tau = 2.0 * cfg_.dt;
    const double authority = -kPhysicalBrake;
    speed_cap_ = -authority * tau +
                 std::sqrt(authority * authority * tau * tau +
                           2.0 * authority * (cfg_.sensor_range - kSafetyMargin)) -
                 0.3;
  }

  SimResult run() {
    for (const InitialVehicle& init : cfg_.initial_vehicles) spawn_initial(init);
    const auto steps = static_cast<std::size_t>(std::llround(cfg_.duration / cfg_.dt));
    for (std::size_t step = 0; step < steps; ++step) {
      const double t = static_cast<double>(step) * cfg_.dt;
      step_once(t);
    }
    SimResult result;
    result.stats = stats_;
    result.trips.reserve(vehicles_.size());
    for (Vehicle& vehicle : vehicles_) {
      if (vehicle.log.empty()) continue;
      Trip trip;
      trip.trip_id = "T" + std::to_string(vehicle.id);
      trip.driver_id = "D" + std::to_string(vehicle.id);
      trip.link_names = link_names_;
      trip.samples = std::move(vehicle.log);
      result.trips.push_back(std::move(trip));
    }
    return result;
  }

 private:
  void validate() const {
    std::string bad;
    auto check = [&](bool ok, const char* field) {
      if (!ok) {
        if (!bad.empty()) bad += ", ";
        bad += field;
      }
    };
    check(cfg_.dt > 0.0, "dt");
    check(cfg_.duration > 0.0, "duration");
    check(cfg_.corridor_length > 0.0, "corridor_length");
    check(cfg_.spawn_rate >= 0.0, "spawn_rate");
    check(cfg_.cut_in_rate >= 0.0, "cut_in_rate");
    check(cfg_.lane_width > 0.0, "lane_width");
    check(cfg_.sensor_range > 0.0, "sensor_range");
    check(cfg_.max_vehicles > 0, "max_vehicles");
    if (!bad.empty()) throw DomainError("simulate: invalid config fields: " + bad);
    if (cfg_.cut_in_rate > 0.0) {
      const auto& s = profile_.scenario(cfg_.road_class);
      if (!s.init_range_recip || !s.init_ttc_recip || !s.lc_duration) {
        throw DomainError(
            "simulate: cut-in injection needs init_range_recip, init_ttc_recip and "
            "lc_duration in the profile");
      }
    }
  }

  double position(const Vehicle& v) const {
    return cfg_.ring ? std::fmod(v.x, cfg_.corridor_length) : v.x;
  }

  void spawn_initial(const InitialVehicle& init) {
    Vehicle vehicle;
    vehicle.id = next_id_++;
    driver::SampleOptions options;
    options.free_flow = free_flow_;
    vehicle.params = driver::sample_driver(profile_, cfg_.road_class, init.driver_seed, options);
    vehicle.params.free_flow_speed = std::min(vehicle.params.free_flow_speed, speed_cap_);
    if (init.free_flow_override) vehicle.params.free_flow_speed = *init.free_flow_override;
    vehicle.x = init.position;
    vehicle.v = init.speed;
    vehicles_.push_back(std::move(vehicle));
    stats_.spawned += 1;
  }

  // Nearest vehicles ahead of `i` within the sensor horizon: the control
  // leader and the logged sensor target (wider lateral window). A vehicle
  // mid-merge has claimed the main lane, so it is a control-leader candidate
  // for everyone, and itself watches the full sensor window.
  std::pair<Neighbor, Neighbor> look_ahead(int i) const {
    Neighbor leader, target;
    const Vehicle& self = vehicles_[static_cast<std::size_t>(i)];
    const double pos_i = position(self);
    const double lat_i = self.lat;
    const std::size_t n = order_.size();
    const std::size_t start = order_pos_[static_cast<std::size_t>(i)];
    for (std::size_t hop = 1; hop < n; ++hop) {
      const std::size_t slot = start + hop;
      if (!cfg_.ring && slot >= n) break;
      const int j = order_[slot % n];
      const Vehicle& other = vehicles_[static_cast<std::size_t>(j)];
      double gap = position(other) - pos_i;
      if (cfg_.ring) {
        gap = std::fmod(gap + cfg_.corridor_length, cfg_.corridor_length);
        if (gap == 0.0) continue;
      } else if (gap <= 0.0) {
        continue;
      }
      if (gap > cfg_.sensor_range) break;
      const double d_lat = other.lat - lat_i;
      if (target.index < 0 && std::abs(d_lat) <= cfg_.sensor_lat_window) {
        target = Neighbor{j, gap};
      }
      const bool candidate = std::abs(d_lat) < kHalfLane || other.maneuvering ||
                             (self.maneuvering && std::abs(d_lat) <= cfg_.sensor_lat_window);
      if (leader.index < 0 && candidate) {
        leader = Neighbor{j, gap};
      }
      if (leader.index >= 0 && target.index >= 0) break;
    }
    return {leader, target};
  }

  void rebuild_order() {
    order_.clear();
    for (std::size_t i = 0; i < vehicles_.size(); ++i) {
      if (vehicles_[i].active) order_.push_back(static_cast<int>(i));
    }
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      const double pa = position(vehicles_[static_cast<std::size_t>(a)]);
      const double pb = position(vehicles_[static_cast<std::size_t>(b)]);
      if (pa != pb) return pa < pb;
      return vehicles_[static_cast<std::size_t>(a)].id < vehicles_[static_cast<std::size_t>(b)].id;
    });
    order_pos_.assign(vehicles_.size(), 0);
    for (std::size_t slot = 0; slot < order_.size(); ++slot) {
      order_pos_[static_cast<std::size_t>(order_[slot])] = slot;
    }
  }

  std::int32_t link_index(double pos) {
    const auto bucket = static_cast<long>(pos / cfg_.link_length);
    const std::string name = "L" + std::to_string(bucket);
    for (std::size_t i = 0; i < link_names_.size(); ++i) {
      if (link_names_[i] == name) return static_cast<std::int32_t>(i);
    }
    link_names_.push_back(name);
    return static_cast<std::int32_t>(link_names_.size() - 1);
  }

  void step_once(double t) {
    rebuild_order();

    // Control pass: pure reads of the current state.
    struct Plan {
      double accel = 0.0;
      Neighbor leader, target;
    };
    std::vector<Plan> plans(vehicles_.size());
    for (std::size_t i = 0; i < vehicles_.size(); ++i) {
      Vehicle& vehicle = vehicles_[i];
      if (!vehicle.active) continue;
      auto [leader, target] = look_ahead(static_cast<int>(i));
      Plan& plan = plans[i];
      plan.leader = leader;
      plan.target = target;
      if (leader.index >= 0) {
        const Vehicle& lead = vehicles_[static_cast<std::size_t>(leader.index)];
        driver::LongitudinalState state{vehicle.v, leader.gap, lead.v - vehicle.v, true};
        // The spacing law governs under a speed governor: a driver closing a
        // gap may run a little over the free-flow target, but never past the
        // sensing-horizon cap.
        const double limit =
            std::min(vehicle.params.free_flow_speed + kCloseOverspeed, speed_cap_);
        plan.accel = std::min(driver::car_following_accel(vehicle.params, state),
                              0.3 * (limit - vehicle.v));
        // Once committed to a hard brake, a driver stays on it until the
        // closure is resolved.
        if (state.range_rate < 0.0 &&
            state.range / -state.range_rate < kBrakeTtcTrigger) {
          vehicle.brake_latch = true;
        } else if (state.range_rate >= -0.3) {
          // Release while still barely closing; the spacing law then
          // re-equilibrates from mild compression instead of overshooting.
          vehicle.brake_latch = false;
        }
        if (vehicle.brake_latch) {
          plan.accel = std::min(plan.accel, vehicle.params.accel_min);
        }
        {
          const double tau = 2.0 * cfg_.dt;
          // A leader already braking harder than the nominal assumption may
          // stop shorter; track its demonstrated authority plus a reserve.
          const double lead_brake =
              std::max(kLeaderStopBrake, 0.5 - std::min(lead.accel, 0.0));
          const double room = 2.0 * std::max(state.range - kSafetyMargin, 0.0) +
                              lead.v * lead.v / lead_brake;
          const double disc = kBackstopBrake * kBackstopBrake * tau * tau +
                              kBackstopBrake * room;
          const double v_safe = -kBackstopBrake * tau + std::sqrt(disc);
          if (vehicle.v > v_safe) {
            plan.accel = std::min(plan.accel,
                                  std::max((v_safe - vehicle.v) / cfg_.dt, kPhysicalBrake));
          }
        }
      } else {
        vehicle.brake_latch = false;
        plan.accel = driver::free_flow_accel(vehicle.params, vehicle.v);
      }
      vehicle.accel = plan.accel;
    }

    // Log the state each command was computed from.
    if (cfg_.record) {
      for (std::size_t i = 0; i < vehicles_.size(); ++i) {
        Vehicle& vehicle = vehicles_[i];
        if (!vehicle.active) continue;
        TrajectorySample s;
        s.t = t;
        s.lat_deg = cfg_.log_lat;
        s.lon_deg = cfg_.log_lon;
        s.v = vehicle.v;
        s.a = vehicle.accel;
        s.brake = vehicle.accel < kBrakeFlagThreshold;
        s.road_class = cfg_.road_class;
        s.lane_offset = vehicle.lat;
        s.link = link_index(position(vehicle));
        s.posted_limit = free_flow_.mean - 2.2;
        const Neighbor& target = plans[i].target;
        if (target.index >= 0) {
          const Vehicle& other = vehicles_[static_cast<std::size_t>(target.index)];
          s.range = target.gap;
          s.range_rate = other.v - vehicle.v;
          s.target_lat = other.lat - vehicle.lat;
        }
        vehicle.log.push_back(s);
      }
    }

    // Integration. Pre-step positions are kept for the safety check.
    x_before_.resize(vehicles_.size());
    for (std::size_t i = 0; i < vehicles_.size(); ++i) x_before_[i] = vehicles_[i].x;
    for (std::size_t i = 0; i < vehicles_.size(); ++i) {
      Vehicle& vehicle = vehicles_[i];
      if (!vehicle.active) continue;
      const double a = plans[i].accel;
      const double dx = vehicle.v * cfg_.dt + 0.5 * a * cfg_.dt * cfg_.dt;
      vehicle.x += std::max(dx, 0.0);
      vehicle.v = std::max(vehicle.v + a * cfg_.dt, 0.0);
      if (vehicle.maneuvering) {
        vehicle.maneuver_t += cfg_.dt;
        if (vehicle.maneuver_t >= vehicle.maneuver_total) {
          vehicle.maneuvering = false;
          vehicle.lat = 0.0;
        } else {
          vehicle.lat = vehicle.maneuver_from *
                        (1.0 - quintic(vehicle.maneuver_t / vehicle.maneuver_total));
        }
      }
      if (!cfg_.ring && vehicle.x > cfg_.corridor_length) vehicle.active = false;
    }

    // Safety: the gap to the in-lane leader must stay positive.
    for (std::size_t i = 0; i < vehicles_.size(); ++i) {
      const Vehicle& vehicle = vehicles_[i];
      if (!vehicle.active || plans[i].leader.index < 0) continue;
      const Vehicle& lead = vehicles_[static_cast<std::size_t>(plans[i].leader.index)];
      if (!lead.active) continue;
      if (std::abs(lead.lat - vehicle.lat) >= kHalfLane) continue;
      const double moved_gap = plans[i].leader.gap + (lead.x - lead_x_before(plans[i].leader.index)) -
                               (vehicle.x - lead_x_before(static_cast<int>(i)));
      if (moved_gap <= 0.0) {
        std::ostringstream dump;
        dump << "collision at t=" << t + cfg_.dt << ": vehicle " << vehicle.id << " (v="
             << vehicle.v << ", x=" << vehicle.x << ") reached leader " << lead.id
             << " (v=" << lead.v << ", x=" << lead.x << "), pre-step gap "
             << plans[i].leader.gap << " m";
        throw CollisionError(dump.str());
      }
    }

    maybe_spawn(t);
    maybe_cut_in(t);
    stats_.steps += 1;
  }

  double lead_x_before(int index) const {
    const auto i = static_cast<std::size_t>(index);
    return i < x_before_.size() ? x_before_[i] : vehicles_[i].x;
  }

  std::size_t active_count() const {
    return static_cast<std::size_t>(
        std::count_if(vehicles_.begin(), vehicles_.end(), [](const Vehicle& v) { return v.active; }));
  }

  void maybe_spawn(double t) {
    (void)t;
    const unsigned arrivals = rng_.poisson(cfg_.spawn_rate * cfg_.dt);
    for (unsigned k = 0; k < arrivals; ++k) {
      if (active_count() >= cfg_.max_vehicles) return;
      if (cfg_.ring) {
        spawn_into_largest_gap();
      } else {
        spawn_at_origin();
      }
    }
  }

  void make_driver(Vehicle& vehicle) {
    vehicle.id = next_id_++;
    driver::SampleOptions options;
    options.free_flow = free_flow_;
    vehicle.params = driver::sample_driver(profile_, cfg_.road_class,
                                           dist::derive_seed(cfg_.seed, vehicle.id), options);
    vehicle.params.free_flow_speed = std::min(vehicle.params.free_flow_speed, speed_cap_);
  }

  // Ring entry: split the widest gap so density can build up to the cap.
  void spawn_into_largest_gap() {
    rebuild_order();
    Vehicle vehicle;
    if (order_.empty()) {
      make_driver(vehicle);
      vehicle.x = 0.0;
      vehicle.v = vehicle.params.free_flow_speed;
      vehicles_.push_back(std::move(vehicle));
      stats_.spawned += 1;
      return;
    }
    double best_gap = -1.0;
    std::size_t best_slot = 0;
    for (std::size_t slot = 0; slot < order_.size(); ++slot) {
      const Vehicle& back = vehicles_[static_cast<std::size_t>(order_[slot])];
      const Vehicle& front =
          vehicles_[static_cast<std::size_t>(order_[(slot + 1) % order_.size()])];
      double gap = position(front) - position(back);
      if (order_.size() == 1) gap = cfg_.corridor_length;
      if (gap <= 0.0) gap += cfg_.corridor_length;
      if (gap > best_gap) {
        best_gap = gap;
        best_slot = slot;
      }
    }
    if (best_gap < 36.0) return;
    const Vehicle& back = vehicles_[static_cast<std::size_t>(order_[best_slot])];
    const Vehicle& front =
        vehicles_[static_cast<std::size_t>(order_[(best_slot + 1) % order_.size()])];
    make_driver(vehicle);
    vehicle.x = std::fmod(position(back) + best_gap / 2.0, cfg_.corridor_length);
    vehicle.v = std::min(vehicle.params.free_flow_speed, front.v);
    // Whoever is behind must be able to absorb the speed difference.
    if ((back.v - vehicle.v) * 6.0 > best_gap / 2.0 - 10.0) return;
    vehicles_.push_back(std::move(vehicle));
    stats_.spawned += 1;
  }

  void spawn_at_origin() {
    double ahead_gap = std::numeric_limits<double>::infinity();
    double ahead_speed = 0.0;
    bool has_ahead = false;
    for (const Vehicle& other : vehicles_) {
      if (!other.active) continue;
      const double delta = position(other);
      if (delta >= 0.0 && delta < ahead_gap) {
        ahead_gap = delta;
        ahead_speed = other.v;
        has_ahead = true;
      }
    }
    if (ahead_gap < 25.0) return;
    Vehicle vehicle;
    make_driver(vehicle);
    vehicle.x = 0.0;
    vehicle.v = has_ahead && ahead_gap < cfg_.sensor_range
                    ? std::min(vehicle.params.free_flow_speed, ahead_speed)
                    : vehicle.params.free_flow_speed;
    vehicles_.push_back(std::move(vehicle));
    stats_.spawned += 1;
  }

  void maybe_cut_in(double t) {
    const unsigned arrivals = rng_.poisson(cfg_.cut_in_rate * cfg_.dt);
    for (unsigned k = 0; k < arrivals; ++k) inject_cut_in(t);
  }

  void inject_cut_in(double t) {
    (void)t;
    rebuild_order();

    // Eligible hosts: cruising vehicles with room in front.
    std::vector<int> hosts;
    for (std::size_t i = 0; i < vehicles_.size(); ++i) {
      const Vehicle& vehicle = vehicles_[i];
      if (!vehicle.active || vehicle.maneuvering || vehicle.v < 12.0) continue;
      hosts.push_back(static_cast<int>(i));
    }
    if (hosts.size() < 3) return;
    // Rotate hosts by least-recent exposure so every driver sees cut-ins.
    int host_index = hosts.front();
    for (int candidate : hosts) {
      const Vehicle& a = vehicles_[static_cast<std::size_t>(candidate)];
      const Vehicle& b = vehicles_[static_cast<std::size_t>(host_index)];
      if (a.last_host_step < b.last_host_step ||
          (a.last_host_step == b.last_host_step && a.id < b.id)) {
        host_index = candidate;
      }
    }
    Vehicle& host = vehicles_[static_cast<std::size_t>(host_index)];
    host.last_host_step = stats_.steps + 1;
    auto [host_leader, host_target] = look_ahead(host_index);
    // Clearance against everything ahead, staging lane included.
    double front_gap = host_leader.index >= 0 ? host_leader.gap : cfg_.sensor_range;
    if (host_target.index >= 0) front_gap = std::min(front_gap, host_target.gap);

    const double max_range = std::min(front_gap - 12.0, 38.0);
    if (max_range < 15.0) return;

    const auto& scenario = profile_.scenario(cfg_.road_class);
    const double recip =
        dist::gev_quantile(*scenario.init_range_recip,
                           std::clamp(rng_.uniform01(), 1e-12, 1.0 - 1e-12));
    const double range = std::clamp(recip > 0.0 ? 1.0 / recip : max_range, 15.0, max_range);
    // Closing-rate sample; clamped so insertions stay recoverable.
    const double ttc_recip = std::clamp(
        dist::laplace_quantile(*scenario.init_ttc_recip,
                               std::clamp(rng_.uniform01(), 1e-12, 1.0 - 1e-12)),
        -0.25, 0.2);
    const double range_rate = -range * ttc_recip;
    const double speed = std::clamp(host.v + range_rate, std::max(5.0, host.v - 5.0), host.v + 5.0);
    const double side = rng_.uniform01() < 0.5 ? 1.0 : -1.0;

    // The landing point must be clear of every vehicle in any lane.
    const double landing = cfg_.ring
                               ? std::fmod(position(host) + range, cfg_.corridor_length)
                               : position(host) + range;
    for (std::size_t i = 0; i < vehicles_.size(); ++i) {
      const Vehicle& other = vehicles_[i];
      if (!other.active || static_cast<int>(i) == host_index) continue;
      double separation = std::abs(position(other) - landing);
      if (cfg_.ring) separation = std::min(separation, cfg_.corridor_length - separation);
      if (separation < 12.0) return;
    }

    Vehicle* mover = nullptr;
    if (cfg_.ring) {
      // Recycle the vehicle with the most front room so density is preserved.
      int donor = -1;
      double best_gap = -1.0;
      for (std::size_t i = 0; i < vehicles_.size(); ++i) {
        const Vehicle& vehicle = vehicles_[i];
        if (!vehicle.active || vehicle.maneuvering) continue;
        if (static_cast<int>(i) == host_index || static_cast<int>(i) == host_leader.index ||
            static_cast<int>(i) == host_target.index) {
          continue;
        }
        auto [lead, tgt] = look_ahead(static_cast<int>(i));
        const double gap = lead.index >= 0 ? lead.gap : cfg_.sensor_range + 1.0;
        if (gap > best_gap) {
          best_gap = gap;
          donor = static_cast<int>(i);
        }
      }
      if (donor < 0) return;
      Vehicle& vehicle = vehicles_[static_cast<std::size_t>(donor)];
      const double delta = std::fmod(position(host) + range - position(vehicle) +
                                         2.0 * cfg_.corridor_length,
                                     cfg_.corridor_length);
      if (delta <= 0.5) return;
      vehicle.x += delta;
      mover = &vehicle;
    } else {
      if (active_count() >= cfg_.max_vehicles) return;
      Vehicle vehicle;
      make_driver(vehicle);
      vehicle.x = host.x + range;
      vehicles_.push_back(std::move(vehicle));
      stats_.spawned += 1;
      mover = &vehicles_.back();
    }

    mover->v = speed;
    mover->lat = side * cfg_.lane_width;
    mover->maneuver_from = mover->lat;
    mover->maneuvering = true;
    mover->maneuver_t = 0.0;
    // Total schedule time so the 3 m -> 0.3 m crossing lasts the sampled
    // duration (the detection convention for T). Each maneuver draws its own
    // duration from the population model.
    const double sampled = sample_duration();
    mover->maneuver_total = sampled / threshold_span_;
    stats_.cut_ins += 1;
    stats_.cut_in_durations.push_back(sampled);
  }

  double sample_duration() {
    const auto& duration = *profile_.scenario(cfg_.road_class).lc_duration;
    const double p_lo = dist::gev_cdf(duration, 0.5);
    const double p_hi = dist::gev_cdf(duration, 15.0);
    const double p = std::clamp(p_lo + rng_.uniform01() * (p_hi - p_lo), 1e-12, 1.0 - 1e-12);
    return std::clamp(dist::gev_quantile(duration, p), 0.5, 15.0);
  }

  const SimConfig cfg_;
  const profiles::EtiquetteProfile& profile_;
  dist::Rng rng_;
  driver::FreeFlowTarget free_flow_;
  double threshold_span_ = 0.5;
  double speed_cap_ = 28.0;
  std::vector<Vehicle> vehicles_;
  std::vector<int> order_;             // active vehicle indices by position
  std::vector<std::size_t> order_pos_;  // vehicle index -> slot in order_
  std::vector<double> x_before_;
  std::vector<std::string> link_names_;
  std::uint64_t next_id_ = 0;
  SimStats stats_;
};

}  // namespace

SimResult simulate(const SimConfig& config, const profiles::EtiquetteProfile& profile) {
  Corridor corridor(config, profile);
  return corridor.run();
}

}  // namespace etiquette::sim
