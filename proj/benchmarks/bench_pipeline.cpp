#include <benchmark/benchmark.h>

#include <sstream>

#include "etiquette/dist/rng.hpp"
#include "etiquette/estimation/gains.hpp"
#include "etiquette/events/csv.hpp"
#include "etiquette/events/extraction.hpp"
#include "etiquette/profiles/builtin.hpp"
#include "etiquette/sim/corridor.hpp"

using namespace etiquette;

namespace {

const profiles::EtiquetteProfile& reference() {
  static const auto p = profiles::builtin_profile("spmd-2018");
  return p;
}

// Simulation throughput in logged vehicle-steps per second.
void BM_SimulateStep(benchmark::State& state) {
  sim::SimConfig cfg;
  cfg.duration = 60.0;
  cfg.record = state.range(0) != 0;
  cfg.seed = 11;
  std::size_t vehicle_steps = 0;
  for (auto _ : state) {
    const auto result = sim::simulate(cfg, reference());
    vehicle_steps += result.stats.steps * result.stats.spawned;
    benchmark::DoNotOptimize(result.stats.steps);
  }
  state.SetItemsProcessed(static_cast<int64_t>(vehicle_steps));
}
BENCHMARK(BM_SimulateStep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SegmentCarFollowing(benchmark::State& state) {
  sim::SimConfig cfg;
  cfg.duration = 300.0;
  cfg.seed = 2;
  const auto result = sim::simulate(cfg, reference());
  std::size_t samples = 0;
  for (const auto& trip : result.trips) samples += trip.samples.size();
  for (auto _ : state) {
    std::size_t episodes = 0;
    for (const auto& trip : result.trips) {
      episodes += events::segment_car_following(trip).size();
    }
    benchmark::DoNotOptimize(episodes);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(samples));
}
BENCHMARK(BM_SegmentCarFollowing)->Unit(benchmark::kMillisecond);

void BM_CsvRoundTrip(benchmark::State& state) {
  sim::SimConfig cfg;
  cfg.duration = 60.0;
  cfg.seed = 5;
  const auto result = sim::simulate(cfg, reference());
  for (auto _ : state) {
    std::ostringstream out;
    events::write_trajectory_csv(out, result.trips);
    std::istringstream in(out.str());
    benchmark::DoNotOptimize(events::load_trajectory_csv(in).size());
  }
  state.SetBytesProcessed(state.iterations() * 18 * 1024 * 1024);
}
BENCHMARK(BM_CsvRoundTrip)->Unit(benchmark::kMillisecond);

void BM_GainFitIrls(benchmark::State& state) {
  dist::Rng rng(9);
  std::vector<estimation::GainSample> samples;
  for (int i = 0; i < 20000; ++i) {
    const double v = rng.uniform(15.0, 35.0);
    const double th = rng.uniform(1.0, 1.8);
    const double rdot = rng.uniform(-3.0, 3.0);
    const double r = th * v;
    samples.push_back({r, rdot, v, 0.3 * rdot + 0.05 * (r - 1.4 * v) + 0.1 * rng.normal()});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimation::fit_gain_polynomials("D", events::RoadClass::kHighway, samples));
  }
  state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_GainFitIrls)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
