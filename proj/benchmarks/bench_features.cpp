#include <benchmark/benchmark.h>

#include <vector>

#include "agekit/rng.hpp"
#include "agekit/segmentation.hpp"
#include "agekit/sensor_features.hpp"
#include "agekit/touch_features.hpp"

namespace {

std::vector<double> random_series(std::size_t n) {
  agekit::Rng rng(1);
  std::vector<double> out(n);
  for (auto& v : out) v = rng.normal();
  return out;
}

void AxisStats(benchmark::State& state) {
  const auto series = random_series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto st = agekit::axis_stats(series);
    benchmark::DoNotOptimize(st);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(AxisStats)->Range(8, 1 << 14);

agekit::SensorWindow make_window(int samples_per_sensor) {
  agekit::Rng rng(2);
  agekit::SensorWindow w;
  w.t_start = 0;
  w.t_end = samples_per_sensor * 10;
  for (int s = 0; s < agekit::kSensorCount; ++s) {
    w.samples[s].resize(samples_per_sensor);
    for (int i = 0; i < samples_per_sensor; ++i)
      w.samples[s][i] = {10 * i, rng.normal(), rng.normal(), rng.normal()};
  }
  return w;
}

void WindowFeatures(benchmark::State& state) {
  const auto w = make_window(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto f = agekit::window_features(w);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(WindowFeatures)->Arg(100)->Arg(400)->Arg(2000);

void StrokeFeatures(benchmark::State& state) {
  agekit::Rng rng(3);
  agekit::Gesture g;
  const int n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i) {
    agekit::TouchEvent e;
    e.t = 10 * i;
    e.phase = i == 0 ? agekit::TouchPhase::Down
            : i == n - 1 ? agekit::TouchPhase::Up : agekit::TouchPhase::Move;
    e.x = 100 + i + rng.normal();
    e.y = 200 + rng.normal();
    e.pressure = 0.5;
    e.size = 0.2;
    g.points.push_back(e);
  }
  g.t_start = g.points.front().t;
  g.t_end = g.points.back().t;
  for (auto _ : state) {
    auto f = agekit::stroke_features(g);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(StrokeFeatures)->Arg(8)->Arg(64)->Arg(512);

}  // namespace
