#pragma once

#include <span>
#include <string>
#include <vector>

#include "agekit/dataset.hpp"
#include "agekit/rng.hpp"
#include "agekit/types.hpp"

namespace helpers {

inline agekit::TouchEvent ev(std::int64_t t, agekit::TouchPhase phase, double x,
                             double y, double pressure = 0.5, double size = 0.2) {
  agekit::TouchEvent e;
  e.t = t;
  e.phase = phase;
  e.x = x;
  e.y = y;
  e.pressure = pressure;
  e.size = size;
  return e;
}

inline agekit::Gesture gesture(std::vector<agekit::TouchEvent> points,
                               bool complete = true) {
  agekit::Gesture g;
  g.t_start = points.front().t;
  g.t_end = points.back().t;
  g.points = std::move(points);
  g.complete = complete;
  return g;
}

/// n samples at 100 Hz starting at t0, constant value per axis.
inline std::vector<agekit::SensorSample> flat_stream(std::int64_t t0, int n,
                                                     double x = 0, double y = 0,
                                                     double z = 0) {
  std::vector<agekit::SensorSample> out;
  for (int i = 0; i < n; ++i) out.push_back({t0 + 10 * i, x, y, z});
  return out;
}

inline agekit::Session session_with_streams(int n_samples, std::int64_t t0 = 0) {
  agekit::Session s;
  s.id = "s0";
  for (int k = 0; k < agekit::kSensorCount; ++k)
    s.sensors[k] = flat_stream(t0, n_samples, 0.1 * k, 0.2, 0.3);
  return s;
}

/// Gaussian blobs: `informative` features shifted by `gap`, the rest noise.
inline agekit::Dataset blob_dataset(std::size_t n_per_class, std::size_t d,
                                    std::size_t informative, double gap,
                                    std::uint64_t seed,
                                    const std::string& group_prefix = "g") {
  agekit::Dataset data;
  for (std::size_t c = 0; c < d; ++c) data.names.push_back("f" + std::to_string(c));
  agekit::Rng rng(seed);
  std::vector<double> row(d);
  for (std::size_t i = 0; i < 2 * n_per_class; ++i) {
    const bool child = i < n_per_class;
    for (std::size_t c = 0; c < d; ++c) {
      double mean = c < informative ? (child ? gap / 2 : -gap / 2) : 0.0;
      row[c] = rng.normal(mean, 1.0);
    }
    data.add_row(row, child ? agekit::Label::Child : agekit::Label::Adult,
                 group_prefix + std::to_string(i));
  }
  return data;
}

}  // namespace helpers
