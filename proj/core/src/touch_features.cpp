#include "agekit/touch_features.hpp"

#include <cmath>

#include "agekit/errors.hpp"

namespace agekit {

namespace {

double dist(const TouchEvent& a, const TouchEvent& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

double mean(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

// Population convention: divide by n.
double pop_std(std::span<const double> v) {
  if (v.empty()) return 0.0;
  const double m = mean(v);
  double sum2 = 0.0;
  for (double x : v) sum2 += (x - m) * (x - m);
  return std::sqrt(sum2 / static_cast<double>(v.size()));
}

}  // namespace

const std::vector<std::string>& tap_feature_names() {
  static const std::vector<std::string> names = {"pressure", "size", "duration"};
  return names;
}

const std::vector<std::string>& stroke_feature_names() {
  static const std::vector<std::string> names = {
      "straight_to_trajectory_length_ratio",
      "average_size",
      "std_size",
      "start_p",
      "start_to_LDP_length",
      "average_velocity",
      "std_velocity",
      "start_to_LDP_duration",
      "average_pressure",
      "LDP_to_stop_length",
      "trajectory_length",
      "average_distance",
      "straight_length",
      "LDP_velocity",
      "std_distance",
      "std_pressure",
      "LDP_to_stop_duration",
      "LDP_p",
      "stop_p",
      "LDP_s",
      "start_s",
      "stop_s",
  };
  return names;
}

LdpResult find_ldp(std::span<const TouchEvent> points) {
  if (points.size() < 2)
    throw DegenerateStroke("LDP needs at least 2 points");

  const TouchEvent& start = points.front();
  const TouchEvent& stop = points.back();
  const double chord_x = stop.x - start.x;
  const double chord_y = stop.y - start.y;
  const double chord_len = std::hypot(chord_x, chord_y);

  LdpResult best;
  best.deviation = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double d;
    if (chord_len == 0.0) {
      // Closed stroke: fall back to distance from the start point.
      d = dist(start, points[i]);
    } else {
      d = std::abs(chord_x * (points[i].y - start.y) -
                   chord_y * (points[i].x - start.x)) / chord_len;
    }
    if (d > best.deviation) {
      best.deviation = d;
      best.index = i;
    }
  }
  return best;
}

std::array<double, kTapFeatureCount> tap_features(const Gesture& g) {
  if (g.points.empty()) throw DegenerateStroke("tap with no points");
  double p = 0.0, s = 0.0;
  for (const auto& ev : g.points) {
    p += ev.pressure;
    s += ev.size;
  }
  const auto n = static_cast<double>(g.points.size());
  return {p / n, s / n,
          static_cast<double>(g.points.back().t - g.points.front().t)};
}

std::array<double, kStrokeFeatureCount> stroke_features(const Gesture& g) {
  const auto& pts = g.points;
  if (pts.size() < 2)
    throw DegenerateStroke("stroke needs at least 2 points");
  if (pts.back().t == pts.front().t)
    throw DegenerateStroke("stroke with zero duration");

  const TouchEvent& start = pts.front();
  const TouchEvent& stop = pts.back();

  std::vector<double> distances(pts.size() - 1);
  std::vector<double> velocities;
  velocities.reserve(pts.size() - 1);
  double trajectory = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double d = dist(pts[i - 1], pts[i]);
    distances[i - 1] = d;
    trajectory += d;
    const auto dt = static_cast<double>(pts[i].t - pts[i - 1].t);
    if (dt > 0.0) velocities.push_back(d / dt);
  }

  const double straight = dist(start, stop);
  const double ratio = trajectory == 0.0 ? 1.0 : straight / trajectory;

  const LdpResult ldp = find_ldp(pts);
  const TouchEvent& ldp_pt = pts[ldp.index];

  // Velocity of the segment ending at the LDP (or starting at it when the
  // LDP is the first point); 0 when that segment has zero duration.
  double ldp_velocity = 0.0;
  {
    const std::size_t seg_end = ldp.index == 0 ? 1 : ldp.index;
    const auto dt = static_cast<double>(pts[seg_end].t - pts[seg_end - 1].t);
    if (dt > 0.0) ldp_velocity = distances[seg_end - 1] / dt;
  }

  std::vector<double> pressures(pts.size()), sizes(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pressures[i] = pts[i].pressure;
    sizes[i] = pts[i].size;
  }

  std::array<double, kStrokeFeatureCount> f{};
  f[0] = ratio;
  f[1] = mean(sizes);
  f[2] = pop_std(sizes);
  f[3] = start.pressure;
  f[4] = dist(start, ldp_pt);
  f[5] = mean(velocities);
  f[6] = pop_std(velocities);
  f[7] = static_cast<double>(ldp_pt.t - start.t);
  f[8] = mean(pressures);
  f[9] = dist(ldp_pt, stop);
  f[10] = trajectory;
  f[11] = mean(distances);
  f[12] = straight;
  f[13] = ldp_velocity;
  f[14] = pop_std(distances);
  f[15] = pop_std(pressures);
  f[16] = static_cast<double>(stop.t - ldp_pt.t);
  f[17] = ldp_pt.pressure;
  f[18] = stop.pressure;
  f[19] = ldp_pt.size;
  f[20] = start.size;
  f[21] = stop.size;
  return f;
}

}  // namespace agekit
