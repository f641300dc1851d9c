#include "agekit/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agekit/errors.hpp"

namespace agekit {

namespace {

Gesture close_gesture(std::vector<TouchEvent> points, bool complete) {
  Gesture g;
  g.t_start = points.front().t;
  g.t_end = points.back().t;
  g.points = std::move(points);
  g.complete = complete;
  return g;
}

}  // namespace

std::vector<Gesture> segment_gestures(std::span<const TouchEvent> events,
                                      std::int64_t gap_ms) {
  std::vector<Gesture> gestures;
  std::vector<TouchEvent> run;
  bool run_open = false;  // run started with a down and is still live

  auto flush = [&](bool complete) {
    if (!run.empty()) gestures.push_back(close_gesture(std::move(run), complete));
    run.clear();
    run_open = false;
  };

  for (const TouchEvent& ev : events) {
    if (!run.empty() && ev.t - run.back().t > gap_ms) flush(false);

    switch (ev.phase) {
      case TouchPhase::Down:
        if (run_open) flush(false);  // missing up
        if (!run.empty()) flush(false);
        run.push_back(ev);
        run_open = true;
        break;
      case TouchPhase::Move:
        run.push_back(ev);  // orphan moves accumulate into an incomplete run
        break;
      case TouchPhase::Up:
        run.push_back(ev);
        if (run_open) {
          flush(true);
        } else {
          flush(false);  // up with no preceding down
        }
        break;
    }
  }
  flush(false);  // stream ended mid-run
  return gestures;
}

double trajectory_length(std::span<const TouchEvent> points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    total += std::hypot(points[i].x - points[i - 1].x,
                        points[i].y - points[i - 1].y);
  return total;
}

GestureKind classify_gesture(const Gesture& g, const SegmentationParams& params) {
  const std::int64_t duration = g.t_end - g.t_start;
  if (trajectory_length(g.points) < params.tap_move_px &&
      duration < params.tap_max_ms)
    return GestureKind::Tap;
  return GestureKind::Stroke;
}

std::vector<Gesture> segment_and_classify(std::span<const TouchEvent> events,
                                          const SegmentationParams& params) {
  auto gestures = segment_gestures(events, params.gap_ms);
  for (auto& g : gestures)
    if (g.complete) g.kind = classify_gesture(g, params);
  return gestures;
}

WindowingResult segment_windows(const Session& session, double n_seconds,
                                std::size_t min_samples) {
  if (session.sensor_sample_count() == 0)
    throw EmptyStream("session '" + session.id + "' has no sensor data");

  std::int64_t first_t = std::numeric_limits<std::int64_t>::max();
  std::int64_t last_t = std::numeric_limits<std::int64_t>::min();
  for (const auto& stream : session.sensors) {
    if (stream.empty()) continue;
    first_t = std::min(first_t, stream.front().t);
    last_t = std::max(last_t, stream.back().t);
  }

  const auto window_ms = static_cast<std::int64_t>(std::llround(n_seconds * 1000.0));
  const std::int64_t span = last_t - first_t;
  const std::int64_t n_windows = window_ms > 0 ? span / window_ms : 0;

  WindowingResult result;
  std::array<std::size_t, kSensorCount> pos{};
  for (std::int64_t w = 0; w < n_windows; ++w) {
    SensorWindow win;
    win.t_start = first_t + w * window_ms;
    win.t_end = win.t_start + window_ms;
    bool enough = true;
    for (int s = 0; s < kSensorCount; ++s) {
      const auto& stream = session.sensors[s];
      auto& p = pos[s];
      while (p < stream.size() && stream[p].t < win.t_start) ++p;
      std::size_t q = p;
      while (q < stream.size() && stream[q].t < win.t_end) ++q;
      win.samples[s].assign(stream.begin() + p, stream.begin() + q);
      p = q;
      if (win.samples[s].size() < min_samples) enough = false;
    }
    if (enough) {
      result.windows.push_back(std::move(win));
    } else {
      ++result.dropped_sparse;
    }
  }
  return result;
}

SensorWindow gesture_window(const Session& session, const Gesture& g,
                            std::size_t min_samples) {
  std::int64_t session_first = std::numeric_limits<std::int64_t>::max();
  std::int64_t session_last = std::numeric_limits<std::int64_t>::min();
  for (int s = 0; s < kSensorCount; ++s) {
    const auto& stream = session.sensors[s];
    if (stream.empty())
      throw EmptyStream(std::string(sensor_name(static_cast<SensorKind>(s))) +
                        " stream is empty in session '" + session.id + "'");
    session_first = std::min(session_first, stream.front().t);
    session_last = std::max(session_last, stream.back().t);
  }

  // Smallest radius around the gesture midpoint giving every sensor
  // min_samples. Symmetric growth stops when an edge reaches the session's
  // recording bounds; a window stopped short is flagged sparse. The gesture
  // span itself is always covered.
  const double mid = 0.5 * (static_cast<double>(g.t_start) + static_cast<double>(g.t_end));
  const auto half_span = static_cast<std::int64_t>(
      std::ceil((static_cast<double>(g.t_end) - g.t_start) / 2.0)) + 1;

  std::int64_t needed = half_span;
  for (int s = 0; s < kSensorCount; ++s) {
    const auto& stream = session.sensors[s];
    if (stream.size() < min_samples) {
      needed = std::numeric_limits<std::int64_t>::max();
      break;
    }
    // Distance from mid to the min_samples-th nearest timestamp: slide a
    // window of min_samples consecutive samples and take the best fit.
    auto lower = std::lower_bound(
        stream.begin(), stream.end(), mid,
        [](const SensorSample& a, double t) { return static_cast<double>(a.t) < t; });
    std::size_t right = static_cast<std::size_t>(lower - stream.begin());
    double best = std::numeric_limits<double>::infinity();
    const std::size_t lo_start =
        right >= min_samples ? right - min_samples : 0;
    const std::size_t hi_start =
        std::min(right, stream.size() - min_samples);
    for (std::size_t i = lo_start; i <= hi_start; ++i) {
      const double r = std::max(std::abs(mid - static_cast<double>(stream[i].t)),
                                std::abs(static_cast<double>(stream[i + min_samples - 1].t) - mid));
      best = std::min(best, r);
    }
    needed = std::max(needed, static_cast<std::int64_t>(std::ceil(best)) + 1);
  }

  const std::int64_t to_bound =
      std::min(static_cast<std::int64_t>(std::floor(mid)) - session_first,
               session_last + 1 - static_cast<std::int64_t>(std::ceil(mid)));
  const std::int64_t radius =
      std::max(half_span, std::min(needed, std::max<std::int64_t>(to_bound, 0)));

  SensorWindow win;
  win.t_start = std::min<std::int64_t>(
      g.t_start, static_cast<std::int64_t>(std::floor(mid)) - radius);
  win.t_end = std::max<std::int64_t>(
      g.t_end + 1, static_cast<std::int64_t>(std::ceil(mid)) + radius);
  bool sparse = false;
  for (int s = 0; s < kSensorCount; ++s) {
    const auto& stream = session.sensors[s];
    auto from = std::lower_bound(stream.begin(), stream.end(), win.t_start,
                                 [](const SensorSample& a, std::int64_t t) { return a.t < t; });
    auto to = std::lower_bound(from, stream.end(), win.t_end,
                               [](const SensorSample& a, std::int64_t t) { return a.t < t; });
    win.samples[s].assign(from, to);
    if (win.samples[s].size() < min_samples) sparse = true;
  }
  win.sparse = sparse;
  return win;
}

}  // namespace agekit
