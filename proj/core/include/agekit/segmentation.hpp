#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "agekit/types.hpp"

namespace agekit {

struct SegmentationParams {
  /// A silence longer than this inside a down...up run closes the gesture
  /// as incomplete (guards against missing `up` events).
  std::int64_t gap_ms = 1000;
  /// Tap rule: trajectory shorter than this many pixels...
  double tap_move_px = 10.0;
  /// ...and duration under this many ms; anything else is a stroke.
  std::int64_t tap_max_ms = 300;
};

/// Groups time-ordered touch events into down...up gesture runs. Orphan
/// move/up events and runs broken by gaps or a second `down` become
/// incomplete gestures (kept, flagged, excluded from features downstream).
/// Kind is left at Stroke; call classify_gesture (or segment_and_classify).
std::vector<Gesture> segment_gestures(std::span<const TouchEvent> events,
                                      std::int64_t gap_ms = 1000);

double trajectory_length(std::span<const TouchEvent> points);

/// Tap iff trajectory < tap_move_px and duration < tap_max_ms.
/// Deterministic and threshold-monotone.
GestureKind classify_gesture(const Gesture& g, const SegmentationParams& params = {});

/// segment_gestures + classify_gesture over complete gestures.
std::vector<Gesture> segment_and_classify(std::span<const TouchEvent> events,
                                          const SegmentationParams& params = {});

struct WindowingResult {
  std::vector<SensorWindow> windows;
  std::size_t dropped_sparse = 0;  // windows with < min_samples in some sensor
};

/// Slices the session's sensor streams into consecutive non-overlapping
/// windows of exactly n_seconds, starting at the earliest sample. The
/// trailing partial window is dropped. Throws EmptyStream when the session
/// has no sensor data.
WindowingResult segment_windows(const Session& session, double n_seconds,
                                std::size_t min_samples = 3);

/// Sensor window covering the gesture's duration. If any sensor has fewer
/// than min_samples in that span, the window expands symmetrically around
/// the gesture midpoint until every sensor reaches min_samples or the
/// session's recording bounds are exhausted (then flagged sparse). The
/// returned interval always contains [g.t_start, g.t_end].
SensorWindow gesture_window(const Session& session, const Gesture& g,
                            std::size_t min_samples = 3);

}  // namespace agekit
