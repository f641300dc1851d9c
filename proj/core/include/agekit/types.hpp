#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace agekit {

enum class TouchPhase { Down, Move, Up };

/// One raw touchscreen event. Timestamps are milliseconds UTC.
/// pressure and size are Android-style normalized values in [0,1].
struct TouchEvent {
  std::int64_t t = 0;
  TouchPhase phase = TouchPhase::Down;
  double x = 0.0;
  double y = 0.0;
  double pressure = 0.0;
  double size = 0.0;
  std::optional<std::string> app_id;  // absent means "keep" during filtering
};

/// The four motion sensors used for feature extraction.
/// lacc = linear acceleration (gravity removed), rot = rotation vector.
enum class SensorKind : int { Acc = 0, Gyro = 1, Lacc = 2, Rot = 3 };
inline constexpr int kSensorCount = 4;

const char* sensor_name(SensorKind s);
std::optional<SensorKind> sensor_from_name(const std::string& name);

struct SensorSample {
  std::int64_t t = 0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline double magnitude(const SensorSample& s) {
  return std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z);
}

/// Per-sensor time-ordered sample lists, indexed by SensorKind.
using SensorStreams = std::array<std::vector<SensorSample>, kSensorCount>;

enum class Label { Child, Adult };
enum class AgeGroup { YoungChild, OlderChild, Adult, Unknown };

const char* label_name(Label l);
std::optional<Label> label_from_name(const std::string& name);
const char* age_group_name(AgeGroup g);
std::optional<AgeGroup> age_group_from_name(const std::string& name);

/// One recorded (or generated) usage session. Immutable after construction;
/// safe to share across threads.
struct Session {
  std::string id;
  Label label = Label::Adult;
  AgeGroup age_group = AgeGroup::Unknown;
  std::vector<TouchEvent> touch_events;
  SensorStreams sensors;

  std::size_t sensor_sample_count() const {
    std::size_t n = 0;
    for (const auto& s : sensors) n += s.size();
    return n;
  }
};

enum class GestureKind { Tap, Stroke };

/// A down...up run of touch events. Incomplete gestures (missing up, orphan
/// moves, intra-gesture gap timeouts) are kept but excluded from features.
struct Gesture {
  GestureKind kind = GestureKind::Stroke;
  std::vector<TouchEvent> points;
  std::int64_t t_start = 0;
  std::int64_t t_end = 0;
  bool complete = true;
};

/// A slice of a session's sensor streams covering [t_start, t_end).
struct SensorWindow {
  std::int64_t t_start = 0;
  std::int64_t t_end = 0;
  SensorStreams samples;
  bool sparse = false;  // expansion hit session bounds before min_samples
};

enum class ObservationKind { Tap, Stroke, Sensor, TapSensor, StrokeSensor };

const char* observation_kind_name(ObservationKind k);
std::optional<ObservationKind> observation_kind_from_name(const std::string& name);

}  // namespace agekit
