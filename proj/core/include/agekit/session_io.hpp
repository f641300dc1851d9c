#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "agekit/types.hpp"

namespace agekit {

struct ParseOptions {
  /// Timestamps may decrease by at most this many ms before OrderError.
  /// Equal timestamps are always allowed (100 Hz clocks collide).
  std::int64_t order_tolerance_ms = 0;
};

struct ParseStats {
  std::size_t lines = 0;    // total input lines
  std::size_t parsed = 0;   // lines yielding a record
  std::size_t skipped = 0;  // blank lines and unknown-sensor records
};

struct ParsedTouchLog {
  std::vector<TouchEvent> events;
  ParseStats stats;
};

struct ParsedSensorLog {
  SensorStreams streams;
  ParseStats stats;
};

/// Parses touch-log JSONL:
///   {"t":<int ms>,"phase":"down|move|up","x":<num>,"y":<num>,
///    "pressure":<num>,"size":<num>,"app_id":<string, optional>}
/// Throws ParseError on malformed records or invariant violations
/// (pressure/size outside [0,1], negative coordinates), OrderError on
/// timestamp decreases beyond the tolerance.
ParsedTouchLog parse_touch_log(std::istream& in, const ParseOptions& opts = {});

/// Parses sensor-log JSONL:
///   {"t":<int ms>,"sensor":"acc|gyro|lacc|rot","x":<num>,"y":<num>,"z":<num>}
/// Records for sensors outside the four motion sensors are skipped and
/// counted. Ordering is enforced per sensor stream.
ParsedSensorLog parse_sensor_log(std::istream& in, const ParseOptions& opts = {});

/// Canonical JSONL serialization; parse(serialize(parse(x))) round-trips
/// valid logs bit-identically (doubles use shortest round-trip form).
void serialize_touch_log(const std::vector<TouchEvent>& events, std::ostream& out);
void serialize_sensor_log(const SensorStreams& streams, std::ostream& out);

struct FilterPolicy {
  /// Head/tail touch events whose app_id is in this set are removed
  /// (experimenter data). Events without app_id are always kept.
  std::set<std::string> excluded_app_ids;
};

/// Strips leading and trailing runs of excluded-app events. Sensor streams
/// are left untouched. Coordinates stay in the raw events; they never reach
/// feature vectors (feature extraction emits no x/y feature).
Session filter_session(Session session, const FilterPolicy& policy);

/// One entry of a dataset manifest:
///   {"id":..., "label":"child|adult",
///    "age_group":"young_child|older_child|adult|unknown",
///    "touch":"<path>", "sensors":"<path>"}
struct SessionManifest {
  std::string id;
  Label label = Label::Adult;
  AgeGroup age_group = AgeGroup::Unknown;
  std::string touch_path;
  std::string sensors_path;
};

/// Reads a manifest file: a JSON array of session entries (a single object
/// is accepted as a one-session dataset). Paths are resolved relative to the
/// manifest's directory.
std::vector<SessionManifest> load_manifest(const std::filesystem::path& path);
void save_manifest(const std::vector<SessionManifest>& entries,
                   const std::filesystem::path& path);

/// Loads and validates one session from its manifest entry.
Session load_session(const SessionManifest& entry,
                     const std::filesystem::path& base_dir,
                     const ParseOptions& opts = {},
                     ParseStats* touch_stats = nullptr,
                     ParseStats* sensor_stats = nullptr);

std::vector<Session> load_sessions(const std::filesystem::path& manifest_path,
                                   const ParseOptions& opts = {});

}  // namespace agekit
