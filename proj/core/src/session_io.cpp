#include "agekit/session_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "agekit/errors.hpp"

namespace agekit {

namespace {

using json = nlohmann::json;

bool is_blank(const std::string& line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

json parse_line(const std::string& line, std::size_t line_no) {
  json rec = json::parse(line, nullptr, false);
  if (rec.is_discarded() || !rec.is_object())
    throw ParseError(line_no, "not a JSON object");
  return rec;
}

double require_number(const json& rec, const char* key, std::size_t line_no) {
  auto it = rec.find(key);
  if (it == rec.end() || !it->is_number())
    throw ParseError(line_no, std::string("missing or non-numeric field '") + key + "'");
  double v = it->get<double>();
  if (!std::isfinite(v))
    throw ParseError(line_no, std::string("non-finite field '") + key + "'");
  return v;
}

std::int64_t require_timestamp(const json& rec, std::size_t line_no) {
  auto it = rec.find("t");
  if (it == rec.end() || !it->is_number_integer())
    throw ParseError(line_no, "missing or non-integer field 't'");
  return it->get<std::int64_t>();
}

std::string require_string(const json& rec, const char* key, std::size_t line_no) {
  auto it = rec.find(key);
  if (it == rec.end() || !it->is_string())
    throw ParseError(line_no, std::string("missing or non-string field '") + key + "'");
  return it->get<std::string>();
}

// Shortest representation that round-trips the exact double value.
void append_double(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

}  // namespace

ParsedTouchLog parse_touch_log(std::istream& in, const ParseOptions& opts) {
  ParsedTouchLog result;
  std::string line;
  std::size_t line_no = 0;
  std::int64_t last_t = 0;
  bool have_last = false;
  while (std::getline(in, line)) {
    ++line_no;
    ++result.stats.lines;
    if (is_blank(line)) {
      ++result.stats.skipped;
      continue;
    }
    json rec = parse_line(line, line_no);

    TouchEvent ev;
    ev.t = require_timestamp(rec, line_no);
    const std::string phase = require_string(rec, "phase", line_no);
    if (phase == "down") ev.phase = TouchPhase::Down;
    else if (phase == "move") ev.phase = TouchPhase::Move;
    else if (phase == "up") ev.phase = TouchPhase::Up;
    else throw ParseError(line_no, "unknown phase '" + phase + "'");
    ev.x = require_number(rec, "x", line_no);
    ev.y = require_number(rec, "y", line_no);
    ev.pressure = require_number(rec, "pressure", line_no);
    ev.size = require_number(rec, "size", line_no);
    if (ev.x < 0.0 || ev.y < 0.0)
      throw ParseError(line_no, "negative coordinate");
    if (ev.pressure < 0.0 || ev.pressure > 1.0)
      throw ParseError(line_no, "pressure outside [0,1]");
    if (ev.size < 0.0 || ev.size > 1.0)
      throw ParseError(line_no, "size outside [0,1]");
    if (auto it = rec.find("app_id"); it != rec.end()) {
      if (!it->is_string()) throw ParseError(line_no, "app_id must be a string");
      ev.app_id = it->get<std::string>();
    }

    if (have_last && ev.t + opts.order_tolerance_ms < last_t)
      throw OrderError("touch log timestamp decreases at line " +
                       std::to_string(line_no));
    last_t = std::max(have_last ? last_t : ev.t, ev.t);
    have_last = true;

    result.events.push_back(std::move(ev));
    ++result.stats.parsed;
  }
  return result;
}

ParsedSensorLog parse_sensor_log(std::istream& in, const ParseOptions& opts) {
  ParsedSensorLog result;
  std::string line;
  std::size_t line_no = 0;
  std::array<std::int64_t, kSensorCount> last_t{};
  std::array<bool, kSensorCount> have_last{};
  while (std::getline(in, line)) {
    ++line_no;
    ++result.stats.lines;
    if (is_blank(line)) {
      ++result.stats.skipped;
      continue;
    }
    json rec = parse_line(line, line_no);

    const std::string name = require_string(rec, "sensor", line_no);
    auto kind = sensor_from_name(name);
    if (!kind) {
      // The logs may carry more sensors than the four motion sensors we use
      // (magnetometer, gravity, orientation, ...). Count and move on.
      ++result.stats.skipped;
      continue;
    }
    SensorSample s;
    s.t = require_timestamp(rec, line_no);
    s.x = require_number(rec, "x", line_no);
    s.y = require_number(rec, "y", line_no);
    s.z = require_number(rec, "z", line_no);

    const int idx = static_cast<int>(*kind);
    if (have_last[idx] && s.t + opts.order_tolerance_ms < last_t[idx])
      throw OrderError(std::string(sensor_name(*kind)) +
                       " stream timestamp decreases at line " +
                       std::to_string(line_no));
    last_t[idx] = std::max(have_last[idx] ? last_t[idx] : s.t, s.t);
    have_last[idx] = true;

    result.streams[idx].push_back(s);
    ++result.stats.parsed;
  }
  return result;
}

void serialize_touch_log(const std::vector<TouchEvent>& events, std::ostream& out) {
  std::string line;
  for (const auto& ev : events) {
    line.clear();
    line += "{\"t\":";
    line += std::to_string(ev.t);
    line += ",\"phase\":\"";
    line += ev.phase == TouchPhase::Down ? "down"
          : ev.phase == TouchPhase::Move ? "move" : "up";
    line += "\",\"x\":";
    append_double(line, ev.x);
    line += ",\"y\":";
    append_double(line, ev.y);
    line += ",\"pressure\":";
    append_double(line, ev.pressure);
    line += ",\"size\":";
    append_double(line, ev.size);
    if (ev.app_id) {
      line += ",\"app_id\":";
      line += json(*ev.app_id).dump();
    }
    line += "}\n";
    out << line;
  }
}

void serialize_sensor_log(const SensorStreams& streams, std::ostream& out) {
  // Merge the four streams by timestamp so the file reads chronologically;
  // ties resolve in sensor-index order, making output canonical.
  std::array<std::size_t, kSensorCount> pos{};
  std::string line;
  for (;;) {
    int best = -1;
    for (int s = 0; s < kSensorCount; ++s) {
      if (pos[s] >= streams[s].size()) continue;
      if (best < 0 || streams[s][pos[s]].t < streams[best][pos[best]].t)
        best = s;
    }
    if (best < 0) break;
    const SensorSample& smp = streams[best][pos[best]++];
    line.clear();
    line += "{\"t\":";
    line += std::to_string(smp.t);
    line += ",\"sensor\":\"";
    line += sensor_name(static_cast<SensorKind>(best));
    line += "\",\"x\":";
    append_double(line, smp.x);
    line += ",\"y\":";
    append_double(line, smp.y);
    line += ",\"z\":";
    append_double(line, smp.z);
    line += "}\n";
    out << line;
  }
}

Session filter_session(Session session, const FilterPolicy& policy) {
  if (policy.excluded_app_ids.empty() || session.touch_events.empty())
    return session;
  auto excluded = [&](const TouchEvent& ev) {
    return ev.app_id && policy.excluded_app_ids.count(*ev.app_id) > 0;
  };
  auto& events = session.touch_events;
  std::size_t first = 0;
  while (first < events.size() && excluded(events[first])) ++first;
  std::size_t last = events.size();
  while (last > first && excluded(events[last - 1])) --last;
  if (first > 0 || last < events.size())
    events = std::vector<TouchEvent>(events.begin() + first, events.begin() + last);
  return session;
}

std::vector<SessionManifest> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest: " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw Error("manifest is not valid JSON: " + path.string());
  json entries = doc.is_array() ? doc : json::array({doc});

  std::vector<SessionManifest> result;
  for (const auto& e : entries) {
    if (!e.is_object()) throw Error("manifest entry is not an object");
    SessionManifest m;
    m.id = e.at("id").get<std::string>();
    auto label = label_from_name(e.at("label").get<std::string>());
    if (!label) throw Error("manifest entry '" + m.id + "': unknown label");
    m.label = *label;
    auto group = age_group_from_name(e.value("age_group", std::string("unknown")));
    if (!group) throw Error("manifest entry '" + m.id + "': unknown age_group");
    m.age_group = *group;
    // When the age group is known it must agree with the label.
    if (m.age_group != AgeGroup::Unknown) {
      const bool child_group = m.age_group == AgeGroup::YoungChild ||
                               m.age_group == AgeGroup::OlderChild;
      if (child_group != (m.label == Label::Child))
        throw Error("manifest entry '" + m.id +
                    "': label and age_group disagree");
    }
    m.touch_path = e.at("touch").get<std::string>();
    m.sensors_path = e.at("sensors").get<std::string>();
    result.push_back(std::move(m));
  }
  return result;
}

void save_manifest(const std::vector<SessionManifest>& entries,
                   const std::filesystem::path& path) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& m : entries) {
    nlohmann::ordered_json e;
    e["id"] = m.id;
    e["label"] = label_name(m.label);
    e["age_group"] = age_group_name(m.age_group);
    e["touch"] = m.touch_path;
    e["sensors"] = m.sensors_path;
    arr.push_back(std::move(e));
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write manifest: " + path.string());
  out << arr.dump(2) << "\n";
}

Session load_session(const SessionManifest& entry,
                     const std::filesystem::path& base_dir,
                     const ParseOptions& opts,
                     ParseStats* touch_stats,
                     ParseStats* sensor_stats) {
  Session s;
  s.id = entry.id;
  s.label = entry.label;
  s.age_group = entry.age_group;

  std::ifstream touch_in(base_dir / entry.touch_path);
  if (!touch_in)
    throw Error("cannot open touch log: " + (base_dir / entry.touch_path).string());
  auto touch = parse_touch_log(touch_in, opts);
  s.touch_events = std::move(touch.events);
  if (touch_stats) *touch_stats = touch.stats;

  std::ifstream sensor_in(base_dir / entry.sensors_path);
  if (!sensor_in)
    throw Error("cannot open sensor log: " + (base_dir / entry.sensors_path).string());
  auto sensors = parse_sensor_log(sensor_in, opts);
  s.sensors = std::move(sensors.streams);
  if (sensor_stats) *sensor_stats = sensors.stats;
  return s;
}

std::vector<Session> load_sessions(const std::filesystem::path& manifest_path,
                                   const ParseOptions& opts) {
  const auto base = manifest_path.parent_path();
  std::vector<Session> sessions;
  for (const auto& entry : load_manifest(manifest_path))
    sessions.push_back(load_session(entry, base, opts));
  return sessions;
}

}  // namespace agekit
