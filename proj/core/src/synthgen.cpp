#include "agekit/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "agekit/errors.hpp"
#include "agekit/parallel.hpp"

namespace agekit {

namespace {

constexpr double kScreenW = 1080.0;
constexpr double kScreenH = 1920.0;
constexpr double kMargin = 30.0;
constexpr double kPi = 3.14159265358979323846;

double clamp(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

struct Point {
  double x, y;
};

Point bezier(const Point& p0, const Point& ctrl, const Point& p2, double u) {
  const double a = (1.0 - u) * (1.0 - u);
  const double b = 2.0 * u * (1.0 - u);
  const double c = u * u;
  return {a * p0.x + b * ctrl.x + c * p2.x, a * p0.y + b * ctrl.y + c * p2.y};
}

void generate_stroke(const BehaviorProfile& profile, std::int64_t t0,
                     double max_duration_ms, Rng& rng,
                     std::vector<TouchEvent>& out) {
  const double chord = clamp(rng.normal(profile.stroke_length_px.mean,
                                        profile.stroke_length_px.std), 40.0, 600.0);
  const double theta = rng.uniform(0.0, 2.0 * kPi);
  const double curviness =
      clamp(rng.normal(profile.curviness.mean, profile.curviness.std), 0.0, 0.45);
  double speed = clamp(rng.normal(profile.stroke_speed_px_ms.mean,
                                  profile.stroke_speed_px_ms.std), 0.15, 4.0);

  const double dx = chord * std::cos(theta);
  const double dy = chord * std::sin(theta);
  const double x_lo = kMargin + std::max(0.0, -dx);
  const double x_hi = kScreenW - kMargin - std::max(0.0, dx);
  const double y_lo = kMargin + std::max(0.0, -dy);
  const double y_hi = kScreenH - kMargin - std::max(0.0, dy);
  const Point p0{rng.uniform(x_lo, x_hi), rng.uniform(y_lo, y_hi)};
  const Point p2{p0.x + dx, p0.y + dy};
  // Control point perpendicular to the chord; a quadratic arc peaks at half
  // the control offset, so offset 2*c*chord gives deviation ratio c.
  const double side = rng.bernoulli(0.5) ? 1.0 : -1.0;
  const Point ctrl{0.5 * (p0.x + p2.x) - side * 2.0 * curviness * chord * std::sin(theta),
                   0.5 * (p0.y + p2.y) + side * 2.0 * curviness * chord * std::cos(theta)};

  double arc = 0.0;
  Point prev = p0;
  for (int i = 1; i <= 200; ++i) {
    const Point p = bezier(p0, ctrl, p2, i / 200.0);
    arc += std::hypot(p.x - prev.x, p.y - prev.y);
    prev = p;
  }

  speed = std::max(speed, arc / std::max(1.0, 0.7 * max_duration_ms));
  const double duration = arc / speed;
  const int n_pts = std::max(3, static_cast<int>(std::lround(duration / 10.0)) + 1);

  const double base_pressure =
      clamp(rng.normal(profile.touch_pressure.mean, profile.touch_pressure.std), 0.02, 0.98);
  const double base_size =
      clamp(rng.normal(profile.touch_size.mean, profile.touch_size.std), 0.02, 0.98);

  for (int j = 0; j < n_pts; ++j) {
    const double u = static_cast<double>(j) / (n_pts - 1);
    const Point p = bezier(p0, ctrl, p2, u);
    TouchEvent ev;
    ev.t = t0 + std::llround(u * duration);
    ev.phase = j == 0 ? TouchPhase::Down
             : j == n_pts - 1 ? TouchPhase::Up : TouchPhase::Move;
    ev.x = std::max(0.0, p.x);
    ev.y = std::max(0.0, p.y);
    ev.pressure = clamp(base_pressure + rng.normal(0.0, 0.005), 0.0, 1.0);
    ev.size = clamp(base_size + rng.normal(0.0, 0.005), 0.0, 1.0);
    out.push_back(ev);
  }
}

void generate_tap(const BehaviorProfile& profile, std::int64_t t0,
                  double max_duration_ms, Rng& rng, std::vector<TouchEvent>& out) {
  const double duration =
      clamp(rng.normal(profile.tap_duration_ms.mean, profile.tap_duration_ms.std),
            16.0, std::min(280.0, 0.6 * max_duration_ms));
  const double base_pressure =
      clamp(rng.normal(profile.touch_pressure.mean, profile.touch_pressure.std), 0.02, 0.98);
  const double base_size =
      clamp(rng.normal(profile.touch_size.mean, profile.touch_size.std), 0.02, 0.98);
  const Point at{rng.uniform(kMargin, kScreenW - kMargin),
                 rng.uniform(kMargin, kScreenH - kMargin)};

  const int n_moves = duration >= 60.0 ? 2 : duration >= 30.0 ? 1 : 0;
  const int n_pts = 2 + n_moves;
  for (int j = 0; j < n_pts; ++j) {
    const double u = static_cast<double>(j) / (n_pts - 1);
    TouchEvent ev;
    ev.t = t0 + std::llround(u * duration);
    ev.phase = j == 0 ? TouchPhase::Down
             : j == n_pts - 1 ? TouchPhase::Up : TouchPhase::Move;
    ev.x = std::max(0.0, at.x + rng.normal(0.0, 0.4));
    ev.y = std::max(0.0, at.y + rng.normal(0.0, 0.4));
    ev.pressure = clamp(base_pressure + rng.normal(0.0, 0.005), 0.0, 1.0);
    ev.size = clamp(base_size + rng.normal(0.0, 0.005), 0.0, 1.0);
    out.push_back(ev);
  }
}

}  // namespace

BehaviorProfile default_child_profile() {
  BehaviorProfile p;
  p.stroke_length_px = {195.0, 65.0};
  p.stroke_speed_px_ms = {0.98, 0.33};
  p.curviness = {0.065, 0.032};
  p.touch_size = {0.235, 0.05};
  p.touch_pressure = {0.415, 0.08};
  p.tap_duration_ms = {105.0, 32.0};
  p.tremor_std = {0.16, 0.07, 0.15, 0.035};
  p.burst_amplitude = {1.6, 0.8, 1.5, 0.35};
  p.movement_rate_per_min = 10.0;
  p.tap_fraction = 0.4;
  return p;
}

BehaviorProfile default_adult_profile() {
  BehaviorProfile p;
  p.stroke_length_px = {255.0, 80.0};
  p.stroke_speed_px_ms = {0.84, 0.30};
  p.curviness = {0.095, 0.042};
  p.touch_size = {0.275, 0.05};
  p.touch_pressure = {0.455, 0.08};
  p.tap_duration_ms = {130.0, 38.0};
  p.tremor_std = {0.10, 0.045, 0.095, 0.022};
  p.burst_amplitude = {0.9, 0.45, 0.85, 0.20};
  p.movement_rate_per_min = 3.0;
  p.tap_fraction = 0.4;
  return p;
}

void validate_profile(const BehaviorProfile& profile) {
  auto check_dist = [](const Dist& d, const char* name) {
    if (d.std < 0.0 || !std::isfinite(d.mean) || !std::isfinite(d.std))
      throw InvalidProfile(std::string("bad distribution for ") + name);
  };
  check_dist(profile.stroke_length_px, "stroke_length_px");
  check_dist(profile.stroke_speed_px_ms, "stroke_speed_px_ms");
  check_dist(profile.curviness, "curviness");
  check_dist(profile.touch_size, "touch_size");
  check_dist(profile.touch_pressure, "touch_pressure");
  check_dist(profile.tap_duration_ms, "tap_duration_ms");
  if (profile.touch_size.mean < 0.0 || profile.touch_size.mean > 1.0)
    throw InvalidProfile("touch_size mean outside [0,1]");
  if (profile.touch_pressure.mean < 0.0 || profile.touch_pressure.mean > 1.0)
    throw InvalidProfile("touch_pressure mean outside [0,1]");
  for (double s : profile.tremor_std)
    if (s < 0.0) throw InvalidProfile("negative tremor_std");
  for (double a : profile.burst_amplitude)
    if (a < 0.0) throw InvalidProfile("negative burst_amplitude");
  if (profile.movement_rate_per_min < 0.0)
    throw InvalidProfile("negative movement_rate_per_min");
  if (profile.tap_fraction < 0.0 || profile.tap_fraction > 1.0)
    throw InvalidProfile("tap_fraction outside [0,1]");
  if (profile.sample_rate_hz <= 0.0)
    throw InvalidProfile("sample_rate_hz must be positive");
}

Session generate_session(const BehaviorProfile& profile, double duration_s,
                         int n_gestures, Rng& rng) {
  validate_profile(profile);
  if (duration_s <= 0.0 || n_gestures < 1)
    throw InvalidProfile("session needs positive duration and gesture count");

  Session session;
  const double duration_ms = duration_s * 1000.0;

  // Touch: one gesture per slot, jittered inside it; slots never overlap so
  // the event stream stays chronological.
  const double slot = duration_ms / n_gestures;
  for (int i = 0; i < n_gestures; ++i) {
    const auto t0 = static_cast<std::int64_t>(
        std::llround(i * slot + rng.uniform(0.05, 0.25) * slot));
    if (rng.bernoulli(profile.tap_fraction)) {
      generate_tap(profile, t0, slot, rng, session.touch_events);
    } else {
      generate_stroke(profile, t0, slot, rng, session.touch_events);
    }
  }

  // Sensors: baseline + white tremor at the profile's sample rate. acc keeps
  // a gravity-like constant on z; the derived sensors do not.
  const double dt = 1000.0 / profile.sample_rate_hz;
  const auto n_samples = static_cast<std::size_t>(duration_ms / dt) + 1;
  for (int s = 0; s < kSensorCount; ++s) {
    const double base_z = s == static_cast<int>(SensorKind::Acc) ? 9.81 : 0.0;
    auto& stream = session.sensors[s];
    stream.resize(n_samples);
    const double sigma = profile.tremor_std[s];
    for (std::size_t i = 0; i < n_samples; ++i) {
      SensorSample& smp = stream[i];
      smp.t = static_cast<std::int64_t>(std::llround(i * dt));
      smp.x = sigma > 0.0 ? rng.normal(0.0, sigma) : 0.0;
      smp.y = sigma > 0.0 ? rng.normal(0.0, sigma) : 0.0;
      smp.z = base_z + (sigma > 0.0 ? rng.normal(0.0, sigma) : 0.0);
    }
  }

  // Movement bursts: ~1 s enveloped oscillations at Poisson times, one
  // shared direction per burst, per-sensor amplitude from the profile.
  if (profile.movement_rate_per_min > 0.0) {
    const double rate_per_ms = profile.movement_rate_per_min / 60000.0;
    double at = rng.exponential(rate_per_ms);
    while (at < duration_ms) {
      const double burst_dur = rng.uniform(800.0, 1200.0);
      const double freq_hz = rng.uniform(3.0, 6.0);
      const double phase = rng.uniform(0.0, 2.0 * kPi);
      double nx = rng.normal(), ny = rng.normal(), nz = rng.normal();
      const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
      if (norm > 0.0) { nx /= norm; ny /= norm; nz /= norm; }

      const auto from = static_cast<std::size_t>(std::max(0.0, std::ceil(at / dt)));
      const auto to = std::min(n_samples, static_cast<std::size_t>(
                                   std::ceil((at + burst_dur) / dt)));
      for (int s = 0; s < kSensorCount; ++s) {
        const double amp = profile.burst_amplitude[s];
        if (amp == 0.0) continue;
        auto& stream = session.sensors[s];
        for (std::size_t i = from; i < to; ++i) {
          const double rel = (i * dt - at) / burst_dur;
          const double wave = amp * std::sin(kPi * rel) *
              std::sin(2.0 * kPi * freq_hz * (i * dt - at) / 1000.0 + phase);
          stream[i].x += wave * nx;
          stream[i].y += wave * ny;
          stream[i].z += wave * nz;
        }
      }
      at += rng.exponential(rate_per_ms);
    }
  }
  return session;
}

std::vector<Session> generate_dataset(const GenConfig& config, unsigned threads) {
  if (config.sessions_per_class < 1 || config.gestures_per_session < 1)
    throw InvalidProfile("counts must be >= 1");
  validate_profile(config.child);
  validate_profile(config.adult);

  const int per_class = config.sessions_per_class;
  // Mirror the study's rough 19/6 young/older split.
  const int older_from = per_class - std::max(1, (per_class * 6 + 12) / 25);

  std::vector<Session> sessions(static_cast<std::size_t>(2 * per_class));
  parallel_for(sessions.size(), threads, [&](std::size_t i) {
    const bool is_child = i < static_cast<std::size_t>(per_class);
    Rng rng = Rng::substream(config.seed, static_cast<std::uint64_t>(i));
    Session s = generate_session(is_child ? config.child : config.adult,
                                 config.session_duration_s,
                                 config.gestures_per_session, rng);
    const int class_index = static_cast<int>(is_child ? i : i - per_class);
    char id[32];
    std::snprintf(id, sizeof(id), "%s_%02d", is_child ? "child" : "adult",
                  class_index);
    s.id = id;
    s.label = is_child ? Label::Child : Label::Adult;
    s.age_group = !is_child ? AgeGroup::Adult
                : class_index >= older_from ? AgeGroup::OlderChild
                                            : AgeGroup::YoungChild;
    sessions[i] = std::move(s);
  });
  return sessions;
}

std::vector<SessionManifest> write_dataset(const std::vector<Session>& sessions,
                                           const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<SessionManifest> manifest;
  for (const auto& s : sessions) {
    SessionManifest m;
    m.id = s.id;
    m.label = s.label;
    m.age_group = s.age_group;
    m.touch_path = s.id + "_touch.jsonl";
    m.sensors_path = s.id + "_sensors.jsonl";
    {
      std::ofstream out(out_dir / m.touch_path);
      if (!out) throw Error("cannot write " + (out_dir / m.touch_path).string());
      serialize_touch_log(s.touch_events, out);
    }
    {
      std::ofstream out(out_dir / m.sensors_path);
      if (!out) throw Error("cannot write " + (out_dir / m.sensors_path).string());
      serialize_sensor_log(s.sensors, out);
    }
    manifest.push_back(std::move(m));
  }
  save_manifest(manifest, out_dir / "manifest.json");
  return manifest;
}

namespace {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

ojson dist_to_json(const Dist& d) {
  return ojson{{"mean", d.mean}, {"std", d.std}};
}

Dist dist_from_json(const json& j) {
  return {j.at("mean").get<double>(), j.at("std").get<double>()};
}

ojson profile_to_json(const BehaviorProfile& p) {
  ojson j;
  j["stroke_length_px"] = dist_to_json(p.stroke_length_px);
  j["stroke_speed_px_ms"] = dist_to_json(p.stroke_speed_px_ms);
  j["curviness"] = dist_to_json(p.curviness);
  j["touch_size"] = dist_to_json(p.touch_size);
  j["touch_pressure"] = dist_to_json(p.touch_pressure);
  j["tap_duration_ms"] = dist_to_json(p.tap_duration_ms);
  j["tremor_std"] = p.tremor_std;
  j["burst_amplitude"] = p.burst_amplitude;
  j["movement_rate_per_min"] = p.movement_rate_per_min;
  j["tap_fraction"] = p.tap_fraction;
  j["sample_rate_hz"] = p.sample_rate_hz;
  return j;
}

BehaviorProfile profile_from_json(const json& j) {
  BehaviorProfile p;
  if (j.contains("stroke_length_px")) p.stroke_length_px = dist_from_json(j["stroke_length_px"]);
  if (j.contains("stroke_speed_px_ms")) p.stroke_speed_px_ms = dist_from_json(j["stroke_speed_px_ms"]);
  if (j.contains("curviness")) p.curviness = dist_from_json(j["curviness"]);
  if (j.contains("touch_size")) p.touch_size = dist_from_json(j["touch_size"]);
  if (j.contains("touch_pressure")) p.touch_pressure = dist_from_json(j["touch_pressure"]);
  if (j.contains("tap_duration_ms")) p.tap_duration_ms = dist_from_json(j["tap_duration_ms"]);
  if (j.contains("tremor_std")) p.tremor_std = j["tremor_std"].get<std::array<double, kSensorCount>>();
  if (j.contains("burst_amplitude")) p.burst_amplitude = j["burst_amplitude"].get<std::array<double, kSensorCount>>();
  p.movement_rate_per_min = j.value("movement_rate_per_min", p.movement_rate_per_min);
  p.tap_fraction = j.value("tap_fraction", p.tap_fraction);
  p.sample_rate_hz = j.value("sample_rate_hz", p.sample_rate_hz);
  return p;
}

}  // namespace

std::string gen_config_to_json(const GenConfig& config) {
  ojson j;
  j["child"] = profile_to_json(config.child);
  j["adult"] = profile_to_json(config.adult);
  j["sessions_per_class"] = config.sessions_per_class;
  j["gestures_per_session"] = config.gestures_per_session;
  j["session_duration_s"] = config.session_duration_s;
  j["seed"] = config.seed;
  return j.dump(2);
}

GenConfig gen_config_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ConfigError("generator config is not a JSON object");
  GenConfig c;
  try {
    if (j.contains("child")) c.child = profile_from_json(j["child"]);
    if (j.contains("adult")) c.adult = profile_from_json(j["adult"]);
    c.sessions_per_class = j.value("sessions_per_class", c.sessions_per_class);
    c.gestures_per_session = j.value("gestures_per_session", c.gestures_per_session);
    c.session_duration_s = j.value("session_duration_s", c.session_duration_s);
    c.seed = j.value("seed", c.seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad generator config: ") + e.what());
  }
  return c;
}

GenConfig load_gen_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return gen_config_from_json(text);
}

}  // namespace agekit
