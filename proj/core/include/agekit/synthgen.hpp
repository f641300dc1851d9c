#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "agekit/rng.hpp"
#include "agekit/session_io.hpp"
#include "agekit/types.hpp"

namespace agekit {

struct Dist {
  double mean = 0.0;
  double std = 0.0;
};

/// Parameterized behavioral signature of one class. The defaults encode the
/// qualitative differences the generator models: children touch with smaller
/// area, swipe faster along shorter and straighter paths, and hold the
/// device less steadily (larger tremor, more frequent movement bursts).
struct BehaviorProfile {
  Dist stroke_length_px{220.0, 70.0};       // chord length
  Dist stroke_speed_px_ms{0.9, 0.3};        // average velocity target
  Dist curviness{0.08, 0.03};               // LDP deviation / chord ratio
  Dist touch_size{0.25, 0.05};
  Dist touch_pressure{0.45, 0.08};
  Dist tap_duration_ms{120.0, 35.0};
  std::array<double, kSensorCount> tremor_std{0.10, 0.05, 0.10, 0.02};
  std::array<double, kSensorCount> burst_amplitude{0.9, 0.45, 0.85, 0.20};
  double movement_rate_per_min = 5.0;       // Poisson-timed ~1 s motion bursts
  double tap_fraction = 0.4;                // gesture mix
  double sample_rate_hz = 100.0;
};

BehaviorProfile default_child_profile();
BehaviorProfile default_adult_profile();

/// Throws InvalidProfile when stds are negative, normalized means leave
/// [0,1], or rates are out of range.
void validate_profile(const BehaviorProfile& profile);

struct GenConfig {
  BehaviorProfile child;
  BehaviorProfile adult;
  int sessions_per_class = 25;
  int gestures_per_session = 40;
  double session_duration_s = 60.0;
  std::uint64_t seed = 42;

  GenConfig() : child(default_child_profile()), adult(default_adult_profile()) {}
};

/// One synthetic session: strokes as quadratic arcs with profile-drawn
/// chord, speed, deviation ratio and per-event size/pressure; taps with
/// profile-drawn duration; 100 Hz (profile-configurable) sensor streams as
/// baseline + Gaussian tremor + Poisson-timed motion bursts. The acc stream
/// carries a gravity-like constant on z; lacc/rot/gyro do not.
/// Label/id/age metadata is left for the caller.
Session generate_session(const BehaviorProfile& profile, double duration_s,
                         int n_gestures, Rng& rng);

/// Deterministic given the seed; per-session rng substreams keyed by
/// (seed, session index) make generation schedule-independent.
std::vector<Session> generate_dataset(const GenConfig& config,
                                      unsigned threads = 1);

/// Writes manifest.json plus per-session JSONL logs into out_dir, in the
/// session_data file formats. Byte-identical for identical config + seed.
std::vector<SessionManifest> write_dataset(const std::vector<Session>& sessions,
                                           const std::filesystem::path& out_dir);

std::string gen_config_to_json(const GenConfig& config);
GenConfig gen_config_from_json(const std::string& text);
GenConfig load_gen_config(const std::filesystem::path& path);

}  // namespace agekit
