#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "agekit/errors.hpp"
#include "agekit/evaluate.hpp"
#include "agekit/segmentation.hpp"
#include "agekit/sensor_features.hpp"
#include "agekit/synthgen.hpp"
#include "agekit/touch_features.hpp"
#include "oracles.hpp"

using namespace agekit;
namespace fs = std::filesystem;

namespace {

std::string serialize_session(const Session& s) {
  std::ostringstream touch, sensors;
  serialize_touch_log(s.touch_events, touch);
  serialize_sensor_log(s.sensors, sensors);
  return touch.str() + "\x01" + sensors.str();
}

}  // namespace

TEST_CASE("generated logs parse cleanly with zero skips") {
  GenConfig config;
  config.sessions_per_class = 2;
  config.gestures_per_session = 15;
  config.session_duration_s = 20.0;
  config.seed = 5;
  const auto sessions = generate_dataset(config);

  for (const auto& s : sessions) {
    std::ostringstream touch_out;
    serialize_touch_log(s.touch_events, touch_out);
    std::istringstream touch_in(touch_out.str());
    const auto touch = parse_touch_log(touch_in);
    CHECK(touch.stats.skipped == 0);
    CHECK(touch.events.size() == s.touch_events.size());

    std::ostringstream sensor_out;
    serialize_sensor_log(s.sensors, sensor_out);
    std::istringstream sensor_in(sensor_out.str());
    const auto sensors = parse_sensor_log(sensor_in);
    CHECK(sensors.stats.skipped == 0);
    CHECK(sensors.stats.parsed == s.sensor_sample_count());
  }
}

TEST_CASE("zero tremor and zero movement leave lacc/rot axes constant") {
  BehaviorProfile profile = default_child_profile();
  profile.tremor_std = {0, 0, 0, 0};
  profile.movement_rate_per_min = 0.0;
  Rng rng(1);
  const auto session = generate_session(profile, 10.0, 5, rng);

  Session wrapped = session;
  wrapped.id = "z";
  const auto windows = segment_windows(wrapped, 1.0);
  REQUIRE_FALSE(windows.windows.empty());
  const auto& names = sensor_feature_names();
  for (const auto& w : windows.windows) {
    const auto f = window_features(w);
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& n = names[i];
      const bool lacc_or_rot = n.rfind("lacc_", 0) == 0 || n.rfind("rot_", 0) == 0;
      if (lacc_or_rot && n.find("_std") != std::string::npos) CHECK(f[i] == 0.0);
    }
  }
}

TEST_CASE("zero curviness gives straight strokes") {
  BehaviorProfile profile = default_child_profile();
  profile.curviness = {0.0, 0.0};
  profile.tap_fraction = 0.0;
  Rng rng(2);
  const auto session = generate_session(profile, 30.0, 20, rng);
  const auto gestures = segment_and_classify(session.touch_events, {});
  std::size_t strokes = 0;
  for (const auto& g : gestures) {
    if (!g.complete || g.kind != GestureKind::Stroke) continue;
    ++strokes;
    const auto f = stroke_features(g);
    CHECK(f[0] >= 0.999);  // straight_to_trajectory ratio
  }
  CHECK(strokes == 20);
}

TEST_CASE("profile size gap of 7.5 sigma separates average_size cleanly") {
  BehaviorProfile child = default_child_profile();
  BehaviorProfile adult = default_adult_profile();
  child.touch_size = {0.15, 0.02};
  adult.touch_size = {0.30, 0.02};
  child.tap_fraction = 0.0;
  adult.tap_fraction = 0.0;

  auto collect = [](const BehaviorProfile& p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> sizes;
    // several sessions to pass 1000 strokes
    for (int s = 0; s < 13; ++s) {
      const auto session = generate_session(p, 60.0, 80, rng);
      for (const auto& g : segment_and_classify(session.touch_events, {})) {
        if (!g.complete || g.kind != GestureKind::Stroke) continue;
        sizes.push_back(stroke_features(g)[1]);  // average_size
      }
    }
    return sizes;
  };
  const auto child_sizes = collect(child, 100);
  const auto adult_sizes = collect(adult, 200);
  REQUIRE(child_sizes.size() >= 1000);
  REQUIRE(adult_sizes.size() >= 1000);

  const auto c = oracle::naive_axis_stats(child_sizes);
  const auto a = oracle::naive_axis_stats(adult_sizes);
  const double pooled = std::sqrt(0.5 * (c.var + a.var));
  CHECK((a.mean - c.mean) / pooled > 3.0);
}

TEST_CASE("empirical moments track the profile within 5% at n >= 1000") {
  BehaviorProfile profile = default_adult_profile();
  profile.tap_fraction = 0.5;
  Rng rng(3);
  std::vector<double> chords, speeds, sizes, pressures, tap_durations;
  for (int s = 0; s < 30; ++s) {
    const auto session = generate_session(profile, 60.0, 80, rng);
    for (const auto& g : segment_and_classify(session.touch_events, {})) {
      if (!g.complete) continue;
      if (g.kind == GestureKind::Stroke) {
        const auto f = stroke_features(g);
        chords.push_back(f[12]);     // straight_length
        speeds.push_back(f[5]);      // average_velocity
        sizes.push_back(f[1]);       // average_size
        pressures.push_back(f[8]);   // average_pressure
      } else {
        tap_durations.push_back(tap_features(g)[2]);
      }
    }
  }
  REQUIRE(chords.size() >= 1000);
  REQUIRE(tap_durations.size() >= 1000);

  auto rel = [](double got, double want) { return std::abs(got - want) / want; };
  CHECK(rel(oracle::naive_mean(chords), profile.stroke_length_px.mean) < 0.05);
  CHECK(rel(oracle::naive_axis_stats(chords).std, profile.stroke_length_px.std) < 0.05);
  CHECK(rel(oracle::naive_mean(speeds), profile.stroke_speed_px_ms.mean) < 0.05);
  CHECK(rel(oracle::naive_mean(sizes), profile.touch_size.mean) < 0.05);
  CHECK(rel(oracle::naive_mean(pressures), profile.touch_pressure.mean) < 0.05);
  CHECK(rel(oracle::naive_mean(tap_durations), profile.tap_duration_ms.mean) < 0.05);
}

TEST_CASE("determinism: same seed, byte-identical output, any thread count") {
  GenConfig config;
  config.sessions_per_class = 3;
  config.gestures_per_session = 10;
  config.session_duration_s = 10.0;
  config.seed = 77;

  const auto a = generate_dataset(config, 1);
  const auto b = generate_dataset(config, 2);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(serialize_session(a[i]) == serialize_session(b[i]));

  config.seed = 78;
  const auto c = generate_dataset(config, 1);
  CHECK(serialize_session(a[0]) != serialize_session(c[0]));
}

TEST_CASE("dataset scale: 25+25 sessions at 40 gestures each") {
  GenConfig config;  // ships with these defaults
  CHECK(config.sessions_per_class == 25);
  CHECK(config.gestures_per_session == 40);
  config.session_duration_s = 30.0;  // keep the test quick
  const auto sessions = generate_dataset(config, 2);
  REQUIRE(sessions.size() == 50);
  std::size_t gestures = 0;
  for (const auto& s : sessions) {
    const auto segmented = segment_and_classify(s.touch_events, {});
    for (const auto& g : segmented) gestures += g.complete;
  }
  CHECK(gestures >= 2000);

  std::size_t young = 0, older = 0, adult = 0;
  for (const auto& s : sessions) {
    if (s.age_group == AgeGroup::YoungChild) ++young;
    if (s.age_group == AgeGroup::OlderChild) ++older;
    if (s.age_group == AgeGroup::Adult) ++adult;
  }
  CHECK(young == 19);
  CHECK(older == 6);
  CHECK(adult == 25);
}

TEST_CASE("identical profiles are indistinguishable downstream") {
  GenConfig config;
  config.adult = config.child;  // same behavior for both classes
  config.sessions_per_class = 10;
  config.gestures_per_session = 20;
  config.session_duration_s = 25.0;
  config.seed = 31;
  const auto sessions = generate_dataset(config, 2);

  EvalConfig eval;
  eval.approach = Approach::TouchStroke;
  eval.classifier.n_estimators = 60;
  eval.k_list = {1};
  eval.folds = 5;
  eval.seed = 3;
  eval.threads = 2;
  const auto report = evaluate_pipeline(eval, sessions);
  REQUIRE(report.result_for(1)->auc.has_value());
  CHECK(*report.result_for(1)->auc > 0.4);
  CHECK(*report.result_for(1)->auc < 0.6);
}

TEST_CASE("separability dial: wider gaps never lower the AUC") {
  // Gap levels interpolate every distribution from identical to the default
  // child/adult pair; AUC averaged over 5 seeds per level.
  auto lerp_profile = [](double t) {
    const BehaviorProfile c = default_child_profile();
    const BehaviorProfile a = default_adult_profile();
    BehaviorProfile mid = a;
    auto lerp_dist = [&](Dist lo, Dist hi) {
      return Dist{hi.mean + (lo.mean - hi.mean) * t, hi.std};
    };
    mid.stroke_length_px = lerp_dist(c.stroke_length_px, a.stroke_length_px);
    mid.stroke_speed_px_ms = lerp_dist(c.stroke_speed_px_ms, a.stroke_speed_px_ms);
    mid.curviness = lerp_dist(c.curviness, a.curviness);
    mid.touch_size = lerp_dist(c.touch_size, a.touch_size);
    mid.touch_pressure = lerp_dist(c.touch_pressure, a.touch_pressure);
    mid.tap_duration_ms = lerp_dist(c.tap_duration_ms, a.tap_duration_ms);
    return mid;  // sensors stay adult-like; the dial is touch-only
  };

  std::vector<double> level_auc;
  for (double t : {0.0, 0.5, 1.0}) {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      GenConfig config;
      config.child = lerp_profile(t);
      config.adult = default_adult_profile();
      config.sessions_per_class = 8;
      config.gestures_per_session = 18;
      config.session_duration_s = 20.0;
      config.seed = 1000 + seed;
      const auto sessions = generate_dataset(config, 2);

      EvalConfig eval;
      eval.approach = Approach::TouchStroke;
      eval.classifier.n_estimators = 40;
      eval.k_list = {1};
      eval.folds = 5;
      eval.seed = seed;
      eval.threads = 2;
      sum += evaluate_pipeline(eval, sessions).result_for(1)->auc.value();
    }
    level_auc.push_back(sum / 5.0);
  }
  CHECK(level_auc[1] >= level_auc[0] - 0.01);
  CHECK(level_auc[2] >= level_auc[1] - 0.01);
}

TEST_CASE("invalid profiles are rejected") {
  BehaviorProfile p = default_child_profile();
  p.touch_size.mean = 1.4;
  CHECK_THROWS_AS(validate_profile(p), InvalidProfile);
  p = default_child_profile();
  p.stroke_length_px.std = -1.0;
  CHECK_THROWS_AS(validate_profile(p), InvalidProfile);
  p = default_child_profile();
  p.tap_fraction = 2.0;
  CHECK_THROWS_AS(validate_profile(p), InvalidProfile);
  p = default_child_profile();
  p.sample_rate_hz = 0.0;
  Rng rng(0);
  CHECK_THROWS_AS(generate_session(p, 10.0, 5, rng), InvalidProfile);
}

TEST_CASE("gen config json round-trip and shipped defaults") {
  GenConfig config;
  const auto text = gen_config_to_json(config);
  const auto back = gen_config_from_json(text);
  CHECK(back.child.touch_size.mean == config.child.touch_size.mean);
  CHECK(back.adult.tremor_std == config.adult.tremor_std);
  CHECK(back.seed == config.seed);
  CHECK(gen_config_to_json(back) == text);
}

TEST_CASE("write_dataset emits loadable files") {
  const fs::path dir = fs::temp_directory_path() / "agekit_synth_out";
  fs::remove_all(dir);
  GenConfig config;
  config.sessions_per_class = 2;
  config.gestures_per_session = 6;
  config.session_duration_s = 8.0;
  const auto sessions = generate_dataset(config);
  write_dataset(sessions, dir);

  const auto loaded = load_sessions(dir / "manifest.json");
  REQUIRE(loaded.size() == sessions.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded[i].id == sessions[i].id);
    CHECK(loaded[i].label == sessions[i].label);
    CHECK(loaded[i].touch_events.size() == sessions[i].touch_events.size());
    CHECK(loaded[i].sensor_sample_count() == sessions[i].sensor_sample_count());
  }
  fs::remove_all(dir);
}
