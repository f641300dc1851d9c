#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "agekit/errors.hpp"
#include "agekit/rng.hpp"
#include "agekit/touch_features.hpp"
#include "test_helpers.hpp"

using namespace agekit;
using helpers::ev;

namespace {

TouchEvent pt(std::int64_t t, double x, double y, double pressure, double size,
              TouchPhase phase = TouchPhase::Move) {
  auto e = ev(t, phase, x, y, pressure, size);
  return e;
}

// The canonical 3-point stroke: (0,0)@t0 p.5 s.2, (4,3)@t10 p.6 s.3,
// (8,0)@t20 p.7 s.4. All 22 values derived by hand:
//   segment distances 5 and 5; trajectory 10; chord 8; ratio 0.8
//   LDP = index 1, perpendicular distance 3 from the x-axis chord
//   velocities 0.5 and 0.5 px/ms
//   population stds: pressure/size sqrt(((.1)^2+0+(.1)^2)/3) = sqrt(1/150)
const std::map<std::string, double> kFixtureExpected = {
    {"straight_to_trajectory_length_ratio", 0.8},
    {"average_size", 0.3},
    {"std_size", std::sqrt(1.0 / 150.0)},
    {"start_p", 0.5},
    {"start_to_LDP_length", 5.0},
    {"average_velocity", 0.5},
    {"std_velocity", 0.0},
    {"start_to_LDP_duration", 10.0},
    {"average_pressure", 0.6},
    {"LDP_to_stop_length", 5.0},
    {"trajectory_length", 10.0},
    {"average_distance", 5.0},
    {"straight_length", 8.0},
    {"LDP_velocity", 0.5},
    {"std_distance", 0.0},
    {"std_pressure", std::sqrt(1.0 / 150.0)},
    {"LDP_to_stop_duration", 10.0},
    {"LDP_p", 0.6},
    {"stop_p", 0.7},
    {"LDP_s", 0.3},
    {"start_s", 0.2},
    {"stop_s", 0.4},
};

Gesture fixture_stroke() {
  return helpers::gesture({pt(0, 0, 0, 0.5, 0.2, TouchPhase::Down),
                           pt(10, 4, 3, 0.6, 0.3),
                           pt(20, 8, 0, 0.7, 0.4, TouchPhase::Up)});
}

}  // namespace

TEST_CASE("tap_features") {
  SUBCASE("two-event tap averages and duration") {
    auto g = helpers::gesture({pt(100, 5, 5, 0.4, 0.1, TouchPhase::Down),
                               pt(180, 5, 5, 0.6, 0.3, TouchPhase::Up)});
    auto f = tap_features(g);
    CHECK(f[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f[1] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(f[2] == 80.0);
  }
  SUBCASE("single-event tap has zero duration") {
    auto g = helpers::gesture({pt(50, 5, 5, 0.7, 0.2, TouchPhase::Down)});
    auto f = tap_features(g);
    CHECK(f[0] == 0.7);
    CHECK(f[1] == 0.2);
    CHECK(f[2] == 0.0);
  }
  SUBCASE("constant pressure is preserved by the mean") {
    auto g = helpers::gesture({pt(0, 5, 5, 0.42, 0.2, TouchPhase::Down),
                               pt(10, 5, 5, 0.42, 0.2),
                               pt(20, 5, 5, 0.42, 0.2, TouchPhase::Up)});
    CHECK(tap_features(g)[0] == doctest::Approx(0.42).epsilon(1e-12));
  }
}

TEST_CASE("find_ldp") {
  SUBCASE("apex of the 3-point fixture") {
    auto g = fixture_stroke();
    auto r = find_ldp(g.points);
    CHECK(r.index == 1);
    CHECK(r.deviation == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("collinear points give zero deviation at the earliest index") {
    std::vector<TouchEvent> points = {pt(0, 0, 0, .5, .2), pt(1, 3, 4, .5, .2),
                                      pt(2, 6, 8, .5, .2)};
    auto r = find_ldp(points);
    CHECK(r.deviation == 0.0);
    CHECK(r.index == 0);
  }
  SUBCASE("closed stroke falls back to distance from start") {
    std::vector<TouchEvent> points = {pt(0, 0, 0, .5, .2), pt(1, 1, 1, .5, .2),
                                      pt(2, 0, 0, .5, .2)};
    auto r = find_ldp(points);
    CHECK(r.index == 1);
    CHECK(r.deviation == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("fewer than 2 points is degenerate") {
    std::vector<TouchEvent> points = {pt(0, 0, 0, .5, .2)};
    CHECK_THROWS_AS(find_ldp(points), DegenerateStroke);
  }
}

TEST_CASE("stroke_features matches the hand-computed fixture to 1e-9") {
  const auto& names = stroke_feature_names();
  REQUIRE(names.size() == kStrokeFeatureCount);
  const auto values = stroke_features(fixture_stroke());
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto it = kFixtureExpected.find(names[i]);
    REQUIRE_MESSAGE(it != kFixtureExpected.end(), names[i]);
    CHECK_MESSAGE(std::abs(values[i] - it->second) <= 1e-9, names[i]);
  }
}

TEST_CASE("stroke feature names are the frozen canonical order") {
  const auto& names = stroke_feature_names();
  CHECK(names.front() == "straight_to_trajectory_length_ratio");
  CHECK(names[1] == "average_size");
  CHECK(names[12] == "straight_length");
  CHECK(names.back() == "stop_s");
  std::set<std::string> unique(names.begin(), names.end());
  CHECK(unique.size() == kStrokeFeatureCount);
  CHECK(unique.count("x") == 0);  // coordinates never become features
  CHECK(unique.count("y") == 0);
  const auto& tap_names = tap_feature_names();
  CHECK(tap_names == std::vector<std::string>{"pressure", "size", "duration"});
}

TEST_CASE("stroke_features edge cases") {
  SUBCASE("perfectly straight two-point stroke") {
    auto g = helpers::gesture({pt(0, 0, 0, .5, .2, TouchPhase::Down),
                               pt(10, 30, 40, .5, .2, TouchPhase::Up)});
    const auto f = stroke_features(g);
    CHECK(f[0] == doctest::Approx(1.0).epsilon(1e-12));   // ratio
    CHECK(f[14] == 0.0);                                  // std_distance
    const auto ldp = find_ldp(g.points);
    CHECK(ldp.deviation == 0.0);
  }
  SUBCASE("constant pressure propagates everywhere") {
    auto g = helpers::gesture({pt(0, 0, 0, .37, .2, TouchPhase::Down),
                               pt(10, 4, 3, .37, .25),
                               pt(20, 8, 0, .37, .3, TouchPhase::Up)});
    const auto f = stroke_features(g);
    CHECK(f[8] == doctest::Approx(0.37).epsilon(1e-12));   // average_pressure
    CHECK(f[3] == 0.37);                                   // start_p
    CHECK(f[18] == 0.37);                                  // stop_p
    CHECK(f[17] == 0.37);                                  // LDP_p
    CHECK(f[15] == doctest::Approx(0.0).epsilon(1e-12));   // std_pressure
  }
  SUBCASE("zero-duration segments are skipped in velocity stats") {
    auto g = helpers::gesture({pt(0, 0, 0, .5, .2, TouchPhase::Down),
                               pt(0, 3, 4, .5, .2),  // same timestamp
                               pt(10, 6, 8, .5, .2, TouchPhase::Up)});
    const auto f = stroke_features(g);
    CHECK(f[5] == doctest::Approx(0.5).epsilon(1e-12));  // only the 5px/10ms leg
    CHECK(std::isfinite(f[6]));
  }
  SUBCASE("degenerate strokes throw") {
    auto one_point = helpers::gesture({pt(0, 0, 0, .5, .2, TouchPhase::Down)});
    CHECK_THROWS_AS(stroke_features(one_point), DegenerateStroke);
    auto zero_span = helpers::gesture({pt(5, 0, 0, .5, .2, TouchPhase::Down),
                                       pt(5, 9, 9, .5, .2, TouchPhase::Up)});
    CHECK_THROWS_AS(stroke_features(zero_span), DegenerateStroke);
  }
}

TEST_CASE("stroke feature properties on random strokes") {
  Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(12));
    std::vector<TouchEvent> points;
    std::int64_t t = 0;
    for (int i = 0; i < n; ++i) {
      points.push_back(pt(t, rng.uniform(0, 500), rng.uniform(0, 800),
                          rng.uniform(0.1, 0.9), rng.uniform(0.05, 0.6),
                          i == 0 ? TouchPhase::Down
                          : i == n - 1 ? TouchPhase::Up : TouchPhase::Move));
      t += 1 + static_cast<std::int64_t>(rng.uniform_int(30));
    }
    auto g = helpers::gesture(points);
    const auto f = stroke_features(g);

    // ratio in (0,1]; durations around the LDP sum to the stroke duration
    CHECK(f[0] > 0.0);
    CHECK(f[0] <= 1.0 + 1e-12);
    CHECK(f[7] + f[16] == doctest::Approx(static_cast<double>(g.t_end - g.t_start)));

    // translation invariance of the geometry, exact pressure/size match
    const double dx = rng.uniform(-3000, 3000), dy = rng.uniform(-3000, 3000);
    auto shifted = points;
    for (auto& p : shifted) {
      p.x += dx;
      p.y += dy;
    }
    const auto f2 = stroke_features(helpers::gesture(shifted));
    for (std::size_t i = 0; i < f.size(); ++i)
      CHECK_MESSAGE(std::abs(f[i] - f2[i]) <=
                        1e-7 * std::max({1.0, std::abs(f[i])}),
                    stroke_feature_names()[i]);
  }
}
