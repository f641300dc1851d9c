#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "agekit/types.hpp"

namespace agekit {

inline constexpr std::size_t kTapFeatureCount = 3;
inline constexpr std::size_t kStrokeFeatureCount = 22;

/// Canonical tap feature order: pressure, size, duration.
const std::vector<std::string>& tap_feature_names();

/// Canonical stroke feature order (importance-ranked, frozen public contract).
const std::vector<std::string>& stroke_feature_names();

/// Largest Deviation Point: the stroke point farthest (perpendicular
/// distance) from the start-stop chord. Ties break to the earliest index.
/// When start == stop the deviation falls back to the Euclidean distance
/// from the start point.
struct LdpResult {
  std::size_t index = 0;
  double deviation = 0.0;
};

/// Throws DegenerateStroke for fewer than 2 points.
LdpResult find_ldp(std::span<const TouchEvent> points);

/// Mean pressure, mean size, duration (last t minus first t, ms).
std::array<double, kTapFeatureCount> tap_features(const Gesture& g);

/// The 22 stroke features in canonical order. Velocities skip zero-duration
/// segments; standard deviations use the population (1/n) convention.
/// Throws DegenerateStroke for fewer than 2 points or zero total duration.
std::array<double, kStrokeFeatureCount> stroke_features(const Gesture& g);

}  // namespace agekit
