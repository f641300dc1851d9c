#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "agekit/dataset.hpp"
#include "agekit/types.hpp"

namespace agekit {

inline constexpr std::size_t kAxisStatCount = 8;
inline constexpr std::size_t kSensorFeatureCount = 128;  // 8 stats x 4 axes x 4 sensors

/// Descriptive statistics of one axis series within a window.
/// std/var use the population convention; rmsd is kept as its own value even
/// though it coincides with the population std, preserving the 128-feature
/// dimensionality. For a zero-variance series skewness and kurtosis are 0 by
/// convention. Kurtosis is the raw moment ratio (no -3 excess correction).
struct AxisStats {
  double mean = 0.0;
  double std = 0.0;
  double var = 0.0;
  double min = 0.0;
  double max = 0.0;
  double rmsd = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;

  std::array<double, kAxisStatCount> as_array() const {
    return {mean, std, var, min, max, rmsd, skewness, kurtosis};
  }
};

/// Canonical per-axis stat order: mean, std, var, min, max, rmsd,
/// skewness, kurtosis.
const std::array<std::string, kAxisStatCount>& axis_stat_names();

/// Throws TooFewSamples for n < 3.
AxisStats axis_stats(std::span<const double> series);

/// Canonical 128 names: sensors (acc, gyro, lacc, rot) x axes (x, y, z, mag)
/// x stats, formatted `{sensor}_{axis}_{stat}` (e.g. lacc_x_mean). Frozen
/// public contract.
const std::vector<std::string>& sensor_feature_names();

/// 128-dimensional feature vector of a window. Magnitude is computed
/// per-sample before statistics. Throws TooFewSamples naming the deficient
/// sensor when any sensor has fewer than 3 samples.
std::array<double, kSensorFeatureCount> window_features(const SensorWindow& w);

/// Ranks the training set's features by forest importance and returns the
/// top k names, importance-descending. Deterministic given the seed.
/// When seen_hash is non-null it receives the content hash of the data the
/// ranking forest was fitted on — the evaluation harness compares it against
/// the training fold to prove selection never saw test data.
/// Throws SingleClass when only one label is present.
FeatureMask select_top_k(const Dataset& train, std::size_t k = 20,
                         std::uint64_t seed = 0, int n_trees = 200,
                         unsigned threads = 1, std::uint64_t* seen_hash = nullptr);

}  // namespace agekit
