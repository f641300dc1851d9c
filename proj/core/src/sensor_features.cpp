#include "agekit/sensor_features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "agekit/classifier.hpp"
#include "agekit/errors.hpp"

namespace agekit {

const std::array<std::string, kAxisStatCount>& axis_stat_names() {
  static const std::array<std::string, kAxisStatCount> names = {
      "mean", "std", "var", "min", "max", "rmsd", "skewness", "kurtosis"};
  return names;
}

AxisStats axis_stats(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 3)
    throw TooFewSamples("axis statistics need at least 3 samples, got " +
                        std::to_string(n));

  AxisStats st;
  double sum = 0.0;
  st.min = series[0];
  st.max = series[0];
  for (double v : series) {
    sum += v;
    st.min = std::min(st.min, v);
    st.max = std::max(st.max, v);
  }
  const auto dn = static_cast<double>(n);
  st.mean = sum / dn;

  double sum2 = 0.0, sum3 = 0.0, sum4 = 0.0;
  for (double v : series) {
    const double d = v - st.mean;
    const double d2 = d * d;
    sum2 += d2;
    sum3 += d2 * d;
    sum4 += d2 * d2;
  }
  st.var = sum2 / dn;
  st.std = std::sqrt(st.var);
  st.rmsd = std::sqrt(sum2 / dn);
  if (st.std == 0.0) {
    st.skewness = 0.0;
    st.kurtosis = 0.0;
  } else {
    st.skewness = sum3 / (dn * st.std * st.std * st.std);
    st.kurtosis = sum4 / (dn * st.var * st.var);
  }
  return st;
}

const std::vector<std::string>& sensor_feature_names() {
  static const std::vector<std::string> names = [] {
    static const char* axes[] = {"x", "y", "z", "mag"};
    std::vector<std::string> out;
    out.reserve(kSensorFeatureCount);
    for (int s = 0; s < kSensorCount; ++s)
      for (const char* axis : axes)
        for (const auto& stat : axis_stat_names())
          out.push_back(std::string(sensor_name(static_cast<SensorKind>(s))) +
                        "_" + axis + "_" + stat);
    return out;
  }();
  return names;
}

std::array<double, kSensorFeatureCount> window_features(const SensorWindow& w) {
  std::array<double, kSensorFeatureCount> out{};
  std::size_t pos = 0;
  std::vector<double> series;
  for (int s = 0; s < kSensorCount; ++s) {
    const auto& samples = w.samples[s];
    if (samples.size() < 3)
      throw TooFewSamples(std::string("sensor ") +
                          sensor_name(static_cast<SensorKind>(s)) + " has " +
                          std::to_string(samples.size()) +
                          " samples in window, need 3");
    for (int axis = 0; axis < 4; ++axis) {
      series.resize(samples.size());
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& smp = samples[i];
        series[i] = axis == 0 ? smp.x
                  : axis == 1 ? smp.y
                  : axis == 2 ? smp.z
                              : magnitude(smp);
      }
      const auto st = axis_stats(series).as_array();
      std::copy(st.begin(), st.end(), out.begin() + pos);
      pos += kAxisStatCount;
    }
  }
  return out;
}

FeatureMask select_top_k(const Dataset& train, std::size_t k,
                         std::uint64_t seed, int n_trees, unsigned threads,
                         std::uint64_t* seen_hash) {
  bool has_child = false, has_adult = false;
  for (Label l : train.labels) (l == Label::Child ? has_child : has_adult) = true;
  if (!has_child || !has_adult)
    throw SingleClass("feature selection needs both labels");
  if (seen_hash) *seen_hash = row_content_hash(train);

  ForestParams params;
  params.n_estimators = n_trees;
  params.seed = seed;
  Forest forest = train_forest(train, params, threads);
  std::vector<double> importance = feature_importance(forest);

  std::vector<std::size_t> order(train.n_features());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return importance[a] > importance[b];
  });

  FeatureMask mask;
  const std::size_t take = std::min(k, order.size());
  mask.reserve(take);
  for (std::size_t i = 0; i < take; ++i) mask.push_back(train.names[order[i]]);
  return mask;
}

}  // namespace agekit
