// Independent reference implementations used to cross-check the library.
// Everything here is written naively, straight from the defining formulas,
// and must stay independent of the code paths under test.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace oracle {

inline double naive_mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double naive_central_moment(std::span<const double> v, int order) {
  const double m = naive_mean(v);
  double s = 0.0;
  for (double x : v) s += std::pow(x - m, order);
  return s / static_cast<double>(v.size());
}

struct NaiveStats {
  double mean, std, var, min, max, rmsd, skewness, kurtosis;
};

inline NaiveStats naive_axis_stats(std::span<const double> v) {
  NaiveStats st{};
  st.mean = naive_mean(v);
  st.var = naive_central_moment(v, 2);
  st.std = std::sqrt(st.var);
  st.min = v[0];
  st.max = v[0];
  for (double x : v) {
    if (x < st.min) st.min = x;
    if (x > st.max) st.max = x;
  }
  double dev2 = 0.0;
  for (double x : v) dev2 += (x - st.mean) * (x - st.mean);
  st.rmsd = std::sqrt(dev2 / static_cast<double>(v.size()));
  if (st.std == 0.0) {
    st.skewness = 0.0;
    st.kurtosis = 0.0;
  } else {
    st.skewness =
        naive_central_moment(v, 3) / (st.std * st.std * st.std);
    st.kurtosis =
        naive_central_moment(v, 4) / (st.std * st.std * st.std * st.std);
  }
  return st;
}

/// P(pos > neg) + 0.5 P(pos = neg) by brute force over all pairs.
inline double pairwise_auc(std::span<const double> pos,
                           std::span<const double> neg) {
  double wins = 0.0;
  for (double p : pos)
    for (double n : neg) wins += p > n ? 1.0 : p == n ? 0.5 : 0.0;
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace oracle
