#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "agekit/errors.hpp"
#include "agekit/metrics.hpp"
#include "agekit/rng.hpp"
#include "oracles.hpp"

using namespace agekit;

TEST_CASE("auc fixtures") {
  SUBCASE("perfect separation") {
    const std::vector<double> pos = {0.9, 0.8}, neg = {0.1, 0.2};
    CHECK(auc(pos, neg) == 1.0);
  }
  SUBCASE("all ties") {
    const std::vector<double> pos = {0.5, 0.5}, neg = {0.5, 0.5};
    CHECK(auc(pos, neg) == 0.5);
  }
  SUBCASE("3 of 4 pairs won") {
    const std::vector<double> pos = {0.8, 0.3}, neg = {0.5, 0.1};
    CHECK(auc(pos, neg) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(oracle::pairwise_auc(pos, neg) == 0.75);
  }
  SUBCASE("either side empty") {
    const std::vector<double> some = {0.5}, none = {};
    CHECK_THROWS_AS(auc(none, some), EmptySide);
    CHECK_THROWS_AS(auc(some, none), EmptySide);
  }
}

TEST_CASE("auc equals the brute-force pairwise statistic, ties included") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> pos(1 + rng.uniform_int(40));
    std::vector<double> neg(1 + rng.uniform_int(40));
    // quantized scores force ties across and within classes
    for (auto& s : pos) s = 0.05 * static_cast<double>(rng.uniform_int(21));
    for (auto& s : neg) s = 0.05 * static_cast<double>(rng.uniform_int(21));
    CHECK(std::abs(auc(pos, neg) - oracle::pairwise_auc(pos, neg)) <= 1e-12);
  }
}

TEST_CASE("rank-statistic AUC equals trapezoidal ROC area") {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> pos(2 + rng.uniform_int(200));
    std::vector<double> neg(2 + rng.uniform_int(200));
    const bool quantize = rng.bernoulli(0.5);
    auto draw = [&] {
      return quantize ? 0.1 * static_cast<double>(rng.uniform_int(11))
                      : rng.uniform01();
    };
    for (auto& s : pos) s = draw();
    for (auto& s : neg) s = draw();
    const auto curve = roc_curve(pos, neg);
    CHECK(std::abs(auc(pos, neg) - auc_trapezoid(curve)) <= 1e-9);
  }
}

TEST_CASE("auc is invariant under strictly increasing transforms") {
  Rng rng(43);
  std::vector<double> pos(300), neg(300);
  for (auto& s : pos) s = rng.normal(0.3, 1.0);
  for (auto& s : neg) s = rng.normal(-0.3, 1.0);
  const double base = auc(pos, neg);
  auto squash = [](std::vector<double> v) {
    for (auto& x : v) x = 1.0 / (1.0 + std::exp(-x));
    return v;
  };
  CHECK(auc(squash(pos), squash(neg)) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("roc curve shape") {
  Rng rng(44);
  std::vector<double> pos(50), neg(60);
  for (auto& s : pos) s = rng.uniform01();
  for (auto& s : neg) s = rng.uniform01();
  const auto curve = roc_curve(pos, neg);

  // endpoints (0,0) at +inf threshold and (1,1) at the lowest score
  CHECK(curve.points.back().fpr == 0.0);
  CHECK(curve.points.back().tpr == 0.0);
  CHECK(std::isinf(curve.points.back().threshold));
  CHECK(curve.points.front().fpr == 1.0);
  CHECK(curve.points.front().tpr == 1.0);
  // fpr and tpr non-increasing as thresholds increase
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    CHECK(curve.points[i].threshold > curve.points[i - 1].threshold);
    CHECK(curve.points[i].fpr <= curve.points[i - 1].fpr);
    CHECK(curve.points[i].tpr <= curve.points[i - 1].tpr);
  }
}

TEST_CASE("eer fixtures") {
  SUBCASE("exact crossing at 1/3") {
    const std::vector<double> pos = {0.9, 0.8, 0.4}, neg = {0.6, 0.2, 0.1};
    const auto [curve, eer] = roc_and_eer(pos, neg);
    CHECK(eer == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("perfect separation has zero EER") {
    const std::vector<double> pos = {0.9, 0.8}, neg = {0.1, 0.2};
    CHECK(roc_and_eer(pos, neg).second == 0.0);
  }
  SUBCASE("same distribution lands near 0.5") {
    Rng rng(4242);
    std::vector<double> pos(2000), neg(2000);
    for (auto& s : pos) s = rng.uniform01();
    for (auto& s : neg) s = rng.uniform01();
    const auto [curve, eer] = roc_and_eer(pos, neg);
    CHECK(std::abs(eer - 0.5) <= 0.05);
    CHECK(std::abs(auc(pos, neg) - 0.5) <= 0.05);
  }
}

TEST_CASE("eer class-symmetry: (pos,neg) vs (1-neg, 1-pos)") {
  Rng rng(45);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> pos(3 + rng.uniform_int(100));
    std::vector<double> neg(3 + rng.uniform_int(100));
    for (auto& s : pos) s = rng.uniform01();  // continuous: ties have measure 0
    for (auto& s : neg) s = rng.uniform01();
    auto flip = [](std::vector<double> v) {
      for (auto& x : v) x = 1.0 - x;
      return v;
    };
    const double a = roc_and_eer(pos, neg).second;
    const double b = roc_and_eer(flip(neg), flip(pos)).second;
    CHECK(std::abs(a - b) <= 1e-9);
  }
}
