#include "agekit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agekit/errors.hpp"

namespace agekit {

double auc(std::span<const double> pos_scores, std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty())
    throw EmptySide("AUC needs scores on both sides");

  // Average ranks over the pooled sorted scores (Mann-Whitney U).
  std::vector<std::pair<double, bool>> pooled;  // (score, is_positive)
  pooled.reserve(pos_scores.size() + neg_scores.size());
  for (double s : pos_scores) pooled.emplace_back(s, true);
  for (double s : neg_scores) pooled.emplace_back(s, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < pooled.size()) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
    const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t k = i; k < j; ++k)
      if (pooled[k].second) rank_sum_pos += avg_rank;
    i = j;
  }
  const auto np = static_cast<double>(pos_scores.size());
  const auto nn = static_cast<double>(neg_scores.size());
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

RocCurve roc_curve(std::span<const double> pos_scores,
                   std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty())
    throw EmptySide("ROC needs scores on both sides");

  std::vector<std::pair<double, bool>> pooled;
  pooled.reserve(pos_scores.size() + neg_scores.size());
  for (double s : pos_scores) pooled.emplace_back(s, true);
  for (double s : neg_scores) pooled.emplace_back(s, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  const auto np = static_cast<double>(pos_scores.size());
  const auto nn = static_cast<double>(neg_scores.size());

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  double tp = 0.0, fp = 0.0;
  std::size_t i = 0;
  while (i < pooled.size()) {
    const double threshold = pooled[i].first;
    while (i < pooled.size() && pooled[i].first == threshold) {
      (pooled[i].second ? tp : fp) += 1.0;
      ++i;
    }
    curve.points.push_back({threshold, fp / nn, tp / np});
  }
  // Points were appended threshold-descending; flip to ascending order.
  std::reverse(curve.points.begin(), curve.points.end());
  return curve;
}

double auc_trapezoid(const RocCurve& curve) {
  // Walk in ascending-fpr order, i.e. reverse of ascending threshold.
  double area = 0.0;
  const auto& pts = curve.points;
  for (std::size_t i = pts.size(); i-- > 1;) {
    const auto& hi = pts[i - 1];  // larger fpr (lower threshold)
    const auto& lo = pts[i];
    area += (hi.fpr - lo.fpr) * 0.5 * (hi.tpr + lo.tpr);
  }
  return area;
}

std::pair<RocCurve, double> roc_and_eer(std::span<const double> pos_scores,
                                        std::span<const double> neg_scores) {
  RocCurve curve = roc_curve(pos_scores, neg_scores);

  // FPR - FNR is monotone non-decreasing in ascending-fpr order: -1 at
  // (0,0), +1 at (1,1). Prefer an exact crossing point.
  const auto& pts = curve.points;
  auto diff = [&](std::size_t i) {
    const auto& p = pts[pts.size() - 1 - i];  // ascending fpr
    return p.fpr - (1.0 - p.tpr);
  };
  double eer = 0.5;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = diff(i);
    if (d == 0.0) {
      eer = pts[pts.size() - 1 - i].fpr;
      return {std::move(curve), eer};
    }
    if (d > 0.0) {
      const auto& hi = pts[pts.size() - 1 - i];
      const auto& lo = pts[pts.size() - i];  // previous point, d < 0
      const double fnr_lo = 1.0 - lo.tpr;
      const double denom = (hi.fpr - lo.fpr) + (hi.tpr - lo.tpr);
      const double s = denom > 0.0 ? (fnr_lo - lo.fpr) / denom : 0.0;
      eer = lo.fpr + s * (hi.fpr - lo.fpr);
      return {std::move(curve), eer};
    }
  }
  return {std::move(curve), eer};
}

}  // namespace agekit
