#pragma once

#include <span>
#include <utility>
#include <vector>

namespace agekit {

/// Rank-statistic AUC: P(pos > neg) + 0.5 P(pos = neg), computed exactly via
/// average ranks. Positives are child scores. Throws EmptySide when either
/// list is empty.
double auc(std::span<const double> pos_scores, std::span<const double> neg_scores);

struct RocPoint {
  double threshold = 0.0;  // classify child iff score >= threshold
  double fpr = 0.0;
  double tpr = 0.0;
};

/// Operating points for every distinct score, ordered by ascending
/// threshold, with the (1,1) and (0,0) endpoints present.
struct RocCurve {
  std::vector<RocPoint> points;
};

RocCurve roc_curve(std::span<const double> pos_scores,
                   std::span<const double> neg_scores);

/// Trapezoidal area under the curve; independent route kept alongside the
/// rank-statistic auc() so the two can be cross-checked.
double auc_trapezoid(const RocCurve& curve);

/// Equal error rate: the point where FPR equals FNR, located by linear
/// interpolation between the adjacent ROC points where FPR - FNR changes
/// sign; an exact crossing is returned as-is.
std::pair<RocCurve, double> roc_and_eer(std::span<const double> pos_scores,
                                        std::span<const double> neg_scores);

}  // namespace agekit
