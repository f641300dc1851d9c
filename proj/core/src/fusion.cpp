#include "agekit/fusion.hpp"

namespace agekit {

double fuse(std::span<const double> scores) {
  double sum = 0.0;
  for (double s : scores) sum += s;
  return scores.empty() ? 0.0 : sum / static_cast<double>(scores.size());
}

std::vector<Bundle> make_bundles(std::span<const double> session_scores,
                                 std::size_t k, std::size_t stride) {
  std::vector<Bundle> bundles;
  if (k == 0 || stride == 0 || session_scores.size() < k) return bundles;
  for (std::size_t start = 0; start + k <= session_scores.size(); start += stride) {
    Bundle b;
    b.scores.assign(session_scores.begin() + start,
                    session_scores.begin() + start + k);
    b.fused = fuse(b.scores);
    bundles.push_back(std::move(b));
  }
  return bundles;
}

Decision decide(double fused, double threshold) {
  Decision d;
  d.fused = fused;
  d.threshold = threshold;
  d.verdict = fused >= threshold ? Label::Child : Label::Adult;
  return d;
}

}  // namespace agekit
