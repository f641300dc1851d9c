#pragma once

#include <span>
#include <vector>

#include "agekit/types.hpp"

namespace agekit {

/// k consecutive same-session scores averaged into one fused score.
struct Bundle {
  std::vector<double> scores;
  double fused = 0.0;
};

/// Arithmetic mean of the bundle's scores.
double fuse(std::span<const double> scores);

/// Sliding windows of length k with the given stride over one session's
/// chronological scores. Sessions with fewer than k scores yield nothing.
/// Never mix sessions in one call.
std::vector<Bundle> make_bundles(std::span<const double> session_scores,
                                 std::size_t k, std::size_t stride = 1);

struct Decision {
  Label verdict = Label::Adult;
  double fused = 0.0;
  double threshold = 0.5;
};

/// child iff fused >= threshold (ties favor protection).
Decision decide(double fused, double threshold = 0.5);

}  // namespace agekit
