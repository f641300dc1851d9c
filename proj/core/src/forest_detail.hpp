#pragma once

#include <cstdint>

#include "agekit/classifier.hpp"

namespace agekit::forest_detail {

/// One bootstrap-resampled tree for the forest; rng substream keyed by
/// (seed, tree_index) so the result is independent of scheduling.
DecisionTree train_bootstrap_tree(const Dataset& data, const TreeParams& params,
                                  std::uint64_t seed, std::uint64_t tree_index);

}  // namespace agekit::forest_detail
