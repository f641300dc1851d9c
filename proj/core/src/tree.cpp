#include <algorithm>
#include <cmath>
#include <numeric>

#include "agekit/classifier.hpp"
#include "agekit/errors.hpp"

namespace agekit {

namespace {

double impurity(double child, double adult, SplitCriterion criterion) {
  const double n = child + adult;
  if (n == 0.0) return 0.0;
  const double p = child / n;
  const double q = adult / n;
  if (criterion == SplitCriterion::Gini) return 1.0 - p * p - q * q;
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (q > 0.0) h -= q * std::log2(q);
  return h;
}

std::size_t subset_size(std::size_t d, MaxFeaturesRule rule) {
  switch (rule) {
    case MaxFeaturesRule::All:
      return d;
    case MaxFeaturesRule::Sqrt:
      return std::max<std::size_t>(1, static_cast<std::size_t>(
                 std::ceil(std::sqrt(static_cast<double>(d)))));
    case MaxFeaturesRule::Log2:
      return std::max<std::size_t>(1, static_cast<std::size_t>(
                 std::ceil(std::log2(static_cast<double>(d)))));
  }
  return d;
}

struct NodeTask {
  std::int32_t node;
  std::size_t begin;
  std::size_t end;
  int depth;
};

struct BestSplit {
  double gain = 0.0;
  std::int32_t feature = -1;
  double threshold = 0.0;

  bool beats(const BestSplit& other) const {
    if (gain != other.gain) return gain > other.gain;
    if (feature != other.feature) return feature < other.feature;
    return threshold < other.threshold;
  }
};

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, const TreeParams& params, Rng& rng)
      : data_(data), params_(params), rng_(rng), d_(data.n_features()) {
    // Column-major copy keeps the per-feature scans cache-friendly.
    const std::size_t n = data.size();
    cols_.resize(d_ * n);
    for (std::size_t r = 0; r < n; ++r) {
      auto row = data.row(r);
      for (std::size_t c = 0; c < d_; ++c) cols_[c * n + r] = row[c];
    }
    y_.resize(n);
    for (std::size_t r = 0; r < n; ++r)
      y_[r] = data.labels[r] == Label::Child ? 1 : 0;
    feature_pool_.resize(d_);
    std::iota(feature_pool_.begin(), feature_pool_.end(), 0);
  }

  DecisionTree build(std::vector<std::uint32_t> indices) {
    DecisionTree tree;
    if (indices.empty()) throw EmptyData("cannot train a tree on no samples");

    idx_ = std::move(indices);
    tree.nodes.emplace_back();
    std::vector<NodeTask> stack;
    stack.push_back({0, 0, idx_.size(), 0});

    while (!stack.empty()) {
      const NodeTask task = stack.back();
      stack.pop_back();
      grow(tree, task, stack);
    }
    return tree;
  }

 private:
  void grow(DecisionTree& tree, const NodeTask& task, std::vector<NodeTask>& stack) {
    const std::size_t n = task.end - task.begin;
    double child = 0.0;
    for (std::size_t i = task.begin; i < task.end; ++i) child += y_[idx_[i]];
    const double adult = static_cast<double>(n) - child;

    TreeNode& node = tree.nodes[task.node];
    node.n_samples = static_cast<double>(n);
    node.child_count = child;
    node.adult_count = adult;

    const bool depth_capped =
        params_.max_depth > 0 && task.depth >= params_.max_depth;
    const bool splittable =
        n >= 2 * static_cast<std::size_t>(params_.min_leaf) && child > 0.0 &&
        adult > 0.0 && !depth_capped;
    BestSplit best;
    if (splittable) best = find_split(task, child, adult);

    if (!splittable || best.feature < 0 || best.gain <= 0.0) return;  // leaf

    // Partition indices in place: left side takes value < threshold.
    const double* col = cols_.data() + static_cast<std::size_t>(best.feature) * y_.size();
    auto mid_it = std::partition(
        idx_.begin() + task.begin, idx_.begin() + task.end,
        [&](std::uint32_t r) { return col[r] < best.threshold; });
    const auto mid = static_cast<std::size_t>(mid_it - idx_.begin());

    const auto left_id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    const auto right_id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();

    TreeNode& parent = tree.nodes[task.node];  // re-fetch, vector may grow
    parent.feature = best.feature;
    parent.threshold = best.threshold;
    parent.gain = best.gain;
    parent.left = left_id;
    parent.right = right_id;

    stack.push_back({right_id, mid, task.end, task.depth + 1});
    stack.push_back({left_id, task.begin, mid, task.depth + 1});
  }

  BestSplit find_split(const NodeTask& task, double child, double adult) {
    const std::size_t n = task.end - task.begin;
    const double parent_impurity = impurity(child, adult, params_.criterion);
    const double total = child + adult;

    const std::size_t m = subset_size(d_, params_.max_features);
    // Partial Fisher-Yates over a persistent pool, then sorted so the scan
    // order (and therefore tie-breaking) is independent of sampling order.
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(
          rng_.uniform_int(static_cast<std::uint64_t>(d_ - i)));
      std::swap(feature_pool_[i], feature_pool_[j]);
    }
    chosen_.assign(feature_pool_.begin(), feature_pool_.begin() + static_cast<std::ptrdiff_t>(m));
    std::sort(chosen_.begin(), chosen_.end());

    BestSplit best;
    scratch_.resize(n);
    for (std::uint32_t f : chosen_) {
      const double* col = cols_.data() + static_cast<std::size_t>(f) * y_.size();
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t r = idx_[task.begin + i];
        scratch_[i] = {col[r], y_[r]};
      }
      std::sort(scratch_.begin(), scratch_.end());

      double left_child = 0.0, left_n = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_child += scratch_[i].second;
        left_n += 1.0;
        if (scratch_[i].first == scratch_[i + 1].first) continue;  // not a boundary
        const double right_n = total - left_n;
        if (left_n < params_.min_leaf || right_n < params_.min_leaf) continue;
        const double left_adult = left_n - left_child;
        const double right_child = child - left_child;
        const double right_adult = adult - left_adult;
        const double weighted =
            (left_n / total) * impurity(left_child, left_adult, params_.criterion) +
            (right_n / total) * impurity(right_child, right_adult, params_.criterion);
        const double gain = parent_impurity - weighted;
        BestSplit candidate{gain, static_cast<std::int32_t>(f),
                            0.5 * (scratch_[i].first + scratch_[i + 1].first)};
        if (candidate.gain > 0.0 && candidate.beats(best)) best = candidate;
      }
    }
    return best;
  }

  const Dataset& data_;
  const TreeParams& params_;
  Rng& rng_;
  std::size_t d_;
  std::vector<double> cols_;
  std::vector<std::uint8_t> y_;
  std::vector<std::uint32_t> idx_;
  std::vector<std::uint32_t> feature_pool_;
  std::vector<std::uint32_t> chosen_;
  std::vector<std::pair<double, std::uint8_t>> scratch_;
};

}  // namespace

double DecisionTree::predict(std::span<const double> row) const {
  std::size_t at = 0;
  for (;;) {
    const TreeNode& node = nodes[at];
    if (node.feature < 0) {
      const double total = node.child_count + node.adult_count;
      return total > 0.0 ? node.child_count / total : 0.5;
    }
    at = static_cast<std::size_t>(
        row[static_cast<std::size_t>(node.feature)] < node.threshold ? node.left
                                                                     : node.right);
  }
}

DecisionTree train_tree(const Dataset& data, const TreeParams& params, Rng& rng) {
  if (data.size() == 0) throw EmptyData("cannot train a tree on an empty dataset");
  std::vector<std::uint32_t> all(data.size());
  std::iota(all.begin(), all.end(), 0);
  return TreeBuilder(data, params, rng).build(std::move(all));
}

DecisionTree train_tree(const Dataset& data, const TreeParams& params,
                        std::uint64_t seed) {
  Rng rng(seed);
  return train_tree(data, params, rng);
}

namespace forest_detail {

DecisionTree train_bootstrap_tree(const Dataset& data, const TreeParams& params,
                                  std::uint64_t seed, std::uint64_t tree_index) {
  Rng rng = Rng::substream(seed, tree_index);
  const std::size_t n = data.size();
  std::vector<std::uint32_t> bootstrap(n);
  for (auto& b : bootstrap)
    b = static_cast<std::uint32_t>(rng.uniform_int(n));
  return TreeBuilder(data, params, rng).build(std::move(bootstrap));
}

}  // namespace forest_detail

}  // namespace agekit
