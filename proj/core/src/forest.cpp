#include <algorithm>
#include <numeric>

#include "agekit/classifier.hpp"
#include "agekit/errors.hpp"
#include "agekit/parallel.hpp"
#include "forest_detail.hpp"

namespace agekit {

double Forest::predict(std::span<const double> row) const {
  if (trees.empty()) return 0.5;
  double sum = 0.0;
  for (const auto& tree : trees) sum += tree.predict(row);
  return sum / static_cast<double>(trees.size());
}

Forest train_forest(const Dataset& data, const ForestParams& params,
                    unsigned threads) {
  if (data.size() == 0) throw EmptyData("cannot train a forest on an empty dataset");

  TreeParams tree_params;
  tree_params.criterion = params.criterion;
  tree_params.max_depth = params.max_depth;
  tree_params.min_leaf = params.min_leaf;
  tree_params.max_features = params.max_features;

  Forest forest;
  forest.params = params;
  forest.n_features = data.n_features();
  forest.trees.resize(static_cast<std::size_t>(params.n_estimators));
  parallel_for(forest.trees.size(), threads, [&](std::size_t i) {
    forest.trees[i] = forest_detail::train_bootstrap_tree(
        data, tree_params, params.seed, static_cast<std::uint64_t>(i));
  });
  return forest;
}

std::vector<double> feature_importance(const Forest& forest) {
  std::vector<double> importance(forest.n_features, 0.0);
  for (const auto& tree : forest.trees) {
    if (tree.nodes.empty()) continue;
    const double root_n = tree.nodes.front().n_samples;
    if (root_n <= 0.0) continue;
    for (const auto& node : tree.nodes) {
      if (node.feature < 0) continue;
      importance[static_cast<std::size_t>(node.feature)] +=
          (node.n_samples / root_n) * node.gain;
    }
  }
  const double total = std::accumulate(importance.begin(), importance.end(), 0.0);
  if (total > 0.0)
    for (auto& v : importance) v /= total;
  return importance;
}

std::vector<std::pair<std::string, double>> ranked_importance(
    const Forest& forest, std::span<const std::string> names) {
  const auto importance = feature_importance(forest);
  std::vector<std::size_t> order(importance.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return importance[a] > importance[b];
  });
  std::vector<std::pair<std::string, double>> out;
  out.reserve(order.size());
  for (std::size_t i : order)
    out.emplace_back(i < names.size() ? names[i] : std::to_string(i), importance[i]);
  return out;
}

}  // namespace agekit
