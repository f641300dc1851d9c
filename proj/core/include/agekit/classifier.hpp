#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "agekit/dataset.hpp"
#include "agekit/rng.hpp"

namespace agekit {

enum class SplitCriterion { Entropy, Gini };
enum class MaxFeaturesRule { Log2, Sqrt, All };

struct TreeParams {
  SplitCriterion criterion = SplitCriterion::Entropy;
  int max_depth = 0;  // 0 = grow until pure / min_leaf
  int min_leaf = 1;
  MaxFeaturesRule max_features = MaxFeaturesRule::All;
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  std::int32_t left = -1;
  std::int32_t right = -1;
  double threshold = 0.0;
  double n_samples = 0.0;     // bootstrap-weighted count reaching this node
  double gain = 0.0;          // impurity decrease of the split (internal nodes)
  double child_count = 0.0;
  double adult_count = 0.0;
};

/// Axis-aligned binary decision tree. Rows go left when
/// row[feature] < threshold. The score of a leaf is its child fraction.
struct DecisionTree {
  std::vector<TreeNode> nodes;
  double predict(std::span<const double> row) const;
};

/// Greedy top-down induction. Candidate thresholds are midpoints between
/// consecutive distinct sorted values; the split maximizing the criterion's
/// impurity decrease wins, ties broken by lowest feature index then lowest
/// threshold, which makes induction fully deterministic given the rng.
/// Throws EmptyData on an empty dataset; a single-label dataset yields a
/// single-leaf tree.
DecisionTree train_tree(const Dataset& data, const TreeParams& params, Rng& rng);
DecisionTree train_tree(const Dataset& data, const TreeParams& params = {},
                        std::uint64_t seed = 0);

struct ForestParams {
  int n_estimators = 200;
  MaxFeaturesRule max_features = MaxFeaturesRule::Log2;
  SplitCriterion criterion = SplitCriterion::Entropy;
  int max_depth = 0;
  int min_leaf = 1;
  std::uint64_t seed = 0;
};

/// Bagged forest; p_child is the mean of per-tree leaf child fractions.
/// Tree i trains on an n-sized bootstrap resample drawn from the rng
/// substream (seed, i), so training is bit-for-bit reproducible regardless
/// of thread count.
struct Forest {
  std::vector<DecisionTree> trees;
  ForestParams params;
  std::size_t n_features = 0;
  double predict(std::span<const double> row) const;
};

Forest train_forest(const Dataset& data, const ForestParams& params,
                    unsigned threads = 1);

/// Mean decrease in impurity per feature, weighted by node sample fraction,
/// averaged over trees and normalized to sum to 1.
std::vector<double> feature_importance(const Forest& forest);

/// (name, importance) pairs sorted importance-descending.
std::vector<std::pair<std::string, double>> ranked_importance(
    const Forest& forest, std::span<const std::string> names);

enum class LinearKind { Logistic, Perceptron };

struct LinearParams {
  LinearKind kind = LinearKind::Logistic;
  double learning_rate = 0.1;
  int epochs = 200;
  std::uint64_t seed = 0;
};

/// Linear classifier on standardized features. Constant training columns are
/// frozen: their standardized value is 0, so their weight never moves.
struct LinearModel {
  LinearKind kind = LinearKind::Logistic;
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> feature_mean;
  std::vector<double> feature_std;  // 0 marks a frozen feature
  double predict(std::span<const double> row) const;
};

/// Logistic regression by full-batch gradient descent on the cross-entropy;
/// perceptron by the classic mistake-driven rule over samples in data order.
/// Throws SingleClass when only one label is present.
LinearModel train_linear(const Dataset& data, const LinearParams& params);

/// Full-batch mean cross-entropy and its gradient for a logistic model on
/// already-standardized rows (row-major X). Exposed so the gradient can be
/// checked against finite differences.
double logistic_loss(std::span<const double> X, std::size_t n_features,
                     std::span<const Label> y, std::span<const double> weights,
                     double bias);
std::pair<std::vector<double>, double> logistic_gradient(
    std::span<const double> X, std::size_t n_features, std::span<const Label> y,
    std::span<const double> weights, double bias);

using AnyModel = std::variant<Forest, DecisionTree, LinearModel>;

struct TrainedModel {
  AnyModel model;
  std::vector<std::string> feature_names;
  ObservationKind observation_kind = ObservationKind::Stroke;
};

/// p_child in [0,1]. Throws DimensionMismatch when the row width differs
/// from the model's feature count.
double predict_score(const TrainedModel& model, std::span<const double> row);

std::size_t model_feature_count(const TrainedModel& model);

/// Classifier selection for the evaluation harness and CLI. String fields
/// keep it directly serializable to config files.
struct ClassifierConfig {
  std::string kind = "forest";        // forest | tree | logistic | perceptron
  int n_estimators = 200;
  std::string max_features = "log2";  // log2 | sqrt | all
  std::string criterion = "entropy";  // entropy | gini
  int max_depth = 0;
  int min_leaf = 1;
  double learning_rate = 0.1;
  int epochs = 200;
};

SplitCriterion criterion_from_name(const std::string& name);
MaxFeaturesRule max_features_from_name(const std::string& name);

TrainedModel train_classifier(const Dataset& data, const ClassifierConfig& config,
                              std::uint64_t seed, unsigned threads = 1);

}  // namespace agekit
