#include <cmath>

#include "agekit/classifier.hpp"
#include "agekit/errors.hpp"

namespace agekit {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct Standardized {
  std::vector<double> X;  // row-major, standardized
  std::vector<double> mean;
  std::vector<double> std;
};

Standardized standardize(const Dataset& data) {
  const std::size_t n = data.size();
  const std::size_t d = data.n_features();
  Standardized out;
  out.mean.assign(d, 0.0);
  out.std.assign(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    auto row = data.row(r);
    for (std::size_t c = 0; c < d; ++c) out.mean[c] += row[c];
  }
  for (auto& m : out.mean) m /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    auto row = data.row(r);
    for (std::size_t c = 0; c < d; ++c) {
      const double dev = row[c] - out.mean[c];
      out.std[c] += dev * dev;
    }
  }
  for (auto& s : out.std) s = std::sqrt(s / static_cast<double>(n));

  out.X.resize(n * d);
  for (std::size_t r = 0; r < n; ++r) {
    auto row = data.row(r);
    for (std::size_t c = 0; c < d; ++c)
      out.X[r * d + c] =
          out.std[c] > 0.0 ? (row[c] - out.mean[c]) / out.std[c] : 0.0;
  }
  return out;
}

}  // namespace

double logistic_loss(std::span<const double> X, std::size_t n_features,
                     std::span<const Label> y, std::span<const double> weights,
                     double bias) {
  const std::size_t n = y.size();
  double loss = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double z = bias;
    for (std::size_t c = 0; c < n_features; ++c)
      z += weights[c] * X[r * n_features + c];
    double p = sigmoid(z);
    p = std::min(1.0 - 1e-12, std::max(1e-12, p));
    loss -= y[r] == Label::Child ? std::log(p) : std::log(1.0 - p);
  }
  return loss / static_cast<double>(n);
}

std::pair<std::vector<double>, double> logistic_gradient(
    std::span<const double> X, std::size_t n_features, std::span<const Label> y,
    std::span<const double> weights, double bias) {
  const std::size_t n = y.size();
  std::vector<double> grad(n_features, 0.0);
  double grad_bias = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double z = bias;
    for (std::size_t c = 0; c < n_features; ++c)
      z += weights[c] * X[r * n_features + c];
    const double err = sigmoid(z) - (y[r] == Label::Child ? 1.0 : 0.0);
    for (std::size_t c = 0; c < n_features; ++c)
      grad[c] += err * X[r * n_features + c];
    grad_bias += err;
  }
  for (auto& g : grad) g /= static_cast<double>(n);
  grad_bias /= static_cast<double>(n);
  return {std::move(grad), grad_bias};
}

LinearModel train_linear(const Dataset& data, const LinearParams& params) {
  if (data.size() == 0) throw EmptyData("cannot train on an empty dataset");
  bool has_child = false, has_adult = false;
  for (Label l : data.labels) (l == Label::Child ? has_child : has_adult) = true;
  if (!has_child || !has_adult)
    throw SingleClass("linear training needs both labels");

  const std::size_t d = data.n_features();
  auto std_data = standardize(data);

  LinearModel model;
  model.kind = params.kind;
  model.weights.assign(d, 0.0);
  model.bias = 0.0;
  model.feature_mean = std::move(std_data.mean);
  model.feature_std = std::move(std_data.std);

  if (params.kind == LinearKind::Logistic) {
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
      auto [grad, grad_bias] = logistic_gradient(
          std_data.X, d, data.labels, model.weights, model.bias);
      for (std::size_t c = 0; c < d; ++c)
        model.weights[c] -= params.learning_rate * grad[c];
      model.bias -= params.learning_rate * grad_bias;
    }
  } else {
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
      for (std::size_t r = 0; r < data.size(); ++r) {
        const double target = data.labels[r] == Label::Child ? 1.0 : -1.0;
        double z = model.bias;
        for (std::size_t c = 0; c < d; ++c)
          z += model.weights[c] * std_data.X[r * d + c];
        if (target * z <= 0.0) {
          for (std::size_t c = 0; c < d; ++c)
            model.weights[c] += params.learning_rate * target * std_data.X[r * d + c];
          model.bias += params.learning_rate * target;
        }
      }
    }
  }
  return model;
}

double LinearModel::predict(std::span<const double> row) const {
  double z = bias;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    const double zc =
        feature_std[c] > 0.0 ? (row[c] - feature_mean[c]) / feature_std[c] : 0.0;
    z += weights[c] * zc;
  }
  if (kind == LinearKind::Perceptron) return z >= 0.0 ? 1.0 : 0.0;
  return sigmoid(z);
}

double predict_score(const TrainedModel& model, std::span<const double> row) {
  const std::size_t expected = model_feature_count(model);
  if (row.size() != expected)
    throw DimensionMismatch("model expects " + std::to_string(expected) +
                            " features, got " + std::to_string(row.size()));
  return std::visit([&](const auto& m) { return m.predict(row); }, model.model);
}

std::size_t model_feature_count(const TrainedModel& model) {
  if (std::holds_alternative<Forest>(model.model))
    return std::get<Forest>(model.model).n_features;
  if (std::holds_alternative<LinearModel>(model.model))
    return std::get<LinearModel>(model.model).weights.size();
  return model.feature_names.size();
}

SplitCriterion criterion_from_name(const std::string& name) {
  if (name == "entropy") return SplitCriterion::Entropy;
  if (name == "gini") return SplitCriterion::Gini;
  throw ConfigError("unknown criterion '" + name + "'");
}

MaxFeaturesRule max_features_from_name(const std::string& name) {
  if (name == "log2") return MaxFeaturesRule::Log2;
  if (name == "sqrt") return MaxFeaturesRule::Sqrt;
  if (name == "all") return MaxFeaturesRule::All;
  throw ConfigError("unknown max_features rule '" + name + "'");
}

TrainedModel train_classifier(const Dataset& data, const ClassifierConfig& config,
                              std::uint64_t seed, unsigned threads) {
  TrainedModel out;
  out.feature_names = data.names;
  out.observation_kind = data.kind;
  if (config.kind == "forest") {
    ForestParams params;
    params.n_estimators = config.n_estimators;
    params.max_features = max_features_from_name(config.max_features);
    params.criterion = criterion_from_name(config.criterion);
    params.max_depth = config.max_depth;
    params.min_leaf = config.min_leaf;
    params.seed = seed;
    out.model = train_forest(data, params, threads);
  } else if (config.kind == "tree") {
    TreeParams params;
    params.criterion = criterion_from_name(config.criterion);
    params.max_depth = config.max_depth;
    params.min_leaf = config.min_leaf;
    params.max_features = max_features_from_name(config.max_features);
    out.model = train_tree(data, params, seed);
  } else if (config.kind == "logistic" || config.kind == "perceptron") {
    LinearParams params;
    params.kind = config.kind == "logistic" ? LinearKind::Logistic
                                            : LinearKind::Perceptron;
    params.learning_rate = config.learning_rate;
    params.epochs = config.epochs;
    params.seed = seed;
    out.model = train_linear(data, params);
  } else {
    throw ConfigError("unknown classifier kind '" + config.kind + "'");
  }
  return out;
}

}  // namespace agekit
