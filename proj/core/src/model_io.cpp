#include "agekit/model_io.hpp"

#include <fstream>

#include <json.hpp>

#include "agekit/errors.hpp"

namespace agekit {

namespace {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

const char* max_features_name(MaxFeaturesRule rule) {
  switch (rule) {
    case MaxFeaturesRule::Log2: return "log2";
    case MaxFeaturesRule::Sqrt: return "sqrt";
    case MaxFeaturesRule::All: return "all";
  }
  return "?";
}

const char* criterion_name(SplitCriterion c) {
  return c == SplitCriterion::Entropy ? "entropy" : "gini";
}

ojson tree_to_json(const DecisionTree& tree) {
  // Each node as a flat tuple keeps forest files compact:
  // [feature, threshold, left, right, n_samples, gain, child, adult]
  ojson nodes = ojson::array();
  for (const auto& n : tree.nodes)
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.n_samples,
                     n.gain, n.child_count, n.adult_count});
  return ojson{{"nodes", std::move(nodes)}};
}

DecisionTree tree_from_json(const json& doc) {
  DecisionTree tree;
  for (const auto& t : doc.at("nodes")) {
    if (!t.is_array() || t.size() != 8)
      throw CorruptModel("tree node is not an 8-tuple");
    TreeNode n;
    n.feature = t[0].get<std::int32_t>();
    n.threshold = t[1].get<double>();
    n.left = t[2].get<std::int32_t>();
    n.right = t[3].get<std::int32_t>();
    n.n_samples = t[4].get<double>();
    n.gain = t[5].get<double>();
    n.child_count = t[6].get<double>();
    n.adult_count = t[7].get<double>();
    tree.nodes.push_back(n);
  }
  if (tree.nodes.empty()) throw CorruptModel("tree has no nodes");
  return tree;
}

}  // namespace

std::string model_to_json(const TrainedModel& model) {
  ojson doc;
  doc["format_version"] = kModelFormatVersion;
  if (std::holds_alternative<Forest>(model.model)) doc["kind"] = "forest";
  else if (std::holds_alternative<DecisionTree>(model.model)) doc["kind"] = "tree";
  else {
    const auto& lm = std::get<LinearModel>(model.model);
    doc["kind"] = lm.kind == LinearKind::Logistic ? "logistic" : "perceptron";
  }
  doc["observation_kind"] = observation_kind_name(model.observation_kind);
  doc["feature_names"] = model.feature_names;

  if (std::holds_alternative<Forest>(model.model)) {
    const auto& forest = std::get<Forest>(model.model);
    ojson f;
    f["n_estimators"] = forest.params.n_estimators;
    f["max_features"] = max_features_name(forest.params.max_features);
    f["criterion"] = criterion_name(forest.params.criterion);
    f["max_depth"] = forest.params.max_depth;
    f["min_leaf"] = forest.params.min_leaf;
    f["seed"] = forest.params.seed;
    f["n_features"] = forest.n_features;
    ojson trees = ojson::array();
    for (const auto& t : forest.trees) trees.push_back(tree_to_json(t));
    f["trees"] = std::move(trees);
    doc["forest"] = std::move(f);
  } else if (std::holds_alternative<DecisionTree>(model.model)) {
    doc["tree"] = tree_to_json(std::get<DecisionTree>(model.model));
  } else {
    const auto& lm = std::get<LinearModel>(model.model);
    ojson l;
    l["weights"] = lm.weights;
    l["bias"] = lm.bias;
    l["feature_mean"] = lm.feature_mean;
    l["feature_std"] = lm.feature_std;
    doc["linear"] = std::move(l);
  }
  return doc.dump();
}

TrainedModel model_from_json(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw CorruptModel("model file is not a JSON object");

  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion)
      throw VersionMismatch("model format_version " + std::to_string(version) +
                            ", expected " + std::to_string(kModelFormatVersion));

    TrainedModel model;
    model.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    auto okind = observation_kind_from_name(
        doc.value("observation_kind", std::string("stroke")));
    if (!okind) throw CorruptModel("unknown observation_kind");
    model.observation_kind = *okind;

    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "forest") {
      const auto& f = doc.at("forest");
      Forest forest;
      forest.params.n_estimators = f.at("n_estimators").get<int>();
      forest.params.max_features =
          max_features_from_name(f.at("max_features").get<std::string>());
      forest.params.criterion =
          criterion_from_name(f.at("criterion").get<std::string>());
      forest.params.max_depth = f.at("max_depth").get<int>();
      forest.params.min_leaf = f.at("min_leaf").get<int>();
      forest.params.seed = f.at("seed").get<std::uint64_t>();
      forest.n_features = f.at("n_features").get<std::size_t>();
      for (const auto& t : f.at("trees")) forest.trees.push_back(tree_from_json(t));
      if (forest.trees.size() != static_cast<std::size_t>(forest.params.n_estimators))
        throw CorruptModel("tree count does not match n_estimators");
      model.model = std::move(forest);
    } else if (kind == "tree") {
      model.model = tree_from_json(doc.at("tree"));
    } else if (kind == "logistic" || kind == "perceptron") {
      const auto& l = doc.at("linear");
      LinearModel lm;
      lm.kind = kind == "logistic" ? LinearKind::Logistic : LinearKind::Perceptron;
      lm.weights = l.at("weights").get<std::vector<double>>();
      lm.bias = l.at("bias").get<double>();
      lm.feature_mean = l.at("feature_mean").get<std::vector<double>>();
      lm.feature_std = l.at("feature_std").get<std::vector<double>>();
      if (lm.weights.size() != lm.feature_mean.size() ||
          lm.weights.size() != lm.feature_std.size())
        throw CorruptModel("linear model field lengths disagree");
      model.model = std::move(lm);
    } else {
      throw CorruptModel("unknown model kind '" + kind + "'");
    }

    if (model.feature_names.size() != model_feature_count(model))
      throw CorruptModel("feature_names length does not match the model");
    return model;
  } catch (const VersionMismatch&) {
    throw;
  } catch (const CorruptModel&) {
    throw;
  } catch (const json::exception& e) {
    throw CorruptModel(std::string("malformed model document: ") + e.what());
  }
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model: " + path.string());
  out << model_to_json(model) << "\n";
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return model_from_json(text);
}

}  // namespace agekit
