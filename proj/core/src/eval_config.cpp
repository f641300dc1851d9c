#include <cmath>
#include <fstream>

#include <json.hpp>

#include "agekit/errors.hpp"
#include "agekit/evaluate.hpp"

namespace agekit {

namespace {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

ojson classifier_to_json(const ClassifierConfig& c) {
  ojson j;
  j["kind"] = c.kind;
  j["n_estimators"] = c.n_estimators;
  j["max_features"] = c.max_features;
  j["criterion"] = c.criterion;
  j["max_depth"] = c.max_depth;
  j["min_leaf"] = c.min_leaf;
  j["learning_rate"] = c.learning_rate;
  j["epochs"] = c.epochs;
  return j;
}

ClassifierConfig classifier_from_json(const json& j) {
  ClassifierConfig c;
  c.kind = j.value("kind", c.kind);
  c.n_estimators = j.value("n_estimators", c.n_estimators);
  c.max_features = j.value("max_features", c.max_features);
  c.criterion = j.value("criterion", c.criterion);
  c.max_depth = j.value("max_depth", c.max_depth);
  c.min_leaf = j.value("min_leaf", c.min_leaf);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.epochs = j.value("epochs", c.epochs);
  return c;
}

ojson config_to_ojson(const EvalConfig& c) {
  ojson j;
  j["approach"] = approach_name(c.approach);
  j["data_source"] = c.data_source;
  j["classifier"] = classifier_to_json(c.classifier);
  j["k_list"] = c.k_list;
  j["window_s"] = c.window_s;
  j["age_filter"] = age_filter_name(c.age_filter);
  j["folds"] = c.folds;
  j["mode"] = cv_mode_name(c.mode);
  j["stride"] = c.stride;
  j["seed"] = c.seed;
  j["top_k"] = c.top_k;
  j["selection_trees"] = c.selection_trees;
  j["per_fold_averaging"] = c.per_fold_averaging;
  j["threads"] = c.threads;
  j["segmentation"] = {{"gap_ms", c.segmentation.gap_ms},
                       {"tap_move_px", c.segmentation.tap_move_px},
                       {"tap_max_ms", c.segmentation.tap_max_ms}};
  return j;
}

}  // namespace

std::string eval_config_to_json(const EvalConfig& config, bool pretty) {
  return pretty ? config_to_ojson(config).dump(2) : config_to_ojson(config).dump();
}

EvalConfig eval_config_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ConfigError("evaluation config is not a JSON object");

  EvalConfig c;
  try {
    if (j.contains("approach")) {
      auto a = approach_from_name(j["approach"].get<std::string>());
      if (!a) throw ConfigError("unknown approach '" +
                                j["approach"].get<std::string>() + "'");
      c.approach = *a;
    }
    c.data_source = j.value("data_source", c.data_source);
    if (j.contains("classifier")) c.classifier = classifier_from_json(j["classifier"]);
    if (j.contains("k_list")) c.k_list = j["k_list"].get<std::vector<std::size_t>>();
    c.window_s = j.value("window_s", c.window_s);
    if (j.contains("age_filter")) {
      auto f = age_filter_from_name(j["age_filter"].get<std::string>());
      if (!f) throw ConfigError("unknown age_filter");
      c.age_filter = *f;
    }
    c.folds = j.value("folds", c.folds);
    if (j.contains("mode")) {
      auto m = cv_mode_from_name(j["mode"].get<std::string>());
      if (!m) throw ConfigError("unknown CV mode");
      c.mode = *m;
    }
    c.stride = j.value("stride", c.stride);
    c.seed = j.value("seed", c.seed);
    c.top_k = j.value("top_k", c.top_k);
    c.selection_trees = j.value("selection_trees", c.selection_trees);
    c.per_fold_averaging = j.value("per_fold_averaging", c.per_fold_averaging);
    c.threads = j.value("threads", c.threads);
    if (j.contains("segmentation")) {
      const auto& s = j["segmentation"];
      c.segmentation.gap_ms = s.value("gap_ms", c.segmentation.gap_ms);
      c.segmentation.tap_move_px = s.value("tap_move_px", c.segmentation.tap_move_px);
      c.segmentation.tap_max_ms = s.value("tap_max_ms", c.segmentation.tap_max_ms);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad evaluation config: ") + e.what());
  }
  if (c.folds < 2) throw ConfigError("folds must be >= 2");
  if (c.stride == 0) throw ConfigError("stride must be >= 1");
  if (c.k_list.empty()) throw ConfigError("k_list must not be empty");
  // The sensor approach follows the top-20 selection procedure by default.
  if (c.approach == Approach::Sensor && !j.contains("top_k")) c.top_k = 20;
  return c;
}

std::string report_to_json(const EvalReport& report) {
  ojson j;
  j["config"] = config_to_ojson(report.config);
  j["n_observations"] = report.n_observations;
  j["n_sessions"] = report.n_sessions;
  j["n_child_observations"] = report.n_child_observations;
  j["n_adult_observations"] = report.n_adult_observations;

  ojson results = ojson::array();
  for (const auto& r : report.results) {
    ojson e;
    e["k"] = r.k;
    e["auc"] = r.auc ? ojson(*r.auc) : ojson(nullptr);
    e["eer"] = r.eer ? ojson(*r.eer) : ojson(nullptr);
    e["n_child_bundles"] = r.n_child_bundles;
    e["n_adult_bundles"] = r.n_adult_bundles;
    results.push_back(std::move(e));
  }
  j["results"] = std::move(results);

  ojson audits = ojson::array();
  for (const auto& a : report.audits) {
    ojson e;
    e["n_train"] = a.n_train;
    e["n_test"] = a.n_test;
    e["train_hash"] = a.train_hash;
    e["test_hash"] = a.test_hash;
    e["disjoint"] = a.disjoint;
    e["selection_on_train_only"] = a.selection_on_train_only;
    audits.push_back(std::move(e));
  }
  j["fold_audits"] = std::move(audits);
  j["folds_disjoint"] = report.folds_disjoint;
  j["selection_train_only"] = report.selection_train_only;
  j["warnings"] = report.warnings;
  return j.dump(2);
}

void write_roc_csv(const RocCurve& curve, const std::string& config_echo,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  if (!config_echo.empty()) out << "# " << config_echo << "\n";
  out << "threshold,fpr,tpr\n";
  for (const auto& p : curve.points) {
    out << (std::isinf(p.threshold) ? std::string("inf")
                                    : format_double(p.threshold))
        << ',' << format_double(p.fpr) << ',' << format_double(p.tpr) << "\n";
  }
}

}  // namespace agekit
