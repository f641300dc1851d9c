// agekit command line: synthetic data generation, ingest, segmentation,
// feature extraction, training, bundled prediction and the evaluation
// harness (eval / sweep / ablate / compare / rank).
//
// Conventions: results go to files or stdout, logs go to stderr, every
// output artifact carries its resolved configuration. Exit codes: 0 ok,
// 1 usage/validation error, 2 data error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "agekit/classifier.hpp"
#include "agekit/dataset.hpp"
#include "agekit/errors.hpp"
#include "agekit/evaluate.hpp"
#include "agekit/fusion.hpp"
#include "agekit/model_io.hpp"
#include "agekit/parallel.hpp"
#include "agekit/sensor_features.hpp"
#include "agekit/session_io.hpp"
#include "agekit/synthgen.hpp"

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw agekit::Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void log(const std::string& msg) { std::cerr << "[agekit] " << msg << "\n"; }

struct DataSourceOpts {
  std::string manifest;
  std::string synth_config;

  void add_to(CLI::App* cmd) {
    auto* m = cmd->add_option("--manifest", manifest,
                              "Dataset manifest JSON (array of session entries)");
    auto* s = cmd->add_option("--synth-config", synth_config,
                              "Generator config; sessions are synthesized in memory");
    m->excludes(s);
  }

  std::vector<agekit::Session> load(unsigned threads, std::string* source_echo) const {
    if (!manifest.empty()) {
      if (source_echo) *source_echo = manifest;
      return agekit::load_sessions(manifest);
    }
    if (!synth_config.empty()) {
      if (source_echo) *source_echo = synth_config;
      return agekit::generate_dataset(agekit::load_gen_config(synth_config), threads);
    }
    throw agekit::ConfigError("need --manifest or --synth-config");
  }
};

agekit::ClassifierConfig* add_classifier_flags(CLI::App* cmd,
                                               agekit::ClassifierConfig& c) {
  cmd->add_option("--classifier", c.kind, "forest | tree | logistic | perceptron")
      ->capture_default_str();
  cmd->add_option("--n-estimators", c.n_estimators, "Forest size")
      ->capture_default_str();
  cmd->add_option("--max-features", c.max_features, "log2 | sqrt | all")
      ->capture_default_str();
  cmd->add_option("--criterion", c.criterion, "entropy | gini")
      ->capture_default_str();
  cmd->add_option("--max-depth", c.max_depth, "0 = unlimited")->capture_default_str();
  cmd->add_option("--min-leaf", c.min_leaf, "Minimum samples per leaf")
      ->capture_default_str();
  cmd->add_option("--learning-rate", c.learning_rate, "Linear models")
      ->capture_default_str();
  cmd->add_option("--epochs", c.epochs, "Linear models")->capture_default_str();
  return &c;
}

ojson classifier_echo(const agekit::ClassifierConfig& c) {
  return ojson{{"kind", c.kind},
               {"n_estimators", c.n_estimators},
               {"max_features", c.max_features},
               {"criterion", c.criterion},
               {"max_depth", c.max_depth},
               {"min_leaf", c.min_leaf},
               {"learning_rate", c.learning_rate},
               {"epochs", c.epochs}};
}

// Groups row indices by session id in first-appearance order.
std::vector<std::pair<std::string, std::vector<std::size_t>>> rows_by_session(
    const agekit::Dataset& data) {
  std::vector<std::pair<std::string, std::vector<std::size_t>>> out;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto [it, inserted] = index.emplace(data.groups[i], out.size());
    if (inserted) out.emplace_back(data.groups[i], std::vector<std::size_t>{});
    out[it->second].second.push_back(i);
  }
  return out;
}

int cmd_synth(const std::string& config_path, const std::string& out_dir,
              std::uint64_t seed_override, bool has_seed, unsigned threads) {
  agekit::GenConfig config;
  if (!config_path.empty()) config = agekit::load_gen_config(config_path);
  if (has_seed) config.seed = seed_override;

  const auto sessions = agekit::generate_dataset(config, threads);
  agekit::write_dataset(sessions, out_dir);
  {
    std::ofstream echo(fs::path(out_dir) / "gen_config.json");
    echo << agekit::gen_config_to_json(config) << "\n";
  }
  std::size_t gestures = 0, samples = 0;
  for (const auto& s : sessions) {
    gestures += s.touch_events.size();
    samples += s.sensor_sample_count();
  }
  log("wrote " + std::to_string(sessions.size()) + " sessions (" +
      std::to_string(gestures) + " touch events, " + std::to_string(samples) +
      " sensor samples) to " + out_dir);
  return 0;
}

int cmd_ingest(const std::string& manifest, std::int64_t tolerance_ms,
               const std::vector<std::string>& excluded_apps) {
  agekit::ParseOptions opts;
  opts.order_tolerance_ms = tolerance_ms;
  agekit::FilterPolicy policy;
  policy.excluded_app_ids.insert(excluded_apps.begin(), excluded_apps.end());

  const fs::path base = fs::path(manifest).parent_path();
  ojson summary;
  summary["manifest"] = manifest;
  summary["order_tolerance_ms"] = tolerance_ms;
  summary["excluded_app_ids"] = excluded_apps;
  ojson sessions = ojson::array();
  std::size_t n_child = 0, n_adult = 0;
  for (const auto& entry : agekit::load_manifest(manifest)) {
    agekit::ParseStats touch_stats, sensor_stats;
    agekit::Session s =
        agekit::load_session(entry, base, opts, &touch_stats, &sensor_stats);
    const std::size_t before_filter = s.touch_events.size();
    s = agekit::filter_session(std::move(s), policy);
    (s.label == agekit::Label::Child ? n_child : n_adult)++;
    ojson e;
    e["id"] = s.id;
    e["label"] = agekit::label_name(s.label);
    e["age_group"] = agekit::age_group_name(s.age_group);
    e["touch_events"] = s.touch_events.size();
    e["touch_events_filtered"] = before_filter - s.touch_events.size();
    e["sensor_samples"] = s.sensor_sample_count();
    e["touch_lines_skipped"] = touch_stats.skipped;
    e["sensor_lines_skipped"] = sensor_stats.skipped;
    sessions.push_back(std::move(e));
  }
  summary["n_sessions"] = sessions.size();
  summary["n_child"] = n_child;
  summary["n_adult"] = n_adult;
  summary["sessions"] = std::move(sessions);
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_segment(const std::string& manifest, const std::string& out_path,
                const agekit::SegmentationParams& params) {
  std::ofstream out(out_path);
  if (!out) throw agekit::Error("cannot write " + out_path);
  ojson echo;
  echo["config"] = ojson{{"manifest", manifest},
                         {"gap_ms", params.gap_ms},
                         {"tap_move_px", params.tap_move_px},
                         {"tap_max_ms", params.tap_max_ms}};
  out << echo.dump() << "\n";

  std::size_t n_complete = 0, n_incomplete = 0;
  for (const auto& session : agekit::load_sessions(manifest)) {
    for (const auto& g :
         agekit::segment_and_classify(session.touch_events, params)) {
      if (!g.complete) {
        ++n_incomplete;
        continue;
      }
      ++n_complete;
      ojson rec;
      rec["session"] = session.id;
      rec["kind"] = g.kind == agekit::GestureKind::Tap ? "tap" : "stroke";
      rec["t_start"] = g.t_start;
      rec["t_end"] = g.t_end;
      rec["n_points"] = g.points.size();
      out << rec.dump() << "\n";
    }
  }
  log(std::to_string(n_complete) + " gestures (" + std::to_string(n_incomplete) +
      " incomplete runs excluded)");
  return 0;
}

int cmd_extract(const DataSourceOpts& source, const std::string& kind_name,
                double window_s, const std::string& mask_path,
                const std::string& out_path,
                const agekit::SegmentationParams& seg, unsigned threads) {
  const auto kind = agekit::observation_kind_from_name(kind_name);
  if (!kind) throw agekit::ConfigError("unknown --kind '" + kind_name + "'");

  agekit::EvalConfig config;
  switch (*kind) {
    case agekit::ObservationKind::Tap: config.approach = agekit::Approach::TouchTap; break;
    case agekit::ObservationKind::Stroke: config.approach = agekit::Approach::TouchStroke; break;
    case agekit::ObservationKind::Sensor: config.approach = agekit::Approach::Sensor; break;
    case agekit::ObservationKind::TapSensor: config.approach = agekit::Approach::CombinedTap; break;
    case agekit::ObservationKind::StrokeSensor: config.approach = agekit::Approach::CombinedStroke; break;
  }
  config.window_s = window_s;
  config.segmentation = seg;

  const auto sessions = source.load(threads, &config.data_source);
  std::vector<std::string> warnings;
  agekit::Dataset data = agekit::extract_observations(config, sessions, &warnings);
  for (const auto& w : warnings) log(w);

  if (!mask_path.empty()) {
    agekit::FeatureMask mask;
    std::ifstream mask_in(mask_path);
    if (!mask_in) throw agekit::Error("cannot open mask " + mask_path);
    std::string name;
    while (std::getline(mask_in, name)) {
      while (!name.empty() && (name.back() == '\r' || name.back() == ' '))
        name.pop_back();
      if (!name.empty()) mask.push_back(name);
    }
    data = agekit::apply_mask(data, mask);
  }

  ojson echo;
  echo["command"] = "extract";
  echo["data_source"] = config.data_source;
  echo["kind"] = kind_name;
  echo["window_s"] = window_s;
  echo["mask"] = mask_path;
  echo["segmentation"] = ojson{{"gap_ms", seg.gap_ms},
                               {"tap_move_px", seg.tap_move_px},
                               {"tap_max_ms", seg.tap_max_ms}};
  agekit::write_csv(data, out_path, echo.dump());
  log("wrote " + std::to_string(data.size()) + " x " +
      std::to_string(data.n_features()) + " feature rows to " + out_path);
  return 0;
}

int cmd_train(const std::string& features_path, const std::string& out_path,
              const agekit::ClassifierConfig& config, std::uint64_t seed,
              unsigned threads) {
  const agekit::Dataset data = agekit::read_csv(features_path);
  const agekit::TrainedModel model =
      agekit::train_classifier(data, config, seed, threads);
  agekit::save_model(model, out_path);
  log("trained " + config.kind + " on " + std::to_string(data.size()) +
      " rows, wrote " + out_path);
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& features_path,
                std::size_t k, double threshold, std::size_t stride,
                const std::string& out_path) {
  if (threshold <= 0.0 || threshold >= 1.0)
    throw agekit::ConfigError("threshold must be in (0,1)");
  const agekit::TrainedModel model = agekit::load_model(model_path);
  agekit::Dataset data = agekit::read_csv(features_path);
  if (data.names != model.feature_names)
    data = agekit::apply_mask(data, model.feature_names);

  std::ofstream out(out_path);
  if (!out) throw agekit::Error("cannot write " + out_path);
  ojson echo;
  echo["config"] = ojson{{"model", model_path},
                         {"features", features_path},
                         {"k", k},
                         {"threshold", threshold},
                         {"stride", stride}};
  out << echo.dump() << "\n";

  std::size_t n_bundles = 0;
  for (const auto& [session, rows] : rows_by_session(data)) {
    std::vector<double> scores;
    scores.reserve(rows.size());
    for (std::size_t i : rows)
      scores.push_back(agekit::predict_score(model, data.row(i)));
    std::size_t bundle_index = 0;
    for (const auto& bundle : agekit::make_bundles(scores, k, stride)) {
      const agekit::Decision d = agekit::decide(bundle.fused, threshold);
      ojson rec;
      rec["session"] = session;
      rec["bundle"] = bundle_index++;
      rec["k"] = k;
      rec["fused"] = d.fused;
      rec["threshold"] = d.threshold;
      rec["verdict"] = agekit::label_name(d.verdict);
      out << rec.dump() << "\n";
      ++n_bundles;
    }
  }
  log(std::to_string(n_bundles) + " bundle decisions written to " + out_path);
  return 0;
}

agekit::EvalConfig load_eval_config(const std::string& config_path,
                                    const DataSourceOpts& source,
                                    unsigned threads, bool threads_set) {
  agekit::EvalConfig config;
  if (!config_path.empty())
    config = agekit::eval_config_from_json(read_text_file(config_path));
  if (threads_set || config.threads == 0) config.threads = threads;
  if (!source.manifest.empty()) config.data_source = source.manifest;
  else if (!source.synth_config.empty()) config.data_source = source.synth_config;
  return config;
}

std::vector<agekit::Session> load_eval_sessions(const agekit::EvalConfig& config,
                                                const DataSourceOpts& source) {
  DataSourceOpts effective = source;
  if (effective.manifest.empty() && effective.synth_config.empty()) {
    // Fall back to the config file's data_source; decide by extension-free
    // heuristic: generator configs hold profiles, manifests hold sessions.
    if (config.data_source.empty())
      throw agekit::ConfigError("no data source: pass --manifest or --synth-config");
    effective.manifest = config.data_source;
  }
  std::string ignored;
  return effective.load(config.threads, &ignored);
}

int cmd_eval(const std::string& config_path, const DataSourceOpts& source,
             const std::string& scores_path, const std::string& out_path,
             const std::string& roc_path, std::size_t roc_k, unsigned threads,
             bool threads_set) {
  agekit::EvalConfig config =
      load_eval_config(config_path, source, threads, threads_set);
  agekit::EvalReport report;
  if (!scores_path.empty()) {
    // Precomputed per-observation scores from any external classifier.
    config.data_source = scores_path;
    report = agekit::evaluate_scores(config, agekit::read_csv(scores_path));
  } else {
    const auto sessions = load_eval_sessions(config, source);
    report = agekit::evaluate_pipeline(config, sessions);
  }

  {
    std::ofstream out(out_path);
    if (!out) throw agekit::Error("cannot write " + out_path);
    out << agekit::report_to_json(report) << "\n";
  }
  for (const auto& w : report.warnings) log("warning: " + w);
  for (const auto& r : report.results) {
    std::ostringstream line;
    line << "k=" << r.k;
    if (r.auc) line << " auc=" << *r.auc;
    if (r.eer) line << " eer=" << *r.eer;
    log(line.str());
  }

  if (!roc_path.empty()) {
    const std::size_t want = roc_k > 0 ? roc_k : config.k_list.front();
    const agekit::KResult* r = report.result_for(want);
    if (r == nullptr || r->child_bundle_scores.empty() ||
        r->adult_bundle_scores.empty())
      throw agekit::EmptySide("no bundle scores at k=" + std::to_string(want) +
                              " for the ROC export");
    const auto curve =
        agekit::roc_curve(r->child_bundle_scores, r->adult_bundle_scores);
    agekit::write_roc_csv(curve,
                          agekit::eval_config_to_json(config, /*pretty=*/false),
                          roc_path);
  }
  log("report written to " + out_path);
  return 0;
}

int cmd_sweep(const std::string& config_path, const DataSourceOpts& source,
              int n_from, int n_to, const std::string& out_path,
              unsigned threads, bool threads_set) {
  if (n_from < 1 || n_to < n_from)
    throw agekit::ConfigError("need 1 <= n-from <= n-to");
  agekit::EvalConfig config =
      load_eval_config(config_path, source, threads, threads_set);
  config.approach = agekit::Approach::Sensor;
  const auto sessions = load_eval_sessions(config, source);

  std::vector<double> n_list;
  for (int n = n_from; n <= n_to; ++n) n_list.push_back(n);
  const auto rows = agekit::sweep_window(config, sessions, n_list);

  std::ofstream out(out_path);
  if (!out) throw agekit::Error("cannot write " + out_path);
  out << "# " << agekit::eval_config_to_json(config, /*pretty=*/false) << "\n";
  out << "window_s,auc,eer,n_windows\n";
  for (const auto& r : rows) {
    out << agekit::format_double(r.window_s) << ','
        << (r.auc ? agekit::format_double(*r.auc) : "") << ','
        << (r.eer ? agekit::format_double(*r.eer) : "") << ','
        << r.n_windows << "\n";
  }
  log("sweep table written to " + out_path);
  return 0;
}

int cmd_ablate(const std::string& config_path, const DataSourceOpts& source,
               const std::vector<std::string>& keep_names,
               const std::string& keep_substring, const std::string& out_path,
               unsigned threads, bool threads_set) {
  if (keep_names.empty() && keep_substring.empty())
    throw agekit::ConfigError("need --keep or --keep-substring");
  const agekit::EvalConfig config =
      load_eval_config(config_path, source, threads, threads_set);
  const auto sessions = load_eval_sessions(config, source);

  auto keep = [&](const std::string& name) {
    if (!keep_substring.empty() && name.find(keep_substring) != std::string::npos)
      return true;
    for (const auto& k : keep_names)
      if (k == name) return true;
    return false;
  };
  const agekit::EvalReport report = agekit::ablate_features(config, sessions, keep);

  std::ofstream out(out_path);
  if (!out) throw agekit::Error("cannot write " + out_path);
  out << agekit::report_to_json(report) << "\n";
  for (const auto& r : report.results) {
    std::ostringstream line;
    line << "k=" << r.k;
    if (r.auc) line << " auc=" << *r.auc;
    log(line.str());
  }
  log("ablation report written to " + out_path);
  return 0;
}

int cmd_compare(const std::string& config_path, const DataSourceOpts& source,
                const std::string& grid_path, const std::string& out_path,
                unsigned threads, bool threads_set) {
  const agekit::EvalConfig config =
      load_eval_config(config_path, source, threads, threads_set);
  const auto sessions = load_eval_sessions(config, source);

  std::vector<std::pair<std::string, std::vector<agekit::ClassifierConfig>>> grids;
  const auto grid_doc = nlohmann::json::parse(read_text_file(grid_path), nullptr, false);
  if (grid_doc.is_discarded() || !grid_doc.is_array())
    throw agekit::ConfigError("grid file must be a JSON array");
  for (const auto& entry : grid_doc) {
    std::vector<agekit::ClassifierConfig> params;
    for (const auto& p : entry.at("params")) {
      agekit::ClassifierConfig c;
      c.kind = p.value("kind", entry.value("name", c.kind));
      c.n_estimators = p.value("n_estimators", c.n_estimators);
      c.max_features = p.value("max_features", c.max_features);
      c.criterion = p.value("criterion", c.criterion);
      c.max_depth = p.value("max_depth", c.max_depth);
      c.min_leaf = p.value("min_leaf", c.min_leaf);
      c.learning_rate = p.value("learning_rate", c.learning_rate);
      c.epochs = p.value("epochs", c.epochs);
      params.push_back(std::move(c));
    }
    grids.emplace_back(entry.at("name").get<std::string>(), std::move(params));
  }

  const auto rows = agekit::compare_classifiers(config, sessions, grids);
  std::ofstream out(out_path);
  if (!out) throw agekit::Error("cannot write " + out_path);
  out << "# " << agekit::eval_config_to_json(config, /*pretty=*/false) << "\n";
  out << "classifier,auc,best,params\n";
  for (const auto& row : rows) {
    for (const auto& [params, auc_value] : row.grid) {
      const bool is_best = row.best_auc && auc_value &&
                           *auc_value == *row.best_auc;
      out << row.classifier << ','
          << (auc_value ? agekit::format_double(*auc_value) : "") << ','
          << (is_best ? 1 : 0) << ','
          << '"' << classifier_echo(params).dump() << '"' << "\n";
    }
    if (row.best_auc)
      log(row.classifier + ": best auc " + agekit::format_double(*row.best_auc));
  }
  log("comparison table written to " + out_path);
  return 0;
}

int cmd_rank(const std::string& features_path, std::uint64_t seed,
             int n_estimators, const std::string& out_path, unsigned threads) {
  const agekit::Dataset data = agekit::read_csv(features_path);
  agekit::ForestParams params;
  params.n_estimators = n_estimators;
  params.seed = seed;
  const agekit::Forest forest = agekit::train_forest(data, params, threads);

  std::ofstream out(out_path);
  if (!out) throw agekit::Error("cannot write " + out_path);
  ojson echo;
  echo["command"] = "rank";
  echo["features"] = features_path;
  echo["seed"] = seed;
  echo["n_estimators"] = n_estimators;
  out << "# " << echo.dump() << "\n";
  out << "rank,feature,importance\n";
  std::size_t rank = 1;
  for (const auto& [name, importance] :
       agekit::ranked_importance(forest, data.names)) {
    out << rank++ << ',' << name << ',' << agekit::format_double(importance)
        << "\n";
  }
  log("importance ranking written to " + out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Child-vs-adult detection from touch gestures and motion sensors"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  unsigned threads = agekit::default_threads();
  app.add_option("--threads", threads, "Worker threads (results do not depend on it)")
      ->capture_default_str();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a labeled synthetic dataset");
  std::string synth_config, synth_out;
  std::uint64_t synth_seed = 0;
  synth->add_option("--config", synth_config, "Generator config JSON (defaults when omitted)");
  synth->add_option("--out", synth_out, "Output directory")->required();
  auto* synth_seed_opt = synth->add_option("--seed", synth_seed, "Overrides the config seed");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Parse and validate a dataset, print a summary");
  std::string ingest_manifest;
  std::int64_t ingest_tolerance = 0;
  std::vector<std::string> ingest_excluded;
  ingest->add_option("--manifest", ingest_manifest)->required();
  ingest->add_option("--order-tolerance-ms", ingest_tolerance)->capture_default_str();
  ingest->add_option("--exclude-app-id", ingest_excluded,
                     "Strip head/tail events from these app ids");

  // segment
  auto* segment = app.add_subcommand("segment", "Emit a JSONL gesture index");
  std::string segment_manifest, segment_out;
  agekit::SegmentationParams seg_params;
  segment->add_option("--manifest", segment_manifest)->required();
  segment->add_option("--out", segment_out)->required();
  segment->add_option("--gap-ms", seg_params.gap_ms)->capture_default_str();
  segment->add_option("--tap-move-px", seg_params.tap_move_px)->capture_default_str();
  segment->add_option("--tap-max-ms", seg_params.tap_max_ms)->capture_default_str();

  // extract
  auto* extract = app.add_subcommand("extract", "Write a feature CSV");
  DataSourceOpts extract_source;
  extract_source.add_to(extract);
  std::string extract_kind, extract_mask, extract_out;
  double extract_window_s = 1.0;
  agekit::SegmentationParams extract_seg;
  extract->add_option("--kind", extract_kind,
                      "tap | stroke | sensor | tap+sensor | stroke+sensor")->required();
  extract->add_option("--window-s", extract_window_s, "Sensor window size (s)")
      ->capture_default_str();
  extract->add_option("--mask", extract_mask, "Feature mask file, one name per line");
  extract->add_option("--out", extract_out)->required();
  extract->add_option("--gap-ms", extract_seg.gap_ms)->capture_default_str();
  extract->add_option("--tap-move-px", extract_seg.tap_move_px)->capture_default_str();
  extract->add_option("--tap-max-ms", extract_seg.tap_max_ms)->capture_default_str();

  // train
  auto* train = app.add_subcommand("train", "Train a classifier on a feature CSV");
  std::string train_features, train_out;
  std::uint64_t train_seed = 42;
  agekit::ClassifierConfig train_classifier_config;
  train->add_option("--features", train_features)->required();
  train->add_option("--out", train_out)->required();
  train->add_option("--seed", train_seed)->capture_default_str();
  add_classifier_flags(train, train_classifier_config);

  // predict
  auto* predict = app.add_subcommand("predict", "Bundle scores and emit decisions");
  std::string predict_model, predict_features, predict_out;
  std::size_t predict_k = 8, predict_stride = 1;
  double predict_threshold = 0.5;
  predict->add_option("--model", predict_model)->required();
  predict->add_option("--features", predict_features)->required();
  predict->add_option("--k", predict_k, "Bundle size")->capture_default_str();
  predict->add_option("--threshold", predict_threshold)->capture_default_str();
  predict->add_option("--stride", predict_stride)->capture_default_str();
  predict->add_option("--out", predict_out)->required();

  // eval
  auto* eval = app.add_subcommand("eval", "Cross-validated AUC/EER per bundle size");
  DataSourceOpts eval_source;
  eval_source.add_to(eval);
  std::string eval_config_path, eval_out, eval_roc_out, eval_scores;
  std::size_t eval_roc_k = 0;
  eval->add_option("--config", eval_config_path, "Evaluation config JSON");
  eval->add_option("--scores", eval_scores,
                   "CSV of precomputed scores (score,label,group) from an "
                   "external classifier; skips training");
  eval->add_option("--out", eval_out)->required();
  eval->add_option("--roc-out", eval_roc_out, "ROC CSV (threshold,fpr,tpr)");
  eval->add_option("--roc-k", eval_roc_k, "Bundle size for the ROC export");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Window-size sweep (sensor approach)");
  DataSourceOpts sweep_source;
  sweep_source.add_to(sweep);
  std::string sweep_config_path, sweep_out;
  int sweep_from = 1, sweep_to = 20;
  sweep->add_option("--config", sweep_config_path);
  sweep->add_option("--n-from", sweep_from)->capture_default_str();
  sweep->add_option("--n-to", sweep_to)->capture_default_str();
  sweep->add_option("--out", sweep_out)->required();

  // ablate
  auto* ablate = app.add_subcommand("ablate", "Evaluate with a feature subset");
  DataSourceOpts ablate_source;
  ablate_source.add_to(ablate);
  std::string ablate_config_path, ablate_out, ablate_substring;
  std::vector<std::string> ablate_keep;
  ablate->add_option("--config", ablate_config_path);
  ablate->add_option("--keep", ablate_keep, "Exact feature names to keep");
  ablate->add_option("--keep-substring", ablate_substring,
                     "Keep features whose name contains this");
  ablate->add_option("--out", ablate_out)->required();

  // compare
  auto* compare = app.add_subcommand("compare", "Grid-search classifiers, report best AUC each");
  DataSourceOpts compare_source;
  compare_source.add_to(compare);
  std::string compare_config_path, compare_grid, compare_out;
  compare->add_option("--config", compare_config_path);
  compare->add_option("--grid", compare_grid, "JSON: [{name, params:[{...}]}]")->required();
  compare->add_option("--out", compare_out)->required();

  // rank
  auto* rank = app.add_subcommand("rank", "Forest importance ranking of a feature CSV");
  std::string rank_features, rank_out;
  std::uint64_t rank_seed = 42;
  int rank_estimators = 200;
  rank->add_option("--features", rank_features)->required();
  rank->add_option("--out", rank_out)->required();
  rank->add_option("--seed", rank_seed)->capture_default_str();
  rank->add_option("--n-estimators", rank_estimators)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*synth)
      return cmd_synth(synth_config, synth_out, synth_seed,
                       synth_seed_opt->count() > 0, threads);
    if (*ingest) return cmd_ingest(ingest_manifest, ingest_tolerance, ingest_excluded);
    if (*segment) return cmd_segment(segment_manifest, segment_out, seg_params);
    if (*extract)
      return cmd_extract(extract_source, extract_kind, extract_window_s,
                         extract_mask, extract_out, extract_seg, threads);
    if (*train)
      return cmd_train(train_features, train_out, train_classifier_config,
                       train_seed, threads);
    if (*predict)
      return cmd_predict(predict_model, predict_features, predict_k,
                         predict_threshold, predict_stride, predict_out);
    if (*eval)
      return cmd_eval(eval_config_path, eval_source, eval_scores, eval_out,
                      eval_roc_out, eval_roc_k, threads,
                      app.count("--threads") > 0);
    if (*sweep)
      return cmd_sweep(sweep_config_path, sweep_source, sweep_from, sweep_to,
                       sweep_out, threads, app.count("--threads") > 0);
    if (*ablate)
      return cmd_ablate(ablate_config_path, ablate_source, ablate_keep,
                        ablate_substring, ablate_out, threads,
                        app.count("--threads") > 0);
    if (*compare)
      return cmd_compare(compare_config_path, compare_source, compare_grid,
                         compare_out, threads, app.count("--threads") > 0);
    if (*rank)
      return cmd_rank(rank_features, rank_seed, rank_estimators, rank_out, threads);
  } catch (const agekit::ConfigError& e) {
    log(std::string("error: ") + e.what());
    return 1;
  } catch (const agekit::Error& e) {
    log(std::string("error: ") + e.what());
    return 2;
  } catch (const std::exception& e) {
    log(std::string("error: ") + e.what());
    return 2;
  }
  return 1;
}
