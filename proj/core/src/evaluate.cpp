#include "agekit/evaluate.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "agekit/errors.hpp"
#include "agekit/fusion.hpp"
#include "agekit/rng.hpp"
#include "agekit/sensor_features.hpp"
#include "agekit/touch_features.hpp"

namespace agekit {

namespace {

constexpr std::uint64_t kSelectionStream = 0x5e1ec7ULL;
constexpr std::uint64_t kClassifierStream = 0xc1a55ULL;

std::uint64_t fold_seed(std::uint64_t seed, int fold, std::uint64_t domain) {
  std::uint64_t state = seed ^ (domain * 0x9e3779b97f4a7c15ULL) ^
                        (static_cast<std::uint64_t>(fold) << 32);
  return splitmix64(state);
}

std::uint64_t index_set_hash(std::span<const std::size_t> indices) {
  std::uint64_t acc = 0;
  for (std::size_t i : indices) {
    std::uint64_t state = 0x61c8864680b583ebULL ^ static_cast<std::uint64_t>(i);
    acc += splitmix64(state);
  }
  return acc;
}

bool keeps_session(const Session& s, AgeFilter filter) {
  if (s.label == Label::Adult) return true;
  switch (filter) {
    case AgeFilter::All: return true;
    case AgeFilter::YoungChild: return s.age_group == AgeGroup::YoungChild;
    case AgeFilter::OlderChild: return s.age_group == AgeGroup::OlderChild;
  }
  return true;
}

void append_names(Dataset& data, const std::vector<std::string>& touch,
                  bool with_sensor) {
  data.names = touch;
  if (with_sensor) {
    const auto& sensor = sensor_feature_names();
    data.names.insert(data.names.end(), sensor.begin(), sensor.end());
  }
}

}  // namespace

const char* approach_name(Approach a) {
  switch (a) {
    case Approach::TouchTap: return "touch-tap";
    case Approach::TouchStroke: return "touch-stroke";
    case Approach::Sensor: return "sensor";
    case Approach::CombinedTap: return "combined-tap";
    case Approach::CombinedStroke: return "combined-stroke";
  }
  return "?";
}

std::optional<Approach> approach_from_name(const std::string& name) {
  if (name == "touch-tap") return Approach::TouchTap;
  if (name == "touch-stroke") return Approach::TouchStroke;
  if (name == "sensor") return Approach::Sensor;
  if (name == "combined-tap") return Approach::CombinedTap;
  if (name == "combined-stroke") return Approach::CombinedStroke;
  return std::nullopt;
}

const char* cv_mode_name(CvMode m) {
  return m == CvMode::Record ? "record" : "session";
}

std::optional<CvMode> cv_mode_from_name(const std::string& name) {
  if (name == "record") return CvMode::Record;
  if (name == "session") return CvMode::Session;
  return std::nullopt;
}

const char* age_filter_name(AgeFilter f) {
  switch (f) {
    case AgeFilter::All: return "all";
    case AgeFilter::YoungChild: return "young_child";
    case AgeFilter::OlderChild: return "older_child";
  }
  return "?";
}

std::optional<AgeFilter> age_filter_from_name(const std::string& name) {
  if (name == "all") return AgeFilter::All;
  if (name == "young_child") return AgeFilter::YoungChild;
  if (name == "older_child") return AgeFilter::OlderChild;
  return std::nullopt;
}

const KResult* EvalReport::result_for(std::size_t k) const {
  for (const auto& r : results)
    if (r.k == k) return &r;
  return nullptr;
}

FoldAssignment kfold_split(std::span<const Label> labels,
                           std::span<const std::string> groups, int folds,
                           CvMode mode, std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (folds < 2) throw TooFewSamples("need at least 2 folds");
  if (n < static_cast<std::size_t>(folds))
    throw TooFewSamples("fewer samples than folds");

  FoldAssignment assignment;
  assignment.folds = folds;
  assignment.fold_of.assign(n, -1);

  if (mode == CvMode::Record) {
    std::vector<std::size_t> child_idx, adult_idx;
    for (std::size_t i = 0; i < n; ++i)
      (labels[i] == Label::Child ? child_idx : adult_idx).push_back(i);

    Rng rng(seed);
    auto shuffle = [&](std::vector<std::size_t>& v) {
      for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.uniform_int(i)]);
    };
    shuffle(child_idx);
    shuffle(adult_idx);

    // Deal one running counter across both classes: total fold sizes differ
    // by at most one, per-class counts stay stratified.
    std::size_t counter = 0;
    for (std::size_t i : child_idx)
      assignment.fold_of[i] = static_cast<int>(counter++ % folds);
    for (std::size_t i : adult_idx)
      assignment.fold_of[i] = static_cast<int>(counter++ % folds);
  } else {
    // Distinct groups in first-appearance order, each with its label.
    std::vector<std::string> order;
    std::unordered_map<std::string, Label> label_of;
    for (std::size_t i = 0; i < n; ++i) {
      if (label_of.emplace(groups[i], labels[i]).second)
        order.push_back(groups[i]);
    }
    if (order.size() < static_cast<std::size_t>(folds))
      throw TooFewSamples("fewer sessions than folds");

    std::vector<std::string> child_groups, adult_groups;
    for (const auto& g : order)
      (label_of[g] == Label::Child ? child_groups : adult_groups).push_back(g);

    Rng rng(seed);
    auto shuffle = [&](std::vector<std::string>& v) {
      for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.uniform_int(i)]);
    };
    shuffle(child_groups);
    shuffle(adult_groups);

    std::unordered_map<std::string, int> fold_of_group;
    std::size_t counter = 0;
    for (const auto& g : child_groups)
      fold_of_group[g] = static_cast<int>(counter++ % folds);
    for (const auto& g : adult_groups)
      fold_of_group[g] = static_cast<int>(counter++ % folds);
    for (std::size_t i = 0; i < n; ++i)
      assignment.fold_of[i] = fold_of_group[groups[i]];
  }
  return assignment;
}

Dataset extract_observations(const EvalConfig& config,
                             std::span<const Session> sessions,
                             std::vector<std::string>* warnings) {
  Dataset data;
  const bool combined = config.approach == Approach::CombinedTap ||
                        config.approach == Approach::CombinedStroke;
  const bool wants_tap = config.approach == Approach::TouchTap ||
                         config.approach == Approach::CombinedTap;

  switch (config.approach) {
    case Approach::TouchTap:
      append_names(data, tap_feature_names(), false);
      data.kind = ObservationKind::Tap;
      break;
    case Approach::TouchStroke:
      append_names(data, stroke_feature_names(), false);
      data.kind = ObservationKind::Stroke;
      break;
    case Approach::Sensor:
      data.names = sensor_feature_names();
      data.kind = ObservationKind::Sensor;
      break;
    case Approach::CombinedTap:
      append_names(data, tap_feature_names(), true);
      data.kind = ObservationKind::TapSensor;
      break;
    case Approach::CombinedStroke:
      append_names(data, stroke_feature_names(), true);
      data.kind = ObservationKind::StrokeSensor;
      break;
  }

  std::size_t sparse_skipped = 0;
  std::size_t windows_dropped = 0;
  for (const auto& session : sessions) {
    if (!keeps_session(session, config.age_filter)) continue;

    if (config.approach == Approach::Sensor) {
      auto result = segment_windows(session, config.window_s);
      windows_dropped += result.dropped_sparse;
      std::vector<double> row;
      for (const auto& w : result.windows) {
        const auto features = window_features(w);
        row.assign(features.begin(), features.end());
        data.add_row(row, session.label, session.id);
      }
      continue;
    }

    const auto gestures =
        segment_and_classify(session.touch_events, config.segmentation);
    std::vector<double> row;
    for (const auto& g : gestures) {
      if (!g.complete) continue;
      const bool is_tap = g.kind == GestureKind::Tap;
      if (is_tap != wants_tap) continue;
      row.clear();
      if (is_tap) {
        const auto f = tap_features(g);
        row.assign(f.begin(), f.end());
      } else {
        const auto f = stroke_features(g);
        row.assign(f.begin(), f.end());
      }
      if (combined) {
        const SensorWindow w = gesture_window(session, g);
        if (w.sparse) {
          ++sparse_skipped;
          continue;
        }
        const auto f = window_features(w);
        row.insert(row.end(), f.begin(), f.end());
      }
      data.add_row(row, session.label, session.id);
    }
  }

  if (warnings) {
    if (sparse_skipped > 0)
      warnings->push_back(std::to_string(sparse_skipped) +
                          " gestures skipped: sparse sensor window");
    if (windows_dropped > 0)
      warnings->push_back(std::to_string(windows_dropped) +
                          " windows dropped: fewer than 3 samples in a sensor");
  }
  return data;
}

namespace {

struct SessionScores {
  std::vector<double> scores;  // chronological within the session
  Label label = Label::Adult;
};

// Session order follows first appearance in the dataset, keeping pooled
// metric inputs deterministic.
std::vector<SessionScores> scores_by_session(const Dataset& data,
                                             std::span<const double> oof,
                                             std::span<const int> fold_of,
                                             int only_fold) {
  std::vector<SessionScores> sessions;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (only_fold >= 0 && fold_of[i] != only_fold) continue;
    auto [it, inserted] = index.emplace(data.groups[i], sessions.size());
    if (inserted) {
      sessions.emplace_back();
      sessions.back().label = data.labels[i];
    }
    sessions[it->second].scores.push_back(oof[i]);
  }
  return sessions;
}

struct PooledBundles {
  std::vector<double> pos;
  std::vector<double> neg;
};

PooledBundles bundle_scores(const std::vector<SessionScores>& sessions,
                            std::size_t k, std::size_t stride) {
  PooledBundles out;
  for (const auto& s : sessions) {
    for (const auto& b : make_bundles(s.scores, k, stride))
      (s.label == Label::Child ? out.pos : out.neg).push_back(b.fused);
  }
  return out;
}

}  // namespace

EvalReport evaluate_dataset(const EvalConfig& config, const Dataset& data) {
  EvalReport report;
  report.config = config;
  report.n_observations = data.size();
  for (Label l : data.labels)
    (l == Label::Child ? report.n_child_observations
                       : report.n_adult_observations)++;
  if (data.size() == 0) throw EmptyData("no observations to evaluate");
  if (report.n_child_observations == 0 || report.n_adult_observations == 0)
    throw SingleClass("evaluation needs both classes");

  {
    std::unordered_map<std::string, bool> seen;
    for (const auto& g : data.groups) seen.emplace(g, true);
    report.n_sessions = seen.size();
  }

  const FoldAssignment folds = kfold_split(data.labels, data.groups,
                                           config.folds, config.mode, config.seed);

  std::vector<double> oof(data.size(), 0.0);
  for (int fold = 0; fold < config.folds; ++fold) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < data.size(); ++i)
      (folds.fold_of[i] == fold ? test_idx : train_idx).push_back(i);

    FoldAudit audit;
    audit.n_train = train_idx.size();
    audit.n_test = test_idx.size();
    audit.train_hash = index_set_hash(train_idx);
    audit.test_hash = index_set_hash(test_idx);
    audit.disjoint = true;  // by construction; re-verified below
    for (std::size_t i = 0; i < data.size(); ++i) {
      const bool in_test = folds.fold_of[i] == fold;
      // A row in both sets would double-count; fold_of makes this impossible,
      // keep the check as the leakage guard.
      if (in_test && std::binary_search(train_idx.begin(), train_idx.end(), i))
        audit.disjoint = false;
    }
    if (test_idx.empty()) {
      report.warnings.push_back("fold " + std::to_string(fold) + " is empty");
      report.audits.push_back(audit);
      continue;
    }

    Dataset train = data.select_rows(train_idx);
    Dataset test = data.select_rows(test_idx);

    if (config.top_k > 0) {
      std::uint64_t seen_hash = 0;
      const FeatureMask mask = select_top_k(
          train, static_cast<std::size_t>(config.top_k),
          fold_seed(config.seed, fold, kSelectionStream), config.selection_trees,
          config.threads, &seen_hash);
      audit.selection_on_train_only = seen_hash == row_content_hash(train);
      train = apply_mask(train, mask);
      test = apply_mask(test, mask);
    }

    const TrainedModel model = train_classifier(
        train, config.classifier, fold_seed(config.seed, fold, kClassifierStream),
        config.threads);
    for (std::size_t j = 0; j < test_idx.size(); ++j)
      oof[test_idx[j]] = predict_score(model, test.row(j));

    report.audits.push_back(audit);
  }

  for (const auto& audit : report.audits) {
    report.folds_disjoint = report.folds_disjoint && audit.disjoint;
    report.selection_train_only =
        report.selection_train_only && audit.selection_on_train_only;
  }

  for (std::size_t k : config.k_list) {
    KResult result;
    result.k = k;
    if (config.per_fold_averaging) {
      double auc_sum = 0.0, eer_sum = 0.0;
      std::size_t n_folds_used = 0;
      for (int fold = 0; fold < config.folds; ++fold) {
        const auto sessions = scores_by_session(data, oof, folds.fold_of, fold);
        const auto bundles = bundle_scores(sessions, k, config.stride);
        result.n_child_bundles += bundles.pos.size();
        result.n_adult_bundles += bundles.neg.size();
        if (bundles.pos.empty() || bundles.neg.empty()) continue;
        auc_sum += auc(bundles.pos, bundles.neg);
        eer_sum += roc_and_eer(bundles.pos, bundles.neg).second;
        ++n_folds_used;
      }
      if (n_folds_used > 0) {
        result.auc = auc_sum / static_cast<double>(n_folds_used);
        result.eer = eer_sum / static_cast<double>(n_folds_used);
        if (n_folds_used < static_cast<std::size_t>(config.folds))
          report.warnings.push_back("k=" + std::to_string(k) + ": only " +
                                    std::to_string(n_folds_used) +
                                    " folds had bundles on both sides");
      } else {
        report.warnings.push_back("k=" + std::to_string(k) +
                                  ": no fold produced bundles on both sides");
      }
    } else {
      const auto sessions = scores_by_session(data, oof, folds.fold_of, -1);
      auto bundles = bundle_scores(sessions, k, config.stride);
      result.n_child_bundles = bundles.pos.size();
      result.n_adult_bundles = bundles.neg.size();
      if (!bundles.pos.empty() && !bundles.neg.empty()) {
        result.auc = auc(bundles.pos, bundles.neg);
        result.eer = roc_and_eer(bundles.pos, bundles.neg).second;
        result.child_bundle_scores = std::move(bundles.pos);
        result.adult_bundle_scores = std::move(bundles.neg);
      } else {
        report.warnings.push_back(
            "k=" + std::to_string(k) +
            " produced no bundles on at least one side (k larger than "
            "per-session score counts?)");
      }
    }
    if (result.auc && *result.auc < 0.5)
      report.warnings.push_back("k=" + std::to_string(k) +
                                ": AUC below 0.5; scores may be inverted");
    report.results.push_back(std::move(result));
  }
  return report;
}

EvalReport evaluate_pipeline(const EvalConfig& config,
                             std::span<const Session> sessions) {
  std::vector<std::string> warnings;
  const Dataset data = extract_observations(config, sessions, &warnings);
  EvalReport report = evaluate_dataset(config, data);
  report.warnings.insert(report.warnings.begin(), warnings.begin(), warnings.end());
  return report;
}

EvalReport evaluate_scores(const EvalConfig& config, const Dataset& scores) {
  if (scores.n_features() != 1 || scores.names.front() != "score")
    throw ConfigError("external scores need the single feature column 'score'");
  if (scores.size() == 0) throw EmptyData("no scores to evaluate");
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double s = scores.row(i)[0];
    if (!(s >= 0.0 && s <= 1.0))
      throw ConfigError("score outside [0,1] at row " + std::to_string(i + 1));
  }

  EvalReport report;
  report.config = config;
  report.n_observations = scores.size();
  for (Label l : scores.labels)
    (l == Label::Child ? report.n_child_observations
                       : report.n_adult_observations)++;
  if (report.n_child_observations == 0 || report.n_adult_observations == 0)
    throw SingleClass("scores cover only one class");
  {
    std::unordered_map<std::string, bool> seen;
    for (const auto& g : scores.groups) seen.emplace(g, true);
    report.n_sessions = seen.size();
  }

  std::vector<double> values(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) values[i] = scores.row(i)[0];
  const std::vector<int> no_folds(scores.size(), 0);
  const auto sessions = scores_by_session(scores, values, no_folds, -1);

  for (std::size_t k : config.k_list) {
    KResult result;
    result.k = k;
    auto bundles = bundle_scores(sessions, k, config.stride);
    result.n_child_bundles = bundles.pos.size();
    result.n_adult_bundles = bundles.neg.size();
    if (!bundles.pos.empty() && !bundles.neg.empty()) {
      result.auc = auc(bundles.pos, bundles.neg);
      result.eer = roc_and_eer(bundles.pos, bundles.neg).second;
      result.child_bundle_scores = std::move(bundles.pos);
      result.adult_bundle_scores = std::move(bundles.neg);
    } else {
      report.warnings.push_back("k=" + std::to_string(k) +
                                " produced no bundles on at least one side");
    }
    report.results.push_back(std::move(result));
  }
  return report;
}

std::vector<SweepRow> sweep_window(const EvalConfig& config,
                                   std::span<const Session> sessions,
                                   std::span<const double> n_list) {
  if (config.approach != Approach::Sensor)
    throw ConfigError("window sweep requires the sensor approach");
  std::vector<SweepRow> rows;
  for (double n : n_list) {
    EvalConfig cfg = config;
    cfg.window_s = n;
    cfg.k_list = {1};
    SweepRow row;
    row.window_s = n;
    const EvalReport report = evaluate_pipeline(cfg, sessions);
    row.n_windows = report.n_observations;
    if (const KResult* r = report.result_for(1); r != nullptr) {
      row.auc = r->auc;
      row.eer = r->eer;
    }
    rows.push_back(row);
  }
  return rows;
}

EvalReport ablate_features(const EvalConfig& config,
                           std::span<const Session> sessions,
                           const std::function<bool(const std::string&)>& keep) {
  std::vector<std::string> warnings;
  Dataset data = extract_observations(config, sessions, &warnings);
  FeatureMask mask;
  for (const auto& name : data.names)
    if (keep(name)) mask.push_back(name);
  if (mask.empty()) throw EmptyMask("ablation predicate keeps no feature");
  if (mask.size() < data.names.size()) data = apply_mask(data, mask);
  EvalReport report = evaluate_dataset(config, data);
  report.warnings.insert(report.warnings.begin(), warnings.begin(), warnings.end());
  return report;
}

std::vector<CompareRow> compare_classifiers(
    const EvalConfig& config, std::span<const Session> sessions,
    const std::vector<std::pair<std::string, std::vector<ClassifierConfig>>>& grids) {
  const Dataset data = extract_observations(config, sessions);
  std::vector<CompareRow> rows;
  for (const auto& [name, param_sets] : grids) {
    if (param_sets.empty()) continue;
    CompareRow row;
    row.classifier = name;
    for (const auto& params : param_sets) {
      EvalConfig cfg = config;
      cfg.classifier = params;
      cfg.k_list = {1};
      const EvalReport report = evaluate_dataset(cfg, data);
      std::optional<double> auc_k1;
      if (const KResult* r = report.result_for(1); r != nullptr) auc_k1 = r->auc;
      row.grid.emplace_back(params, auc_k1);
      if (auc_k1 && (!row.best_auc || *auc_k1 > *row.best_auc)) {
        row.best_auc = auc_k1;
        row.best_config = params;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace agekit
