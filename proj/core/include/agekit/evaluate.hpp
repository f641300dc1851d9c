#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agekit/classifier.hpp"
#include "agekit/dataset.hpp"
#include "agekit/metrics.hpp"
#include "agekit/segmentation.hpp"
#include "agekit/types.hpp"

namespace agekit {

enum class Approach { TouchTap, TouchStroke, Sensor, CombinedTap, CombinedStroke };
enum class CvMode { Record, Session };
enum class AgeFilter { All, YoungChild, OlderChild };

const char* approach_name(Approach a);
std::optional<Approach> approach_from_name(const std::string& name);
const char* cv_mode_name(CvMode m);
std::optional<CvMode> cv_mode_from_name(const std::string& name);
const char* age_filter_name(AgeFilter f);
std::optional<AgeFilter> age_filter_from_name(const std::string& name);

struct EvalConfig {
  Approach approach = Approach::TouchStroke;
  std::string data_source;  // manifest path or synth config; echoed, not used
  ClassifierConfig classifier;
  std::vector<std::size_t> k_list = {1, 2, 3, 5, 8, 16};
  double window_s = 1.0;       // sensor approach window size
  AgeFilter age_filter = AgeFilter::All;
  int folds = 10;
  CvMode mode = CvMode::Record;
  std::size_t stride = 1;
  std::uint64_t seed = 42;
  int top_k = 0;               // 0 = no feature selection; sensor default is 20
  int selection_trees = 200;   // forest size used for selection ranking
  bool per_fold_averaging = false;  // default: pool out-of-fold bundles
  unsigned threads = 1;
  SegmentationParams segmentation;
};

/// Fold index per sample. Stratified by label; record mode splits individual
/// rows, session mode keeps each group's rows in one fold. Fold sizes differ
/// by at most one in record mode. Throws TooFewSamples when there are fewer
/// samples (or per-class samples) than folds allow.
struct FoldAssignment {
  std::vector<int> fold_of;
  int folds = 0;
};

FoldAssignment kfold_split(std::span<const Label> labels,
                           std::span<const std::string> groups, int folds,
                           CvMode mode, std::uint64_t seed);

struct KResult {
  std::size_t k = 1;
  std::optional<double> auc;
  std::optional<double> eer;
  std::size_t n_child_bundles = 0;
  std::size_t n_adult_bundles = 0;
  // Pooled fused scores, kept for ROC export; not serialized into reports.
  std::vector<double> child_bundle_scores;
  std::vector<double> adult_bundle_scores;
};

/// Leakage instrumentation recorded per fold.
struct FoldAudit {
  std::uint64_t train_hash = 0;
  std::uint64_t test_hash = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  bool disjoint = false;
  bool selection_on_train_only = true;  // true when no selection configured
};

struct EvalReport {
  EvalConfig config;
  std::size_t n_observations = 0;
  std::size_t n_sessions = 0;
  std::size_t n_child_observations = 0;
  std::size_t n_adult_observations = 0;
  std::vector<KResult> results;
  std::vector<FoldAudit> audits;
  bool folds_disjoint = true;
  bool selection_train_only = true;
  std::vector<std::string> warnings;

  const KResult* result_for(std::size_t k) const;
};

/// Builds the observation matrix for the configured approach: gestures or
/// windows per session, chronological within a session, with the session's
/// label and id attached. Respects the age filter.
Dataset extract_observations(const EvalConfig& config,
                             std::span<const Session> sessions,
                             std::vector<std::string>* warnings = nullptr);

/// Cross-validates an already-extracted observation matrix: per fold, train
/// (with per-fold feature selection when configured), score the test fold,
/// then bundle out-of-fold scores per session for every k and compute
/// AUC/EER. Pooled across folds by default.
EvalReport evaluate_dataset(const EvalConfig& config, const Dataset& data);

/// extract_observations + evaluate_dataset.
EvalReport evaluate_pipeline(const EvalConfig& config,
                             std::span<const Session> sessions);

/// Bundle-level AUC/EER straight from precomputed per-observation scores —
/// the route for classifiers trained outside this library. The dataset must
/// have the single feature column `score`, holding out-of-fold child
/// probabilities in chronological per-session order.
EvalReport evaluate_scores(const EvalConfig& config, const Dataset& scores);

struct SweepRow {
  double window_s = 0.0;
  std::optional<double> auc;
  std::optional<double> eer;
  std::size_t n_windows = 0;
};

/// One single-window (k=1) evaluation per window size. Sensor approach only.
std::vector<SweepRow> sweep_window(const EvalConfig& config,
                                   std::span<const Session> sessions,
                                   std::span<const double> n_list);

/// Evaluation restricted to the features the predicate keeps.
/// Throws EmptyMask when nothing survives.
EvalReport ablate_features(const EvalConfig& config,
                           std::span<const Session> sessions,
                           const std::function<bool(const std::string&)>& keep);

struct CompareRow {
  std::string classifier;
  ClassifierConfig best_config;
  std::optional<double> best_auc;  // at k = 1
  std::vector<std::pair<ClassifierConfig, std::optional<double>>> grid;
};

/// Grid search per classifier; reports each classifier's best single-
/// observation AUC over its parameter sets.
std::vector<CompareRow> compare_classifiers(
    const EvalConfig& config, std::span<const Session> sessions,
    const std::vector<std::pair<std::string, std::vector<ClassifierConfig>>>& grids);

/// Config and report serialization used by the CLI and the report files.
std::string eval_config_to_json(const EvalConfig& config, bool pretty = true);
EvalConfig eval_config_from_json(const std::string& text);
std::string report_to_json(const EvalReport& report);
void write_roc_csv(const RocCurve& curve, const std::string& config_echo,
                   const std::filesystem::path& path);

}  // namespace agekit
