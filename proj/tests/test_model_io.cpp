#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "agekit/classifier.hpp"
#include "agekit/errors.hpp"
#include "agekit/model_io.hpp"
#include "agekit/rng.hpp"
#include "test_helpers.hpp"

using namespace agekit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "agekit_model_io_test") {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("forest round-trip preserves predictions exactly") {
  TempDir dir;
  auto data = helpers::blob_dataset(50, 5, 2, 1.2, 21);
  ForestParams params;
  params.n_estimators = 25;
  params.seed = 77;
  TrainedModel model{train_forest(data, params, 2), data.names,
                     ObservationKind::Sensor};

  const auto path = dir.path / "forest.json";
  save_model(model, path);
  const TrainedModel loaded = load_model(path);
  CHECK(loaded.feature_names == model.feature_names);
  CHECK(loaded.observation_kind == ObservationKind::Sensor);

  Rng rng(3);
  std::vector<double> row(data.n_features());
  for (int i = 0; i < 1000; ++i) {
    for (auto& v : row) v = rng.normal(0, 2);
    CHECK(predict_score(model, row) == predict_score(loaded, row));
  }

  // save(load(save(m))) is canonical
  const auto path2 = dir.path / "forest2.json";
  save_model(loaded, path2);
  std::ifstream a(path), b(path2);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
}

TEST_CASE("tree and linear round-trips") {
  TempDir dir;
  auto data = helpers::blob_dataset(40, 4, 2, 1.5, 22);

  TrainedModel tree{train_tree(data), data.names, ObservationKind::Stroke};
  save_model(tree, dir.path / "tree.json");
  auto tree2 = load_model(dir.path / "tree.json");

  LinearParams lp;
  lp.kind = LinearKind::Perceptron;
  TrainedModel linear{train_linear(data, lp), data.names, ObservationKind::Tap};
  save_model(linear, dir.path / "linear.json");
  auto linear2 = load_model(dir.path / "linear.json");

  Rng rng(9);
  std::vector<double> row(data.n_features());
  for (int i = 0; i < 200; ++i) {
    for (auto& v : row) v = rng.normal();
    CHECK(predict_score(tree, row) == predict_score(tree2, row));
    CHECK(predict_score(linear, row) == predict_score(linear2, row));
  }
}

TEST_CASE("model file error paths") {
  TempDir dir;
  auto data = helpers::blob_dataset(20, 3, 1, 1.0, 23);
  ForestParams params;
  params.n_estimators = 5;
  TrainedModel model{train_forest(data, params), data.names,
                     ObservationKind::Stroke};
  const auto path = dir.path / "model.json";
  save_model(model, path);

  SUBCASE("truncated file is corrupt") {
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    std::ofstream out(path);
    out << text.substr(0, text.size() / 2);
    out.close();
    CHECK_THROWS_AS(load_model(path), CorruptModel);
  }
  SUBCASE("foreign format version is rejected") {
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    const auto at = text.find("\"format_version\":1");
    REQUIRE(at != std::string::npos);
    text.replace(at, 18, "\"format_version\":0");
    std::ofstream out(path);
    out << text;
    out.close();
    CHECK_THROWS_AS(load_model(path), VersionMismatch);
  }
  SUBCASE("unknown kind is corrupt") {
    std::ofstream out(path);
    out << R"({"format_version":1,"kind":"svm","feature_names":[],"observation_kind":"tap"})";
    out.close();
    CHECK_THROWS_AS(load_model(path), CorruptModel);
  }
  SUBCASE("not JSON at all") {
    std::ofstream out(path);
    out << "definitely not json";
    out.close();
    CHECK_THROWS_AS(load_model(path), CorruptModel);
  }
}
