#include <benchmark/benchmark.h>

#include "agekit/classifier.hpp"
#include "agekit/rng.hpp"

namespace {

agekit::Dataset gaussian_blobs(std::size_t n_per_class, std::size_t d) {
  agekit::Dataset data;
  for (std::size_t c = 0; c < d; ++c)
    data.names.push_back("f" + std::to_string(c));
  agekit::Rng rng(7);
  std::vector<double> row(d);
  for (std::size_t i = 0; i < 2 * n_per_class; ++i) {
    const bool child = i < n_per_class;
    for (std::size_t c = 0; c < d; ++c)
      row[c] = rng.normal(c < 3 ? (child ? 0.5 : -0.5) : 0.0, 1.0);
    data.add_row(row, child ? agekit::Label::Child : agekit::Label::Adult,
                 "g" + std::to_string(i));
  }
  return data;
}

void ForestTrain(benchmark::State& state) {
  const auto data = gaussian_blobs(static_cast<std::size_t>(state.range(0)), 22);
  agekit::ForestParams params;
  params.n_estimators = static_cast<int>(state.range(1));
  params.seed = 1;
  for (auto _ : state) {
    auto forest = agekit::train_forest(data, params, 2);
    benchmark::DoNotOptimize(forest);
  }
}
BENCHMARK(ForestTrain)->Args({250, 50})->Args({500, 50})->Args({500, 200})
    ->Unit(benchmark::kMillisecond);

void ForestPredict(benchmark::State& state) {
  const auto data = gaussian_blobs(500, 22);
  agekit::ForestParams params;
  params.n_estimators = 200;
  params.seed = 1;
  const auto forest = agekit::train_forest(data, params, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(forest.predict(data.row(i % data.size())));
    ++i;
  }
}
BENCHMARK(ForestPredict);

void TreeTrain(benchmark::State& state) {
  const auto data = gaussian_blobs(static_cast<std::size_t>(state.range(0)), 22);
  for (auto _ : state) {
    auto tree = agekit::train_tree(data);
    benchmark::DoNotOptimize(tree);
  }
}
BENCHMARK(TreeTrain)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
