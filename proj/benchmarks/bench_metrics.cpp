#include <benchmark/benchmark.h>

#include <vector>

#include "agekit/metrics.hpp"
#include "agekit/rng.hpp"

namespace {

void Auc(benchmark::State& state) {
  agekit::Rng rng(11);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> pos(n), neg(n);
  for (auto& s : pos) s = rng.normal(0.2, 1.0);
  for (auto& s : neg) s = rng.normal(-0.2, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(agekit::auc(pos, neg));
  state.SetItemsProcessed(state.iterations() * 2 * n);
}
BENCHMARK(Auc)->Range(1 << 8, 1 << 17);

void RocAndEer(benchmark::State& state) {
  agekit::Rng rng(12);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> pos(n), neg(n);
  for (auto& s : pos) s = rng.normal(0.2, 1.0);
  for (auto& s : neg) s = rng.normal(-0.2, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(agekit::roc_and_eer(pos, neg));
}
BENCHMARK(RocAndEer)->Range(1 << 8, 1 << 15);

}  // namespace

BENCHMARK_MAIN();
