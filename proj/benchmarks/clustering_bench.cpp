#include <benchmark/benchmark.h>

#include <random>

#include "ppsum/clustering.hpp"

namespace {

std::vector<ppsum::SentenceVector> blobs(std::size_t n, std::size_t dim) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  std::vector<ppsum::SentenceVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(dim);
    for (auto& x : v) x = normal(rng);
    v[i % dim] += 8.0;
    out.emplace_back(std::move(v));
  }
  return out;
}

void BM_KMeans(benchmark::State& state) {
  const auto data = blobs(static_cast<std::size_t>(state.range(0)), 32);
  ppsum::KMeansOptions options;
  options.k = 14;
  for (auto _ : state) benchmark::DoNotOptimize(ppsum::kmeans_fit(data, options));
}
BENCHMARK(BM_KMeans)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_MiniBatchKMeans(benchmark::State& state) {
  const auto data = blobs(static_cast<std::size_t>(state.range(0)), 32);
  ppsum::MiniBatchOptions options;
  options.k = 14;
  options.batch_size = 256;
  for (auto _ : state) benchmark::DoNotOptimize(ppsum::minibatch_kmeans_fit(data, options));
}
BENCHMARK(BM_MiniBatchKMeans)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Silhouette(benchmark::State& state) {
  const auto data = blobs(static_cast<std::size_t>(state.range(0)), 32);
  std::vector<std::size_t> labels(data.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i % 14;
  for (auto _ : state) benchmark::DoNotOptimize(ppsum::silhouette_score(data, labels));
}
BENCHMARK(BM_Silhouette)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
