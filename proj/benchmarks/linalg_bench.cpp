#include <benchmark/benchmark.h>

#include <random>

#include "ppsum/linalg.hpp"
#include "ppsum/pca.hpp"

namespace {

ppsum::Matrix random_symmetric(std::size_t n) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  ppsum::Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = normal(rng);
  }
  return m;
}

void BM_JacobiEigen(benchmark::State& state) {
  const auto m = random_symmetric(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ppsum::jacobi_eigen(m));
}
BENCHMARK(BM_JacobiEigen)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_PcaFit(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::vector<ppsum::SentenceVector> data;
  for (int i = 0; i < 300; ++i) {
    std::vector<double> v(static_cast<std::size_t>(state.range(0)));
    for (auto& x : v) x = normal(rng);
    data.emplace_back(std::move(v));
  }
  for (auto _ : state) benchmark::DoNotOptimize(ppsum::pca_fit(data, 10));
}
BENCHMARK(BM_PcaFit)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
