#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace ppsum::detail {

// Platform-independent draws from mt19937_64 (the std distributions are not).
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

// `count` distinct indices from [0, n) via a partial Fisher-Yates shuffle.
inline std::vector<std::size_t> sample_without_replacement(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < count; ++i) std::swap(pool[i], pool[i + uniform_index(rng, n - i)]);
  pool.resize(count);
  return pool;
}

}  // namespace ppsum::detail
