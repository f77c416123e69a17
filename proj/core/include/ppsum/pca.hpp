#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "ppsum/embedding.hpp"
#include "ppsum/linalg.hpp"

namespace ppsum {

/// Principal axes of a data set, fitted from its unbiased (1/(n-1)) covariance.
struct PcaModel {
  SentenceVector mean;                           // dim d
  Matrix components;                             // n_comp x d, orthonormal rows
  std::vector<double> eigenvalues;               // descending, nonnegative
  std::vector<double> explained_variance_ratio;  // eigenvalue / total variance
  double total_variance = 0.0;                   // trace of the covariance

  std::size_t input_dim() const noexcept { return mean.dim(); }
  std::size_t n_components() const noexcept { return components.rows(); }
};

/// Requires data.size() >= 2 and 1 <= n_comp <= min(dim, data.size()).
/// Each component is signed so that its largest-magnitude entry is positive.
PcaModel pca_fit(std::span<const SentenceVector> data, std::size_t n_comp);

/// components * (v - mean)
SentenceVector pca_transform(const PcaModel& model, const SentenceVector& v);
std::vector<SentenceVector> pca_transform(const PcaModel& model, std::span<const SentenceVector> data);

/// mean + components^T * projected
SentenceVector pca_inverse_transform(const PcaModel& model, const SentenceVector& projected);

/// Smallest n whose cumulative ratio reaches `threshold` (0 < threshold <= 1).
std::size_t choose_n_comp_by_variance(std::span<const double> explained_variance_ratio, double threshold);
std::size_t choose_n_comp_by_variance(const PcaModel& full_rank_model, double threshold);

/// Binary layout, all integers and floats little-endian:
///   "PPSUMPCA" | u32 version=1 | u64 d | u64 n_comp | f64 total_variance
///   | f64 mean[d] | f64 eigenvalues[n_comp] | f64 ratios[n_comp]
///   | f64 components[n_comp * d] (row-major)
void save_pca_model(const PcaModel& model, const std::filesystem::path& path);
PcaModel load_pca_model(const std::filesystem::path& path);

}  // namespace ppsum
