#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppsum/embedding.hpp"
#include "ppsum/pca.hpp"

namespace ppsum {

inline constexpr std::size_t kDefaultTopicCount = 14;

enum class CentroidMode { kPdc, kKmeans };

std::string_view to_string(CentroidMode mode);
CentroidMode parse_centroid_mode(std::string_view text);

/// Vector space that centroids and sentences are compared in.
struct Space {
  std::size_t pca_components = 0;  // 0 = raw embedding space

  bool is_raw() const noexcept { return pca_components == 0; }
  static Space raw() { return {}; }
  static Space pca(std::size_t n_comp) { return {n_comp}; }
  std::string to_string() const;

  friend bool operator==(const Space&, const Space&) = default;
};

struct CentroidSet {
  CentroidMode mode = CentroidMode::kPdc;
  std::vector<std::string> labels;
  std::vector<SentenceVector> centroids;
  /// Human-readable sentence per centroid (pseudo-centroid text for k-means).
  std::vector<std::string> glosses;
  Space space;
  /// Embedding space the centroids came from; empty provider_id = unknown.
  ProviderDescriptor provider;

  std::size_t size() const noexcept { return centroids.size(); }
  std::size_t dim() const noexcept { return centroids.empty() ? 0 : centroids.front().dim(); }
};

/// Throws unless labels/centroids/glosses line up and all dims agree.
void validate(const CentroidSet& set);

std::string cluster_label(std::size_t index);  // "cluster-07"

struct ClusteringResult {
  std::vector<std::size_t> assignments;
  CentroidSet centroids;
  double inertia = 0.0;
  int iterations = 0;
  std::uint64_t seed = 0;
  /// Inertia after each assignment step of the winning run.
  std::vector<double> inertia_history;
};

struct KMeansOptions {
  std::size_t k = kDefaultTopicCount;
  std::uint64_t seed = 0;
  int max_iter = 300;
  double tol = 1e-6;  // max centroid displacement
  int n_init = 10;    // independent k-means++ restarts; lowest inertia wins
};

/// Lloyd's algorithm with greedy k-means++ seeding. Empty clusters are
/// reseeded with the point farthest from its centroid.
ClusteringResult kmeans_fit(std::span<const SentenceVector> data, const KMeansOptions& options);

struct MiniBatchOptions {
  std::size_t k = kDefaultTopicCount;
  std::uint64_t seed = 0;
  std::size_t batch_size = 1024;
  int max_iter = 100;
  double tol = 0.0;  // stop early when the max centroid move drops below tol
};

/// Mini-batch k-means: each batch is assigned against fixed centroids, then
/// every centroid moves toward its batch members with learning rate 1/count.
ClusteringResult minibatch_kmeans_fit(std::span<const SentenceVector> data, const MiniBatchOptions& options);

/// Nearest-centroid assignment against fixed centroids (lowest index wins ties).
ClusteringResult pdc_assign(std::span<const SentenceVector> data, const CentroidSet& centroids);

std::size_t nearest_centroid(const SentenceVector& point, std::span<const SentenceVector> centroids);

double compute_inertia(std::span<const SentenceVector> data, std::span<const std::size_t> assignments,
                       std::span<const SentenceVector> centroids);

/// Mean silhouette coefficient over all points using Euclidean distance.
/// Singleton-cluster points score 0. Fewer than two clusters throws kUndefinedScore.
double silhouette_score(std::span<const SentenceVector> data, std::span<const std::size_t> assignments);

/// Replaces every centroid by its nearest member vector, labelled with the
/// member's sentence text. Ties go to the lowest data index.
CentroidSet pseudo_centroids(const ClusteringResult& result, std::span<const SentenceVector> data,
                             std::span<const std::string> texts);

enum class Algorithm { kKmeans, kMiniBatchKmeans, kPdc };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view text);

struct SweepRow {
  Algorithm algorithm;
  std::size_t n_comp = 0;
  std::optional<double> silhouette;  // nullopt = FAILED
};

struct SweepOptions {
  std::size_t k = kDefaultTopicCount;
  std::uint64_t seed = 0;
  std::size_t batch_size = 1024;
  /// Raw-space centroids used by the PDC rows (projected with each PCA fit).
  std::optional<CentroidSet> pdc_centroids;
};

/// For every (algorithm, n_comp): PCA-reduce, fit, score. Single-cluster
/// outcomes are recorded as FAILED rather than thrown.
std::vector<SweepRow> silhouette_sweep(std::span<const SentenceVector> data, std::span<const Algorithm> algorithms,
                                       std::span<const std::size_t> n_comp_values, const SweepOptions& options);

/// `algorithm,n_comp,silhouette` with 4-decimal scores and literal FAILED.
std::string sweep_csv(std::span<const SweepRow> rows);

/// Line-delimited JSON sharing the embedding store's record shape:
///   {"kind":"centroids","provider_id":..,"model_id":..,"dim":..,"vector_dim":..,
///    "mode":..,"space":..,"n_comp":..,"count":..}
///   then per centroid {"label":..} followed by {"text":..,"vector":[..]}.
void save_centroids(const CentroidSet& set, const std::filesystem::path& path);
CentroidSet load_centroids(const std::filesystem::path& path);

}  // namespace ppsum
