#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppsum/clustering.hpp"
#include "ppsum/corpus.hpp"
#include "ppsum/embedding.hpp"
#include "ppsum/pca.hpp"

namespace ppsum {

enum class SummaryMode { kPdc, kKmeans, kRandom };

std::string_view to_string(SummaryMode mode);
SummaryMode summary_mode(CentroidMode mode);

struct SummaryRequest {
  std::string source;
  CentroidMode mode = CentroidMode::kPdc;
  std::size_t n_best = 1;
  Space space;  // raw by default; pca(n) compares in the PCA model's space
};

struct Pick {
  std::size_t sentence_id = 0;
  std::string text;
  std::optional<double> distance;  // absent for the random baseline
};

struct TopicPicks {
  std::string label;
  std::string gloss;  // pseudo-centroid sentence for k-means topics
  std::vector<Pick> picks;
};

struct SummaryStats {
  std::size_t input_sentence_count = 0;
  std::size_t output_sentence_count = 0;
  double reduction_ratio = 0.0;  // 1 - output / input
};

struct Summary {
  std::string source;
  SummaryMode mode = SummaryMode::kPdc;
  std::size_t n_best = 1;
  Space space;
  std::vector<TopicPicks> topics;
  SummaryStats stats;

  /// Every picked sentence, topic by topic (duplicates across topics kept).
  std::vector<std::string> sentences() const;
};

struct Ranked {
  std::size_t index = 0;
  double distance = 0.0;

  friend bool operator==(const Ranked&, const Ranked&) = default;
};

/// Euclidean distance from every vector to `centroid`, ascending; equal
/// distances keep index order.
std::vector<Ranked> rank_against_centroid(std::span<const SentenceVector> vectors, const SentenceVector& centroid);

/// The 14 GDPR topics as PDC centroids: labels are the topic headers, vectors
/// the embedded combined sentences.
CentroidSet gdpr_centroids(EmbeddingProvider& provider);

/// Ranks a document's sentences against each centroid and keeps the n_best
/// nearest per topic. A sentence may appear under several topics. Pass
/// `pca` when the request or the centroids live in PCA space.
Summary summarize_document(const Document& document, const SummaryRequest& request, EmbeddingProvider& provider,
                           const CentroidSet& centroids, const PcaModel* pca = nullptr);

/// fetch_document followed by summarize_document.
Summary summarize(const SummaryRequest& request, EmbeddingProvider& provider, const CentroidSet& centroids,
                  const FetchOptions& fetch = {}, const PcaModel* pca = nullptr);

/// Seeded sample of `n` distinct pool sentences dealt round-robin onto
/// `topic_labels` (a single "random" topic when no labels are given).
Summary random_baseline_summary(std::size_t n, std::uint64_t seed, std::span<const std::string> pool,
                                std::span<const std::string> topic_labels = {});

/// Pretty-printed JSON:
///   {"source","mode","n_best","space","stats":{..},"topics":[{"label",["gloss"],"picks":[{"text","distance"}]}]}
/// Distances and the reduction ratio carry exactly four decimals.
std::string summary_to_json(const Summary& summary);

}  // namespace ppsum
