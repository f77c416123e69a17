#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppsum/clustering.hpp"
#include "ppsum/corpus.hpp"
#include "ppsum/embedding.hpp"
#include "ppsum/summarizer.hpp"

namespace ppsum {

// ---------------------------------------------------------------------------
// ROUGE
// ---------------------------------------------------------------------------

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

/// F1 of p and r, or all zeros when p + r == 0.
PrfScore make_prf(double precision, double recall);

/// Tokenization shared by every ROUGE variant: split on non-alphanumeric
/// runs, lowercase by default, no stemming. Stopwords are dropped when given.
struct RougeTokenizer {
  bool lowercase = true;
  std::vector<std::string> stopwords;

  std::vector<std::string> operator()(std::string_view text) const;
};

/// Clipped n-gram overlap. Zero denominators give zero scores.
PrfScore rouge_n(std::string_view reference, std::string_view hypothesis, std::size_t n,
                 const RougeTokenizer& tokenizer = {});

/// Longest common subsequence over tokens.
PrfScore rouge_l(std::string_view reference, std::string_view hypothesis, const RougeTokenizer& tokenizer = {});

/// Weighted LCS with f(k) = k^weight: a run of k consecutive matches scores
/// f(k), and P/R are f^-1(WLCS / f(length)). weight == 1 reduces to ROUGE-L.
PrfScore rouge_w(std::string_view reference, std::string_view hypothesis, double weight = 1.0,
                 const RougeTokenizer& tokenizer = {});

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);
double weighted_lcs(std::span<const std::string> reference, std::span<const std::string> hypothesis, double weight);

struct RougeScores {
  PrfScore r1;
  PrfScore r2;
  PrfScore rl;
  PrfScore rw;
  double mean_r1_rl = 0.0;  // (r1.f + rl.f) / 2, the headline number
};

struct RougeEvalOptions {
  double w_weight = 1.0;
  RougeTokenizer tokenizer;
};

/// Scores each topic's concatenated picks against the reference sentence of
/// the same index, then macro-averages precision and recall over topics and
/// derives F from the averages.
RougeScores rouge_evaluate(std::span<const std::string> references, const Summary& summary,
                           const RougeEvalOptions& options = {});

// ---------------------------------------------------------------------------
// Sum of squared distances
// ---------------------------------------------------------------------------

struct SsdTopic {
  std::string topic;
  std::string best_sentence;
  double squared_distance = 0.0;
};

struct SsdReport {
  std::vector<SsdTopic> per_topic;
  double total = 0.0;
};

/// For each topic text, the smallest squared Euclidean distance to any
/// summary sentence (both embedded with `provider`), summed over topics.
SsdReport ssd_evaluate(std::span<const std::string> topic_texts, std::span<const std::string> summary_sentences,
                       EmbeddingProvider& provider);

/// Same computation on vectors that are already embedded.
SsdReport ssd_from_vectors(std::span<const std::string> topic_texts, std::span<const SentenceVector> topic_vectors,
                           std::span<const std::string> summary_sentences,
                           std::span<const SentenceVector> summary_vectors);

// ---------------------------------------------------------------------------
// Batch evaluation
// ---------------------------------------------------------------------------

enum class EvalModel { kRandom, kPdc, kKmeans, kGdpr };

std::string_view to_string(EvalModel model);

struct EvalRow {
  std::string company;
  EvalModel model = EvalModel::kRandom;
  std::optional<double> ssd;
  std::optional<RougeScores> rouge;  // absent for the GDPR reference row
  std::optional<std::string> error;  // set when the document failed
};

inline constexpr std::array<std::string_view, 7> kRougeColumns{"r1_p", "r1_r", "r1_f", "r2_f",
                                                              "rl_f", "rw_f", "mean_r1_rl"};
std::array<double, 7> rouge_columns(const RougeScores& scores);

struct Stat {
  std::size_t count = 0;
  double mean = 0.0;
  double std_dev = 0.0;
};

enum class StdDevKind { kPopulation, kSample };

/// Mean and standard deviation; an empty input gives count 0 and zeros.
Stat summarize_values(std::span<const double> values, StdDevKind kind = StdDevKind::kPopulation);

struct ModelAggregate {
  EvalModel model = EvalModel::kRandom;
  Stat ssd;
  std::optional<std::array<Stat, 7>> rouge;  // indexed like kRougeColumns
};

struct BatchInput {
  std::string company;
  std::string source;  // fixture path or URL
};

/// Turns manifest rows into batch inputs, preferring the fixture file.
std::vector<BatchInput> batch_inputs(std::span<const ManifestEntry> manifest);

struct BatchOptions {
  std::uint64_t seed = 0;
  std::size_t n_best = 1;
  std::size_t random_sentences = 14;
  FetchOptions fetch;
  Space space;
  const PcaModel* pca = nullptr;
  /// Required when kmeans is among the modes.
  const CentroidSet* kmeans_centroids = nullptr;
  RougeEvalOptions rouge;
  StdDevKind std_dev = StdDevKind::kPopulation;
  int jobs = 1;
};

struct BatchReport {
  std::vector<CentroidMode> modes;
  std::vector<EvalRow> rows;  // grouped by company (sorted), then random, modes..., gdpr
  std::vector<ModelAggregate> aggregates;
  double gdpr_ssd = 0.0;
};

/// Per document: a random baseline plus one summary per mode, each scored
/// with SSD and ROUGE, and the fixed GDPR reference SSD. A document that
/// fails yields error rows and the batch continues.
BatchReport batch_evaluate(std::span<const BatchInput> inputs, std::span<const CentroidMode> modes,
                           EmbeddingProvider& provider, const BatchOptions& options);

/// Recomputes per-model aggregates from rows (rows with errors are skipped).
std::vector<ModelAggregate> aggregate_rows(std::span<const EvalRow> rows, StdDevKind kind);

}  // namespace ppsum
