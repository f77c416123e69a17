#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "ppsum/error.hpp"
#include "ppsum/evaluation.hpp"

namespace ppsum {

SsdReport ssd_from_vectors(std::span<const std::string> topic_texts, std::span<const SentenceVector> topic_vectors,
                           std::span<const std::string> summary_sentences,
                           std::span<const SentenceVector> summary_vectors) {
  require(!summary_sentences.empty(), ErrorKind::kArgument, "SSD needs at least one summary sentence");
  require(topic_texts.size() == topic_vectors.size() && summary_sentences.size() == summary_vectors.size(),
          ErrorKind::kArgument, "SSD texts and vectors do not line up");

  SsdReport report;
  for (std::size_t t = 0; t < topic_texts.size(); ++t) {
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < summary_vectors.size(); ++s) {
      const double d2 = squared_distance(topic_vectors[t], summary_vectors[s]);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = s;
      }
    }
    report.per_topic.push_back({topic_texts[t], summary_sentences[best], best_d2});
    report.total += best_d2;
  }
  return report;
}

SsdReport ssd_evaluate(std::span<const std::string> topic_texts, std::span<const std::string> summary_sentences,
                       EmbeddingProvider& provider) {
  require(!summary_sentences.empty(), ErrorKind::kArgument, "SSD needs at least one summary sentence");
  const auto topic_vectors = provider.embed(topic_texts);
  const auto summary_vectors = provider.embed(summary_sentences);
  return ssd_from_vectors(topic_texts, topic_vectors, summary_sentences, summary_vectors);
}

std::string_view to_string(EvalModel model) {
  switch (model) {
    case EvalModel::kRandom: return "random";
    case EvalModel::kPdc: return "pdc";
    case EvalModel::kKmeans: return "kmeans";
    case EvalModel::kGdpr: return "gdpr";
  }
  return "unknown";
}

std::array<double, 7> rouge_columns(const RougeScores& s) {
  return {s.r1.precision, s.r1.recall, s.r1.f, s.r2.f, s.rl.f, s.rw.f, s.mean_r1_rl};
}

Stat summarize_values(std::span<const double> values, StdDevKind kind) {
  Stat stat;
  stat.count = values.size();
  if (values.empty()) return stat;
  double sum = 0.0;
  for (double v : values) sum += v;
  stat.mean = sum / static_cast<double>(values.size());
  const std::size_t dof = kind == StdDevKind::kPopulation ? values.size() : values.size() - 1;
  if (dof == 0) return stat;
  double squares = 0.0;
  for (double v : values) squares += (v - stat.mean) * (v - stat.mean);
  stat.std_dev = std::sqrt(squares / static_cast<double>(dof));
  return stat;
}

std::vector<ModelAggregate> aggregate_rows(std::span<const EvalRow> rows, StdDevKind kind) {
  std::vector<EvalModel> models;
  for (const auto& row : rows) {
    if (std::find(models.begin(), models.end(), row.model) == models.end()) models.push_back(row.model);
  }
  std::sort(models.begin(), models.end());

  std::vector<ModelAggregate> out;
  for (EvalModel model : models) {
    std::vector<double> ssd;
    std::array<std::vector<double>, 7> rouge;
    for (const auto& row : rows) {
      if (row.model != model || row.error) continue;
      if (row.ssd) ssd.push_back(*row.ssd);
      if (row.rouge) {
        const auto cols = rouge_columns(*row.rouge);
        for (std::size_t c = 0; c < cols.size(); ++c) rouge[c].push_back(cols[c]);
      }
    }
    ModelAggregate agg;
    agg.model = model;
    agg.ssd = summarize_values(ssd, kind);
    if (!rouge[0].empty()) {
      std::array<Stat, 7> stats;
      for (std::size_t c = 0; c < stats.size(); ++c) stats[c] = summarize_values(rouge[c], kind);
      agg.rouge = stats;
    }
    out.push_back(agg);
  }
  return out;
}

std::vector<BatchInput> batch_inputs(std::span<const ManifestEntry> manifest) {
  std::vector<BatchInput> out;
  for (const auto& entry : manifest) {
    out.push_back({entry.company, entry.fixture_file.empty() ? entry.url : entry.fixture_file});
  }
  return out;
}

namespace {

// Serializes access to a provider shared by worker threads.
class LockedProvider final : public EmbeddingProvider {
 public:
  explicit LockedProvider(EmbeddingProvider& inner) : inner_(inner) {}

  ProviderDescriptor descriptor() override {
    std::lock_guard lock(mutex_);
    return inner_.descriptor();
  }
  std::vector<SentenceVector> embed(std::span<const std::string> sentences) override {
    std::lock_guard lock(mutex_);
    return inner_.embed(sentences);
  }

 private:
  EmbeddingProvider& inner_;
  std::mutex mutex_;
};

std::uint64_t company_seed(std::uint64_t seed, const std::string& company) {
  std::uint64_t h = 14695981039346656037ULL ^ seed;
  for (unsigned char c : company) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return h;
}

EvalModel eval_model(CentroidMode mode) { return mode == CentroidMode::kPdc ? EvalModel::kPdc : EvalModel::kKmeans; }

struct SharedInputs {
  std::vector<std::string> headers;
  std::vector<SentenceVector> header_vectors;
  std::vector<std::string> references;
  std::vector<std::string> pool;
  CentroidSet pdc;
};

std::vector<EvalRow> evaluate_document(const BatchInput& input, std::span<const CentroidMode> modes,
                                       EmbeddingProvider& provider, const BatchOptions& options,
                                       const SharedInputs& shared) {
  std::vector<EvalRow> rows;
  auto score = [&](EvalModel model, const Summary& summary) {
    const auto sentences = summary.sentences();
    const auto vectors = provider.embed(sentences);
    EvalRow row{input.company, model, std::nullopt, std::nullopt, std::nullopt};
    row.ssd = ssd_from_vectors(shared.headers, shared.header_vectors, sentences, vectors).total;
    row.rouge = rouge_evaluate(shared.references, summary, options.rouge);
    return row;
  };

  try {
    const Document document = fetch_document(input.source, options.fetch);
    const Summary random = random_baseline_summary(options.random_sentences, company_seed(options.seed, input.company),
                                                   shared.pool, shared.headers);
    rows.push_back(score(EvalModel::kRandom, random));
    for (CentroidMode mode : modes) {
      const CentroidSet& centroids = mode == CentroidMode::kPdc ? shared.pdc : *options.kmeans_centroids;
      SummaryRequest request{input.source, mode, options.n_best, options.space};
      rows.push_back(score(eval_model(mode), summarize_document(document, request, provider, centroids, options.pca)));
    }
  } catch (const Error& e) {
    rows.clear();
    std::vector<EvalModel> models{EvalModel::kRandom};
    for (CentroidMode mode : modes) models.push_back(eval_model(mode));
    for (EvalModel model : models) rows.push_back({input.company, model, std::nullopt, std::nullopt, e.what()});
  }
  return rows;
}

}  // namespace

BatchReport batch_evaluate(std::span<const BatchInput> inputs, std::span<const CentroidMode> modes,
                           EmbeddingProvider& provider, const BatchOptions& options) {
  require(!inputs.empty(), ErrorKind::kArgument, "batch evaluation needs at least one document");
  for (CentroidMode mode : modes) {
    require(mode != CentroidMode::kKmeans || options.kmeans_centroids != nullptr, ErrorKind::kArgument,
            "kmeans evaluation needs fitted centroids");
  }

  LockedProvider locked(provider);
  SharedInputs shared;
  shared.headers = gdpr_topic_headers();
  shared.references = gdpr_combined_sentences();
  for (auto s : generic_sentence_pool()) shared.pool.emplace_back(s);
  shared.header_vectors = locked.embed(shared.headers);
  shared.pdc = gdpr_centroids(locked);

  BatchReport report;
  report.modes.assign(modes.begin(), modes.end());
  // The GDPR combined sentences scored as if they were a summary: the same for every document.
  const auto reference_vectors = locked.embed(shared.references);
  report.gdpr_ssd =
      ssd_from_vectors(shared.headers, shared.header_vectors, shared.references, reference_vectors).total;

  std::vector<BatchInput> sorted(inputs.begin(), inputs.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const BatchInput& a, const BatchInput& b) { return a.company < b.company; });

  std::vector<std::vector<EvalRow>> per_document(sorted.size());
  const auto workers = static_cast<std::size_t>(std::clamp(options.jobs, 1, 64));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < sorted.size(); i = next++) {
      per_document[i] = evaluate_document(sorted[i], modes, locked, options, shared);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, sorted.size()); ++w) pool.emplace_back(work);
  }

  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (auto& row : per_document[i]) report.rows.push_back(std::move(row));
    report.rows.push_back({sorted[i].company, EvalModel::kGdpr, report.gdpr_ssd, std::nullopt, std::nullopt});
  }
  report.aggregates = aggregate_rows(report.rows, options.std_dev);
  return report;
}

}  // namespace ppsum
