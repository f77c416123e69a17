#include "ppsum/summarizer.hpp"

#include <algorithm>
#include <random>

#include "ppsum/error.hpp"
#include "random.hpp"

namespace ppsum {

std::string_view to_string(SummaryMode mode) {
  switch (mode) {
    case SummaryMode::kPdc: return "pdc";
    case SummaryMode::kKmeans: return "kmeans";
    case SummaryMode::kRandom: return "random";
  }
  return "unknown";
}

SummaryMode summary_mode(CentroidMode mode) {
  return mode == CentroidMode::kPdc ? SummaryMode::kPdc : SummaryMode::kKmeans;
}

std::vector<std::string> Summary::sentences() const {
  std::vector<std::string> out;
  for (const auto& topic : topics) {
    for (const auto& pick : topic.picks) out.push_back(pick.text);
  }
  return out;
}

std::vector<Ranked> rank_against_centroid(std::span<const SentenceVector> vectors, const SentenceVector& centroid) {
  std::vector<Ranked> out;
  out.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    require(vectors[i].dim() == centroid.dim(), ErrorKind::kArgument,
            "sentence " + std::to_string(i) + " has dim " + std::to_string(vectors[i].dim()) + ", centroid has " +
                std::to_string(centroid.dim()));
    out.push_back({i, euclidean_distance(vectors[i], centroid)});
  }
  std::stable_sort(out.begin(), out.end(), [](const Ranked& a, const Ranked& b) { return a.distance < b.distance; });
  return out;
}

CentroidSet gdpr_centroids(EmbeddingProvider& provider) {
  const auto& topics = load_gdpr_topics();
  CentroidSet set;
  set.mode = CentroidMode::kPdc;
  set.provider = provider.descriptor();
  std::vector<std::string> combined;
  for (const auto& t : topics) {
    set.labels.emplace_back(t.header);
    set.glosses.emplace_back(t.combined_sentence);
    combined.emplace_back(t.combined_sentence);
  }
  set.centroids = provider.embed(combined);
  validate(set);
  return set;
}

namespace {

std::vector<SentenceVector> embed_or_wrap(EmbeddingProvider& provider, std::span<const std::string> texts) {
  try {
    return provider.embed(texts);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kTransport || e.kind() == ErrorKind::kProtocol) {
      fail(ErrorKind::kEmbedding, e.what());
    }
    throw;
  }
}

}  // namespace

Summary summarize_document(const Document& document, const SummaryRequest& request, EmbeddingProvider& provider,
                           const CentroidSet& centroids, const PcaModel* pca) {
  require(request.n_best >= 1, ErrorKind::kArgument, "n_best must be at least 1");
  require(!document.sentences.empty(), ErrorKind::kEmptyDocument, document.source + " has no sentences");
  require(centroids.mode == request.mode, ErrorKind::kModeMismatch,
          "request mode " + std::string(to_string(request.mode)) + " but centroids are " +
              std::string(to_string(centroids.mode)));
  validate(centroids);

  const ProviderDescriptor descriptor = provider.descriptor();
  if (!centroids.provider.provider_id.empty()) {
    require(centroids.provider == descriptor, ErrorKind::kConfiguration,
            "centroids were built with " + describe(centroids.provider) + " but the provider is " +
                describe(descriptor));
  }

  const std::vector<std::string> texts = document.texts();
  std::vector<SentenceVector> vectors = embed_or_wrap(provider, texts);
  require(vectors.size() == texts.size(), ErrorKind::kEmbedding, "provider returned the wrong number of vectors");
  for (const auto& v : vectors) {
    require(v.dim() == descriptor.dim, ErrorKind::kEmbedding, "provider returned a vector of unexpected dim");
  }

  std::vector<SentenceVector> targets = centroids.centroids;
  if (request.space.is_raw()) {
    require(centroids.space.is_raw(), ErrorKind::kConfiguration,
            "centroids live in " + centroids.space.to_string() + " but the request asks for raw space");
    require(centroids.dim() == descriptor.dim, ErrorKind::kConfiguration,
            "centroid dim " + std::to_string(centroids.dim()) + " does not match provider dim " +
                std::to_string(descriptor.dim));
  } else {
    require(pca != nullptr, ErrorKind::kConfiguration, "PCA space requested without a PCA model");
    require(pca->n_components() == request.space.pca_components && pca->input_dim() == descriptor.dim,
            ErrorKind::kConfiguration,
            "PCA model maps " + std::to_string(pca->input_dim()) + " -> " + std::to_string(pca->n_components()) +
                " but the request needs " + std::to_string(descriptor.dim) + " -> " +
                std::to_string(request.space.pca_components));
    vectors = pca_transform(*pca, vectors);
    if (centroids.space.is_raw()) {
      require(centroids.dim() == descriptor.dim, ErrorKind::kConfiguration, "centroid dim does not match provider");
      targets = pca_transform(*pca, targets);
    } else {
      require(centroids.space == request.space, ErrorKind::kConfiguration,
              "centroids live in " + centroids.space.to_string() + " but the request asks for " +
                  request.space.to_string());
    }
  }

  Summary summary;
  summary.source = document.source;
  summary.mode = summary_mode(request.mode);
  summary.n_best = request.n_best;
  summary.space = request.space;
  const std::size_t keep = std::min(request.n_best, vectors.size());
  for (std::size_t c = 0; c < targets.size(); ++c) {
    TopicPicks topic;
    topic.label = centroids.labels[c];
    if (request.mode == CentroidMode::kKmeans && !centroids.glosses.empty()) topic.gloss = centroids.glosses[c];
    const auto ranked = rank_against_centroid(vectors, targets[c]);
    for (std::size_t r = 0; r < keep; ++r) {
      const auto& sentence = document.sentences[ranked[r].index];
      topic.picks.push_back({sentence.id, sentence.text, ranked[r].distance});
    }
    summary.stats.output_sentence_count += topic.picks.size();
    summary.topics.push_back(std::move(topic));
  }
  summary.stats.input_sentence_count = vectors.size();
  summary.stats.reduction_ratio = 1.0 - static_cast<double>(summary.stats.output_sentence_count) /
                                            static_cast<double>(summary.stats.input_sentence_count);
  return summary;
}

Summary summarize(const SummaryRequest& request, EmbeddingProvider& provider, const CentroidSet& centroids,
                  const FetchOptions& fetch, const PcaModel* pca) {
  const Document document = fetch_document(request.source, fetch);
  return summarize_document(document, request, provider, centroids, pca);
}

Summary random_baseline_summary(std::size_t n, std::uint64_t seed, std::span<const std::string> pool,
                                std::span<const std::string> topic_labels) {
  require(n >= 1, ErrorKind::kArgument, "random baseline needs n >= 1");
  require(pool.size() >= n, ErrorKind::kArgument,
          "sentence pool holds " + std::to_string(pool.size()) + " sentences, fewer than " + std::to_string(n));

  std::mt19937_64 rng(seed);
  const auto chosen = detail::sample_without_replacement(rng, pool.size(), n);

  Summary summary;
  summary.source = "random";
  summary.mode = SummaryMode::kRandom;
  summary.n_best = 1;
  if (topic_labels.empty()) {
    summary.topics.push_back({"random", "", {}});
  } else {
    for (const auto& label : topic_labels) summary.topics.push_back({label, "", {}});
  }
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    summary.topics[i % summary.topics.size()].picks.push_back({chosen[i], pool[chosen[i]], std::nullopt});
  }
  summary.n_best = (n + summary.topics.size() - 1) / summary.topics.size();
  summary.stats.input_sentence_count = pool.size();
  summary.stats.output_sentence_count = n;
  summary.stats.reduction_ratio = 1.0 - static_cast<double>(n) / static_cast<double>(pool.size());
  return summary;
}

}  // namespace ppsum
