#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <random>
#include <regex>
#include <set>

#include "ppsum/error.hpp"
#include "ppsum/summarizer.hpp"
#include "support/oracles.hpp"
#include "support/test_data.hpp"

namespace ppsum {
namespace {

using testing::to_vectors;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kArgument;
}

Document make_document(const std::vector<std::string>& texts, std::string source = "doc") {
  Document d;
  d.source = std::move(source);
  for (std::size_t i = 0; i < texts.size(); ++i) d.sentences.push_back({i, texts[i]});
  return d;
}

const std::vector<std::string> kFiveSentences{
    "We collect your name and email address when you register.",
    "Cookies help us remember your preferences between visits.",
    "You can contact our data protection officer by email.",
    "We keep your data on servers in the European Union.",
    "You have the right to request a copy of your data.",
};

class ThrowingProvider final : public EmbeddingProvider {
 public:
  explicit ThrowingProvider(ErrorKind kind) : kind_(kind) {}
  ProviderDescriptor descriptor() override { return {"hash-v1", "fnv1a-uni-bigram-seed0", 64}; }
  std::vector<SentenceVector> embed(std::span<const std::string>) override { fail(kind_, "sidecar went away"); }

 private:
  ErrorKind kind_;
};

class ShortProvider final : public EmbeddingProvider {
 public:
  ProviderDescriptor descriptor() override { return inner_.descriptor(); }
  std::vector<SentenceVector> embed(std::span<const std::string> s) override {
    auto out = inner_.embed(s);
    out.pop_back();
    return out;
  }

 private:
  HashEmbedder inner_{64, 0};
};

// ---------------------------------------------------------------------------
// Ranking
// ---------------------------------------------------------------------------

TEST(RankAgainstCentroid, SmallExample) {
  const auto vectors = to_vectors({{0, 0}, {3, 4}});
  const auto ranked = rank_against_centroid(vectors, SentenceVector(std::vector<double>{0, 0}));
  EXPECT_EQ(ranked, (std::vector<Ranked>{{0, 0.0}, {1, 5.0}}));
}

TEST(RankAgainstCentroid, MatchesBruteForceSort) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto points = testing::random_points(rng, 50, 6);
    const auto centroid = testing::random_point(rng, 6);
    const auto ranked = rank_against_centroid(to_vectors(points), SentenceVector(centroid));
    const auto expected = oracle::sorted_by_distance(points, centroid);
    ASSERT_EQ(ranked.size(), expected.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      EXPECT_EQ(ranked[i].index, expected[i].first);
      EXPECT_NEAR(ranked[i].distance, expected[i].second, 1e-12);
    }
  }
}

TEST(RankAgainstCentroid, TiesKeepIndexOrder) {
  const auto vectors = to_vectors({{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0, 0}});
  const auto ranked = rank_against_centroid(vectors, SentenceVector(std::vector<double>{0, 0}));
  std::vector<std::size_t> order;
  for (const auto& r : ranked) order.push_back(r.index);
  EXPECT_EQ(order, (std::vector<std::size_t>{4, 0, 1, 2, 3}));
}

TEST(RankAgainstCentroid, DimMismatchThrows) {
  const auto vectors = to_vectors({{1, 0}});
  EXPECT_EQ(kind_of([&] { rank_against_centroid(vectors, SentenceVector(std::vector<double>{0, 0, 0})); }),
            ErrorKind::kArgument);
}

// ---------------------------------------------------------------------------
// PDC summaries
// ---------------------------------------------------------------------------

TEST(SummarizePdc, SelfRetrievalOfCombinedSentences) {
  HashEmbedder provider(256, 0);
  const auto centroids = gdpr_centroids(provider);
  const Document doc = make_document(gdpr_combined_sentences(), "gdpr");
  const Summary summary = summarize_document(doc, {"gdpr"}, provider, centroids);
  ASSERT_EQ(summary.topics.size(), 14u);
  const auto headers = gdpr_topic_headers();
  const auto combined = gdpr_combined_sentences();
  for (std::size_t t = 0; t < 14; ++t) {
    EXPECT_EQ(summary.topics[t].label, headers[t]);
    ASSERT_EQ(summary.topics[t].picks.size(), 1u);
    EXPECT_EQ(summary.topics[t].picks[0].text, combined[t]);
    EXPECT_NEAR(*summary.topics[t].picks[0].distance, 0.0, 1e-12);
  }
}

TEST(SummarizePdc, NBestLargerThanDocumentKeepsEverySentence) {
  HashEmbedder provider(128, 0);
  const auto centroids = gdpr_centroids(provider);
  const Summary summary = summarize_document(make_document(kFiveSentences), {"doc", CentroidMode::kPdc, 10}, provider,
                                             centroids);
  for (const auto& topic : summary.topics) {
    ASSERT_EQ(topic.picks.size(), 5u);
    std::set<std::size_t> ids;
    for (const auto& p : topic.picks) ids.insert(p.sentence_id);
    EXPECT_EQ(ids.size(), 5u);
  }
  EXPECT_EQ(summary.stats.output_sentence_count, 70u);
  EXPECT_EQ(summary.stats.input_sentence_count, 5u);
}

TEST(SummarizePdc, FirstPickIsTheNearestSentence) {
  HashEmbedder provider(96, 3);
  const auto centroids = gdpr_centroids(provider);
  const Document doc = fetch_document((testing::fixture_dir() / "cobalt_streaming.html").string());
  const Summary summary = summarize_document(doc, {"cobalt", CentroidMode::kPdc, 3}, provider, centroids);
  const auto vectors = testing::to_points(provider.embed(doc.texts()));
  for (std::size_t t = 0; t < summary.topics.size(); ++t) {
    const auto& picks = summary.topics[t].picks;
    ASSERT_EQ(picks.size(), 3u);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : vectors) best = std::min(best, oracle::dist(v, centroids.centroids[t].values()));
    EXPECT_NEAR(*picks[0].distance, best, 1e-12);
    EXPECT_LE(*picks[0].distance, *picks[1].distance);
    EXPECT_LE(*picks[1].distance, *picks[2].distance);
    EXPECT_EQ(picks[0].text, doc.sentences[picks[0].sentence_id].text);
  }
}

TEST(SummarizePdc, PermutingTheDocumentKeepsTheSelectedSet) {
  HashEmbedder provider(128, 1);
  const auto centroids = gdpr_centroids(provider);
  const Document doc = fetch_document((testing::fixture_dir() / "acme_outfitters.html").string());
  auto texts = doc.texts();
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(texts.begin(), texts.end(), rng);
    const Summary a = summarize_document(doc, {"a", CentroidMode::kPdc, 2}, provider, centroids);
    const Summary b = summarize_document(make_document(texts), {"b", CentroidMode::kPdc, 2}, provider, centroids);
    for (std::size_t t = 0; t < a.topics.size(); ++t) {
      std::multiset<std::string> sa, sb;
      for (const auto& p : a.topics[t].picks) sa.insert(p.text);
      for (const auto& p : b.topics[t].picks) sb.insert(p.text);
      EXPECT_EQ(sa, sb) << "topic " << t;
    }
  }
}

TEST(SummarizePdc, CountsAndReductionRatio) {
  HashEmbedder provider(64, 0);
  const auto centroids = gdpr_centroids(provider);
  std::vector<std::string> texts;
  for (int i = 0; i < 40; ++i) texts.push_back("generic filler sentence number " + std::to_string(i));
  const Summary s = summarize_document(make_document(texts), {"doc"}, provider, centroids);
  EXPECT_EQ(s.stats.input_sentence_count, 40u);
  EXPECT_EQ(s.stats.output_sentence_count, 14u);
  EXPECT_DOUBLE_EQ(s.stats.reduction_ratio, 1.0 - 14.0 / 40.0);
  EXPECT_EQ(s.sentences().size(), 14u);
}

TEST(SummarizePdc, ProviderReceivesEachDocumentOnce) {
  testing::CountingProvider provider(64, 0);
  const auto centroids = gdpr_centroids(provider);
  const auto before = provider.sentences_embedded;
  summarize_document(make_document(kFiveSentences), {"doc"}, provider, centroids);
  EXPECT_EQ(provider.sentences_embedded - before, 5u);
}

TEST(SummarizePdc, MetaArchiveReducesToFourteenPicks) {
  const char* path = std::getenv("PPSUM_META_FIXTURE");
  if (path == nullptr) GTEST_SKIP() << "set PPSUM_META_FIXTURE to an archived copy of Meta's privacy policy page";
  HashEmbedder provider(768, 0);
  const auto centroids = gdpr_centroids(provider);
  const Summary s = summarize({path}, provider, centroids);
  EXPECT_EQ(s.stats.output_sentence_count, 14u);
  EXPECT_GT(s.stats.reduction_ratio, 0.9);
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

TEST(SummarizeErrors, ModeMismatch) {
  HashEmbedder provider(64, 0);
  const auto centroids = gdpr_centroids(provider);
  EXPECT_EQ(kind_of([&] {
              summarize_document(make_document(kFiveSentences), {"doc", CentroidMode::kKmeans}, provider, centroids);
            }),
            ErrorKind::kModeMismatch);
}

TEST(SummarizeErrors, EmptyDocument) {
  HashEmbedder provider(64, 0);
  const auto centroids = gdpr_centroids(provider);
  EXPECT_EQ(kind_of([&] { summarize_document(make_document({}), {"doc"}, provider, centroids); }),
            ErrorKind::kEmptyDocument);
}

TEST(SummarizeErrors, ZeroNBest) {
  HashEmbedder provider(64, 0);
  const auto centroids = gdpr_centroids(provider);
  EXPECT_EQ(kind_of([&] {
              summarize_document(make_document(kFiveSentences), {"doc", CentroidMode::kPdc, 0}, provider, centroids);
            }),
            ErrorKind::kArgument);
}

TEST(SummarizeErrors, CentroidsFromAnotherProvider) {
  HashEmbedder a(64, 0);
  HashEmbedder b(64, 1);
  const auto centroids = gdpr_centroids(a);
  EXPECT_EQ(kind_of([&] { summarize_document(make_document(kFiveSentences), {"doc"}, b, centroids); }),
            ErrorKind::kConfiguration);
  HashEmbedder c(32, 0);
  EXPECT_EQ(kind_of([&] { summarize_document(make_document(kFiveSentences), {"doc"}, c, centroids); }),
            ErrorKind::kConfiguration);
}

TEST(SummarizeErrors, TransportFailureBecomesEmbeddingError) {
  HashEmbedder hash(64, 0);
  const auto centroids = gdpr_centroids(hash);
  for (ErrorKind k : {ErrorKind::kTransport, ErrorKind::kProtocol}) {
    ThrowingProvider provider(k);
    try {
      summarize_document(make_document(kFiveSentences), {"doc"}, provider, centroids);
      FAIL() << "expected an embedding error";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kEmbedding);
      EXPECT_NE(std::string(e.what()).find("sidecar went away"), std::string::npos);
    }
  }
}

TEST(SummarizeErrors, ShortVectorListIsEmbeddingError) {
  ShortProvider provider;
  HashEmbedder hash(64, 0);
  const auto centroids = gdpr_centroids(hash);
  EXPECT_EQ(kind_of([&] { summarize_document(make_document(kFiveSentences), {"doc"}, provider, centroids); }),
            ErrorKind::kEmbedding);
}

TEST(SummarizeErrors, FixtureOnlyUrlIsPolicyError) {
  HashEmbedder provider(64, 0);
  const auto centroids = gdpr_centroids(provider);
  EXPECT_EQ(kind_of([&] { summarize({"https://example.com/privacy"}, provider, centroids); }), ErrorKind::kPolicy);
}

// ---------------------------------------------------------------------------
// k-means centroids and PCA space
// ---------------------------------------------------------------------------

TEST(SummarizeKmeans, GlossesAreCarried) {
  HashEmbedder provider(64, 0);
  const Document doc = fetch_document((testing::fixture_dir() / "driftwood_travel.html").string());
  const auto vectors = provider.embed(doc.texts());
  KMeansOptions options;
  options.k = 4;
  options.seed = 2;
  auto fit = kmeans_fit(vectors, options);
  CentroidSet set = pseudo_centroids(fit, vectors, doc.texts());
  set.provider = provider.descriptor();
  const Summary s = summarize_document(doc, {"d", CentroidMode::kKmeans}, provider, set);
  ASSERT_EQ(s.topics.size(), 4u);
  EXPECT_EQ(s.mode, SummaryMode::kKmeans);
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_EQ(s.topics[t].gloss, set.glosses[t]);
    // Pseudo-centroids are member sentences, so each one retrieves itself.
    EXPECT_EQ(s.topics[t].picks[0].text, set.glosses[t]);
  }
}

TEST(SummarizePca, RanksInProjectedSpace) {
  HashEmbedder provider(64, 0);
  const Document doc = fetch_document((testing::fixture_dir() / "evergreen_health.html").string());
  const auto vectors = provider.embed(doc.texts());
  const PcaModel pca = pca_fit(vectors, 5);
  const auto centroids = gdpr_centroids(provider);
  const Summary s = summarize_document(doc, {"e", CentroidMode::kPdc, 2, Space::pca(5)}, provider, centroids, &pca);
  EXPECT_EQ(s.space, Space::pca(5));
  const auto projected = testing::to_points(pca_transform(pca, vectors));
  for (std::size_t t = 0; t < 14; ++t) {
    const auto target = pca_transform(pca, centroids.centroids[t]).values();
    const auto expected = oracle::sorted_by_distance(projected, target);
    EXPECT_EQ(s.topics[t].picks[0].sentence_id, expected[0].first);
    EXPECT_NEAR(*s.topics[t].picks[0].distance, expected[0].second, 1e-9);
  }
  EXPECT_EQ(kind_of([&] { summarize_document(doc, {"e", CentroidMode::kPdc, 1, Space::pca(5)}, provider, centroids); }),
            ErrorKind::kConfiguration);
  EXPECT_EQ(kind_of([&] {
              summarize_document(doc, {"e", CentroidMode::kPdc, 1, Space::pca(4)}, provider, centroids, &pca);
            }),
            ErrorKind::kConfiguration);
}

// ---------------------------------------------------------------------------
// Random baseline
// ---------------------------------------------------------------------------

std::vector<std::string> pool() {
  const auto p = generic_sentence_pool();
  return {p.begin(), p.end()};
}

TEST(RandomBaseline, DeterministicForASeed) {
  const auto a = random_baseline_summary(14, 99, pool());
  const auto b = random_baseline_summary(14, 99, pool());
  EXPECT_EQ(a.sentences(), b.sentences());
}

TEST(RandomBaseline, PicksAreDistinct) {
  const auto p = pool();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_baseline_summary(p.size(), seed, p).sentences();
    EXPECT_EQ(std::set<std::string>(s.begin(), s.end()).size(), p.size());
  }
}

TEST(RandomBaseline, DifferentSeedsDiffer) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_NE(random_baseline_summary(14, seed, pool()).sentences(),
              random_baseline_summary(14, seed + 1000, pool()).sentences())
        << seed;
  }
}

TEST(RandomBaseline, DealtOntoLabels) {
  const auto headers = gdpr_topic_headers();
  const auto s = random_baseline_summary(14, 5, pool(), headers);
  ASSERT_EQ(s.topics.size(), 14u);
  for (std::size_t t = 0; t < 14; ++t) {
    EXPECT_EQ(s.topics[t].label, headers[t]);
    ASSERT_EQ(s.topics[t].picks.size(), 1u);
    EXPECT_FALSE(s.topics[t].picks[0].distance.has_value());
  }
  EXPECT_EQ(s.mode, SummaryMode::kRandom);
}

TEST(RandomBaseline, RejectsOversizedRequests) {
  EXPECT_EQ(kind_of([] { random_baseline_summary(0, 1, pool()); }), ErrorKind::kArgument);
  EXPECT_EQ(kind_of([] { random_baseline_summary(pool().size() + 1, 1, pool()); }), ErrorKind::kArgument);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

TEST(SummaryJson, StructureAndFourDecimals) {
  HashEmbedder provider(64, 0);
  const auto centroids = gdpr_centroids(provider);
  const Summary s = summarize_document(make_document(kFiveSentences, "policy \"x\".html"),
                                       {"doc", CentroidMode::kPdc, 2}, provider, centroids);
  const std::string text = summary_to_json(s);
  const auto json = nlohmann::json::parse(text);
  EXPECT_EQ(json["source"], "policy \"x\".html");
  EXPECT_EQ(json["mode"], "pdc");
  EXPECT_EQ(json["n_best"], 2);
  EXPECT_EQ(json["space"], "raw");
  EXPECT_EQ(json["stats"]["input_sentence_count"], 5);
  EXPECT_EQ(json["stats"]["output_sentence_count"], 28);
  ASSERT_EQ(json["topics"].size(), 14u);
  EXPECT_EQ(json["topics"][4]["label"], "Marketing");
  EXPECT_FALSE(json["topics"][0].contains("gloss"));
  ASSERT_EQ(json["topics"][0]["picks"].size(), 2u);
  EXPECT_NEAR(json["topics"][0]["picks"][0]["distance"].get<double>(), *s.topics[0].picks[0].distance, 5e-5);

  const std::regex number(R"re("(distance|reduction_ratio)": (-?[0-9.]+))re");
  int seen = 0;
  for (std::sregex_iterator it(text.begin(), text.end(), number), end; it != end; ++it, ++seen) {
    const std::string value = (*it)[2].str();
    EXPECT_EQ(value.size() - value.find('.') - 1, 4u) << value;
  }
  EXPECT_EQ(seen, 29);
}

TEST(SummaryJson, RandomPicksHaveNullDistance) {
  const auto json = nlohmann::json::parse(summary_to_json(random_baseline_summary(3, 1, pool())));
  EXPECT_EQ(json["mode"], "random");
  for (const auto& pick : json["topics"][0]["picks"]) EXPECT_TRUE(pick["distance"].is_null());
}

}  // namespace
}  // namespace ppsum
