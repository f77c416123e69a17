// Acceptance suite: one PASS/FAIL/SKIP line per release criterion.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ppsum/clustering.hpp"
#include "ppsum/corpus.hpp"
#include "ppsum/error.hpp"
#include "ppsum/evaluation.hpp"
#include "ppsum/pca.hpp"
#include "ppsum/remote_embedder.hpp"
#include "ppsum/summarizer.hpp"
#include "support/oracles.hpp"
#include "support/test_data.hpp"

namespace {

using namespace ppsum;
using Clock = std::chrono::steady_clock;

enum class Outcome { kPass, kFail, kSkip };

struct Verdict {
  Outcome outcome = Outcome::kPass;
  std::string detail;
};

Verdict pass(std::string detail) { return {Outcome::kPass, std::move(detail)}; }
Verdict fail(std::string detail) { return {Outcome::kFail, std::move(detail)}; }
Verdict skip(std::string detail) { return {Outcome::kSkip, std::move(detail)}; }

std::string fmt(const char* format, double value) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

double elapsed_s(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

Verdict rouge_l_matches_enumeration() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 200; ++i) {
    const auto a = testing::random_tokens(rng, 10, 4);
    const auto b = testing::random_tokens(rng, 10, 4);
    const auto dp = lcs_length(a, b);
    const auto brute = oracle::lcs_by_enumeration(a, b);
    if (dp != brute) {
      return fail("case " + std::to_string(i) + ": dp " + std::to_string(dp) + " vs " + std::to_string(brute));
    }
  }
  const double secs = elapsed_s(start);
  if (secs >= 10.0) return fail("took " + fmt("%.2f s", secs));
  return pass("200 cases equal, " + fmt("%.3f s", secs));
}

Verdict rouge1_hand_case() {
  const auto s = rouge_n("the cat sat", "the cat", 1);
  // P = 2/2, R = 2/3, F = 2PR/(P+R) = 0.8
  if (s.precision != 1.0 || std::abs(s.recall - 2.0 / 3.0) > 1e-15 || std::abs(s.f - 0.8) > 1e-15) {
    return fail(fmt("f = %.17g", s.f));
  }
  return pass(fmt("f = %.15f", s.f));
}

Verdict rouge_w_unit_weight_is_rouge_l() {
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::string a = testing::join(testing::random_tokens(rng, 15, 6));
    const std::string b = testing::join(testing::random_tokens(rng, 15, 6));
    const auto w = rouge_w(a, b, 1.0);
    const auto l = rouge_l(a, b);
    worst = std::max({worst, std::abs(w.precision - l.precision), std::abs(w.recall - l.recall), std::abs(w.f - l.f)});
  }
  if (worst > 1e-12) return fail(fmt("max difference %.3g", worst));
  return pass(fmt("100 pairs, max difference %.3g", worst));
}

Verdict kmeans_four_points_and_monotone_inertia() {
  const std::vector<std::vector<double>> points{{0, 0}, {0, 1}, {10, 0}, {10, 1}};
  const double optimum = oracle::best_two_partition_inertia(points);
  KMeansOptions options;
  options.k = 2;
  const auto result = kmeans_fit(testing::to_vectors(points), options);
  if (std::abs(result.inertia - 1.0) > 1e-9 || std::abs(result.inertia - optimum) > 1e-9) {
    return fail(fmt("inertia %.12f", result.inertia) + fmt(", exhaustive optimum %.12f", optimum));
  }
  std::mt19937_64 rng(4);
  for (int d = 0; d < 20; ++d) {
    const auto data = testing::to_vectors(testing::random_points(rng, 30 + rng() % 50, 2 + rng() % 6));
    KMeansOptions o;
    o.k = 2 + rng() % 6;
    o.seed = rng();
    const auto fit = kmeans_fit(data, o);
    for (std::size_t i = 1; i < fit.inertia_history.size(); ++i) {
      if (fit.inertia_history[i] > fit.inertia_history[i - 1] + 1e-9) {
        return fail("dataset " + std::to_string(d) + ": inertia rose at iteration " + std::to_string(i));
      }
    }
  }
  return pass(fmt("inertia %.12f, equal to exhaustive search; 20 datasets nonincreasing", result.inertia));
}

Verdict silhouette_matches_definition() {
  std::mt19937_64 rng(9);
  double worst = 0.0;
  for (int d = 0; d < 20; ++d) {
    const std::size_t n = 5 + rng() % 46;
    const auto points = testing::random_points(rng, n, 3);
    std::vector<std::size_t> labels(n);
    const std::size_t k = 2 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) labels[i] = i < k ? i : rng() % k;
    const double got = silhouette_score(testing::to_vectors(points), labels);
    worst = std::max(worst, std::abs(got - oracle::silhouette(points, labels)));
  }
  if (worst > 1e-9) return fail(fmt("max difference %.3g", worst));
  try {
    const auto points = testing::to_vectors({{0, 0}, {1, 1}, {2, 2}});
    const std::vector<std::size_t> one_cluster{0, 0, 0};
    silhouette_score(points, one_cluster);
    return fail("single cluster did not raise");
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kUndefinedScore || std::string(e.what()).find("FAILED") == std::string::npos) {
      return fail(std::string("unexpected error: ") + e.what());
    }
  }
  return pass(fmt("20 datasets, max difference %.3g; single cluster -> FAILED", worst));
}

Verdict pca_properties() {
  std::mt19937_64 rng(31);
  const std::size_t d = 6;
  const auto points = testing::random_points(rng, 40, d);
  const auto data = testing::to_vectors(points);
  const PcaModel model = pca_fit(data, d);
  double ortho = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double dot = 0.0;
      for (std::size_t c = 0; c < d; ++c) dot += model.components(i, c) * model.components(j, c);
      ortho = std::max(ortho, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  }
  double ratio_sum = 0.0;
  for (double r : model.explained_variance_ratio) ratio_sum += r;
  double recon = 0.0;
  for (const auto& v : data) {
    const auto back = pca_inverse_transform(model, pca_transform(model, v));
    recon = std::max(recon, euclidean_distance(back, v));
  }
  const PcaModel line = pca_fit(testing::to_vectors({{1, 1}, {2, 2}, {3, 3}, {4, 4}}), 2);
  const bool colinear_ok = std::abs(line.explained_variance_ratio[0] - 1.0) < 1e-9 &&
                           std::abs(line.explained_variance_ratio[1]) < 1e-9;
  if (ortho > 1e-8 || std::abs(ratio_sum - 1.0) > 1e-9 || recon >= 1e-6 || !colinear_ok) {
    return fail(fmt("orthonormality %.3g", ortho) + fmt(", ratio sum %.12f", ratio_sum) +
                fmt(", reconstruction %.3g", recon) + (colinear_ok ? "" : ", colinear ratios wrong"));
  }
  return pass(fmt("orthonormality %.2g", ortho) + fmt(", ratio sum - 1 = %.2g", ratio_sum - 1.0) +
              fmt(", reconstruction %.2g", recon) + ", colinear [1, 0]");
}

Verdict pdc_matches_argmin() {
  std::mt19937_64 rng(1000);
  const auto centroid_points = testing::random_points(rng, 14, 8);
  const auto points = testing::random_points(rng, 1000, 8);
  CentroidSet set;
  set.mode = CentroidMode::kPdc;
  set.centroids = testing::to_vectors(centroid_points);
  for (std::size_t c = 0; c < 14; ++c) {
    set.labels.push_back("t" + std::to_string(c));
    set.glosses.push_back("");
  }
  const auto result = pdc_assign(testing::to_vectors(points), set);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (result.assignments[i] != oracle::argmin_centroid(points[i], centroid_points)) {
      return fail("point " + std::to_string(i) + " disagrees");
    }
  }
  const auto tie_centroids = testing::to_vectors({{1, 0}, {-1, 0}, {0, 1}});
  const SentenceVector origin(std::vector<double>{0, 0});
  if (nearest_centroid(origin, tie_centroids) != 0) return fail("tie did not go to the lowest index");
  return pass("1000 x 14 equal to exhaustive argmin; tie -> index 0");
}

Verdict pipeline_self_retrieval() {
  const auto start = Clock::now();
  HashEmbedder provider(768, 0);
  const auto centroids = gdpr_centroids(provider);
  SummaryRequest request;
  request.source = (testing::fixture_dir() / "gdpr_sentences.html").string();
  request.n_best = 1;
  const Summary summary = summarize(request, provider, centroids);
  const auto combined = gdpr_combined_sentences();
  if (summary.topics.size() != 14) return fail(std::to_string(summary.topics.size()) + " topics");
  for (std::size_t t = 0; t < 14; ++t) {
    const auto& picks = summary.topics[t].picks;
    if (picks.size() != 1 || picks[0].text != combined[t] || *picks[0].distance != 0.0) {
      return fail("topic " + std::to_string(t) + " picked \"" + (picks.empty() ? "" : picks[0].text) + "\"");
    }
  }
  const double secs = elapsed_s(start);
  if (secs >= 5.0) return fail("took " + fmt("%.2f s", secs));
  return pass("14 verbatim picks at distance 0, " + fmt("%.3f s", secs));
}

Verdict ssd_monotone() {
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    const auto topics = testing::to_vectors(testing::random_points(rng, 14, 6));
    auto summary = testing::random_points(rng, 1 + rng() % 10, 6);
    const std::vector<std::string> topic_texts(14, "t");
    const auto before = ssd_from_vectors(topic_texts, topics, std::vector<std::string>(summary.size(), "s"),
                                         testing::to_vectors(summary));
    summary.push_back(testing::random_point(rng, 6));
    const auto after = ssd_from_vectors(topic_texts, topics, std::vector<std::string>(summary.size(), "s"),
                                        testing::to_vectors(summary));
    for (std::size_t t = 0; t < 14; ++t) {
      if (after.per_topic[t].squared_distance > before.per_topic[t].squared_distance) {
        return fail("trial " + std::to_string(trial) + " topic " + std::to_string(t) + " increased");
      }
    }
  }
  return pass("100 trials, no per-topic increase");
}

Verdict batch_arithmetic() {
  HashEmbedder provider(256, 0);
  BatchOptions options;
  options.fetch.fixture_root = testing::fixture_dir();
  options.seed = 1;
  const auto inputs = batch_inputs(load_manifest(testing::fixture_dir() / "manifest.csv"));
  const std::vector<CentroidMode> modes{CentroidMode::kPdc};
  double worst = 0.0;
  for (StdDevKind kind : {StdDevKind::kPopulation, StdDevKind::kSample}) {
    options.std_dev = kind;
    const auto report = batch_evaluate(inputs, modes, provider, options);
    for (const auto& agg : report.aggregates) {
      std::vector<double> ssd;
      std::vector<std::vector<double>> rouge(kRougeColumns.size());
      for (const auto& row : report.rows) {
        if (row.model != agg.model || row.error) continue;
        ssd.push_back(*row.ssd);
        if (row.model == EvalModel::kGdpr && *row.ssd != report.gdpr_ssd) return fail("GDPR column is not constant");
        if (row.rouge) {
          const auto cols = rouge_columns(*row.rouge);
          for (std::size_t c = 0; c < cols.size(); ++c) rouge[c].push_back(cols[c]);
        }
      }
      const auto check = [&](const Stat& stat, const std::vector<double>& values) {
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        double sq = 0.0;
        for (double v : values) sq += (v - mean) * (v - mean);
        const double dof = static_cast<double>(values.size()) - (kind == StdDevKind::kSample ? 1.0 : 0.0);
        const double sd = std::sqrt(sq / dof);
        worst = std::max({worst, std::abs(stat.mean - mean), std::abs(stat.std_dev - sd)});
      };
      check(agg.ssd, ssd);
      if (agg.rouge) {
        for (std::size_t c = 0; c < kRougeColumns.size(); ++c) check((*agg.rouge)[c], rouge[c]);
      }
    }
  }
  if (worst > 1e-9) return fail(fmt("max difference %.3g", worst));
  return pass(fmt("means and std-devs within %.2g; GDPR column constant", worst));
}

Verdict sidecar_ordering() {
  const char* endpoint = std::getenv("EMBED_ENDPOINT");
  if (endpoint == nullptr || *endpoint == '\0') return skip("set EMBED_ENDPOINT to run against the embedding service");
  const char* manifest_env = std::getenv("PPSUM_ACCEPTANCE_MANIFEST");
  const std::filesystem::path manifest =
      manifest_env ? std::filesystem::path(manifest_env) : testing::fixture_dir() / "manifest.csv";

  RemoteEmbedder provider({endpoint, std::chrono::milliseconds(60000)});
  const auto inputs = batch_inputs(load_manifest(manifest));
  FetchOptions fetch;
  fetch.fixture_root = manifest.parent_path();
  std::vector<std::string> corpus;
  for (const auto& input : inputs) {
    for (const auto& s : fetch_document(input.source, fetch).sentences) corpus.push_back(s.text);
  }
  const auto vectors = provider.embed(corpus);
  KMeansOptions km;
  km.k = kDefaultTopicCount;
  CentroidSet kmeans = pseudo_centroids(kmeans_fit(vectors, km), vectors, corpus);
  kmeans.provider = provider.descriptor();

  BatchOptions options;
  options.fetch = fetch;
  options.kmeans_centroids = &kmeans;
  const std::vector<CentroidMode> modes{CentroidMode::kPdc, CentroidMode::kKmeans};
  const auto report = batch_evaluate(inputs, modes, provider, options);

  const ModelAggregate *random = nullptr, *pdc = nullptr, *kmeans_agg = nullptr;
  for (const auto& agg : report.aggregates) {
    if (agg.model == EvalModel::kRandom) random = &agg;
    if (agg.model == EvalModel::kPdc) pdc = &agg;
    if (agg.model == EvalModel::kKmeans) kmeans_agg = &agg;
  }
  if (!random || !pdc || !kmeans_agg || !pdc->rouge) return fail("missing aggregates");
  std::size_t docs = 0, pdc_wins = 0;
  for (std::size_t i = 0; i + 3 < report.rows.size(); i += 4) {
    const auto& p = report.rows[i + 1];
    const auto& k = report.rows[i + 2];
    if (p.error || k.error) continue;
    ++docs;
    if (*p.ssd < *k.ssd) ++pdc_wins;
  }
  const double r_random = (*random->rouge)[6].mean;
  const double r_pdc = (*pdc->rouge)[6].mean;
  const double r_kmeans = (*kmeans_agg->rouge)[6].mean;
  const std::string summary = fmt("SSD pdc %.2f", pdc->ssd.mean) + fmt(" kmeans %.2f", kmeans_agg->ssd.mean) +
                              fmt(" random %.2f", random->ssd.mean) + fmt("; R1/RL pdc %.4f", r_pdc) +
                              fmt(" kmeans %.4f", r_kmeans) + fmt(" random %.4f", r_random) + "; PDC wins " +
                              std::to_string(pdc_wins) + "/" + std::to_string(docs);
  const bool ordered = pdc->ssd.mean < kmeans_agg->ssd.mean && kmeans_agg->ssd.mean < random->ssd.mean &&
                       r_pdc > r_kmeans && r_kmeans > r_random;
  const bool wins = docs > 0 && static_cast<double>(pdc_wins) >= 0.8 * static_cast<double>(docs);
  return ordered && wins ? pass(summary) : fail(summary);
}

struct Criterion {
  const char* name;
  std::function<Verdict()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"rouge-l-dp-equals-enumeration", rouge_l_matches_enumeration},
      {"rouge-1-hand-case", rouge1_hand_case},
      {"rouge-w-weight-1-equals-rouge-l", rouge_w_unit_weight_is_rouge_l},
      {"kmeans-optimum-and-monotone-inertia", kmeans_four_points_and_monotone_inertia},
      {"silhouette-matches-definition", silhouette_matches_definition},
      {"pca-orthonormal-ratios-reconstruction", pca_properties},
      {"pdc-equals-exhaustive-argmin", pdc_matches_argmin},
      {"pipeline-self-retrieval", pipeline_self_retrieval},
      {"ssd-monotone-under-additions", ssd_monotone},
      {"batch-report-arithmetic", batch_arithmetic},
      {"embedding-service-model-ordering", sidecar_ordering},
  };

  int passed = 0, failed = 0, skipped = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = fail(std::string("threw: ") + e.what());
    }
    const double ms = elapsed_s(start) * 1000.0;
    const char* tag = v.outcome == Outcome::kPass ? "PASS" : v.outcome == Outcome::kFail ? "FAIL" : "SKIP";
    std::printf("%s %-40s %s (%.1f ms)\n", tag, c.name, v.detail.c_str(), ms);
    (v.outcome == Outcome::kPass ? passed : v.outcome == Outcome::kFail ? failed : skipped)++;
  }
  std::printf("%d passed, %d failed, %d skipped\n", passed, failed, skipped);
  return failed == 0 ? 0 : 1;
}
