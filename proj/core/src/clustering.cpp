#include "ppsum/clustering.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

#include "ppsum/error.hpp"
#include "random.hpp"

namespace ppsum {

std::string_view to_string(CentroidMode mode) { return mode == CentroidMode::kPdc ? "pdc" : "kmeans"; }

CentroidMode parse_centroid_mode(std::string_view text) {
  if (text == "pdc") return CentroidMode::kPdc;
  if (text == "kmeans") return CentroidMode::kKmeans;
  fail(ErrorKind::kArgument, "unknown mode '" + std::string(text) + "' (expected pdc or kmeans)");
}

std::string Space::to_string() const {
  return is_raw() ? std::string("raw") : "pca(" + std::to_string(pca_components) + ")";
}

std::string cluster_label(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "cluster-%02zu", index);
  return buf;
}

void validate(const CentroidSet& set) {
  require(!set.centroids.empty(), ErrorKind::kArgument, "centroid set is empty");
  require(set.labels.size() == set.centroids.size(), ErrorKind::kArgument,
          "centroid set has " + std::to_string(set.labels.size()) + " labels for " +
              std::to_string(set.centroids.size()) + " centroids");
  require(set.glosses.empty() || set.glosses.size() == set.centroids.size(), ErrorKind::kArgument,
          "centroid glosses do not line up with centroids");
  const std::size_t d = set.dim();
  require(d > 0, ErrorKind::kArgument, "centroids have zero dimension");
  for (const auto& c : set.centroids) {
    require(c.dim() == d, ErrorKind::kArgument, "centroids have mixed dimensions");
  }
}

namespace {

void check_uniform(std::span<const SentenceVector> data) {
  require(!data.empty(), ErrorKind::kArgument, "clustering needs at least one point");
  const std::size_t d = data.front().dim();
  require(d > 0, ErrorKind::kArgument, "clustering needs non-empty vectors");
  for (const auto& v : data) require(v.dim() == d, ErrorKind::kArgument, "clustering input has mixed dimensions");
}

using detail::uniform01;
using detail::uniform_index;

// Index of the first point whose cumulative weight exceeds `target`.
std::size_t sample_weighted(std::span<const double> weights, double target) {
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cumulative += weights[i];
    last_positive = i;
    if (cumulative > target) return i;
  }
  return last_positive;
}

// Greedy k-means++: each new center is the best of several D^2-weighted draws.
std::vector<SentenceVector> kmeans_plus_plus(std::span<const SentenceVector> data, std::size_t k,
                                             std::mt19937_64& rng) {
  const std::size_t n = data.size();
  const int trials = 2 + static_cast<int>(std::log(static_cast<double>(k)));

  std::vector<SentenceVector> centers;
  centers.reserve(k);
  centers.push_back(data[uniform_index(rng, n)]);

  std::vector<double> closest(n);
  for (std::size_t i = 0; i < n; ++i) closest[i] = squared_distance(data[i], centers.front());
  double potential = std::accumulate(closest.begin(), closest.end(), 0.0);

  std::vector<double> candidate_closest(n);
  std::vector<double> best_closest(n);
  while (centers.size() < k) {
    std::size_t best = 0;
    double best_potential = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
      const std::size_t candidate =
          potential > 0.0 ? sample_weighted(closest, uniform01(rng) * potential) : uniform_index(rng, n);
      double candidate_potential = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        candidate_closest[i] = std::min(closest[i], squared_distance(data[i], data[candidate]));
        candidate_potential += candidate_closest[i];
      }
      if (candidate_potential < best_potential) {
        best_potential = candidate_potential;
        best = candidate;
        best_closest.swap(candidate_closest);
      }
    }
    centers.push_back(data[best]);
    closest.swap(best_closest);
    potential = best_potential;
  }
  return centers;
}

std::vector<std::size_t> assign_all(std::span<const SentenceVector> data, std::span<const SentenceVector> centers,
                                    double& inertia) {
  std::vector<std::size_t> out(data.size());
  inertia = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centers.size(); ++j) {
      const double d2 = squared_distance(data[i], centers[j]);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = j;
      }
    }
    out[i] = best;
    inertia += best_d2;
  }
  return out;
}

struct LloydRun {
  std::vector<SentenceVector> centers;
  std::vector<std::size_t> assignments;
  double inertia = 0.0;
  int iterations = 0;
  std::vector<double> history;
};

LloydRun lloyd(std::span<const SentenceVector> data, std::vector<SentenceVector> centers, int max_iter,
               double tol) {
  const std::size_t k = centers.size();
  const std::size_t d = data.front().dim();
  LloydRun run;

  for (int iter = 1; iter <= max_iter; ++iter) {
    double inertia = 0.0;
    run.assignments = assign_all(data, centers, inertia);
    assert(run.history.empty() || inertia <= run.history.back() * (1.0 + 1e-12) + 1e-12);
    run.history.push_back(inertia);

    std::vector<std::vector<double>> sums(k, std::vector<double>(d, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < data.size(); ++i) {
      auto& sum = sums[run.assignments[i]];
      for (std::size_t j = 0; j < d; ++j) sum[j] += data[i][j];
      ++counts[run.assignments[i]];
    }

    std::vector<SentenceVector> next(k);
    std::vector<std::size_t> empty;
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        empty.push_back(c);
        continue;
      }
      for (double& v : sums[c]) v /= static_cast<double>(counts[c]);
      next[c] = SentenceVector(std::move(sums[c]));
    }
    if (!empty.empty()) {
      // Farthest points from their current centroid, ties to the lowest index.
      std::vector<std::size_t> order(data.size());
      std::iota(order.begin(), order.end(), 0);
      std::vector<double> dist(data.size());
      for (std::size_t i = 0; i < data.size(); ++i) dist[i] = squared_distance(data[i], centers[run.assignments[i]]);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
      for (std::size_t e = 0; e < empty.size(); ++e) next[empty[e]] = data[order[e % order.size()]];
    }

    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) shift = std::max(shift, euclidean_distance(next[c], centers[c]));
    centers = std::move(next);
    run.iterations = iter;
    if (shift < tol || shift == 0.0) break;
  }

  double inertia = 0.0;
  run.assignments = assign_all(data, centers, inertia);
  run.history.push_back(inertia);
  run.inertia = inertia;
  run.centers = std::move(centers);
  return run;
}

CentroidSet kmeans_centroid_set(std::vector<SentenceVector> centers) {
  CentroidSet set;
  set.mode = CentroidMode::kKmeans;
  for (std::size_t c = 0; c < centers.size(); ++c) set.labels.push_back(cluster_label(c));
  set.centroids = std::move(centers);
  return set;
}

}  // namespace

ClusteringResult kmeans_fit(std::span<const SentenceVector> data, const KMeansOptions& options) {
  check_uniform(data);
  require(options.k >= 1, ErrorKind::kArgument, "k must be positive");
  require(options.k <= data.size(), ErrorKind::kArgument,
          "k = " + std::to_string(options.k) + " exceeds the " + std::to_string(data.size()) + " data points");
  require(options.max_iter >= 1 && options.n_init >= 1 && options.tol >= 0.0, ErrorKind::kArgument,
          "max_iter and n_init must be positive and tol nonnegative");

  std::mt19937_64 rng(options.seed);
  std::optional<LloydRun> best;
  for (int run = 0; run < options.n_init; ++run) {
    LloydRun candidate = lloyd(data, kmeans_plus_plus(data, options.k, rng), options.max_iter, options.tol);
    if (!best || candidate.inertia < best->inertia) best = std::move(candidate);
  }

  ClusteringResult result;
  result.assignments = std::move(best->assignments);
  result.centroids = kmeans_centroid_set(std::move(best->centers));
  result.inertia = best->inertia;
  result.iterations = best->iterations;
  result.seed = options.seed;
  result.inertia_history = std::move(best->history);
  return result;
}

ClusteringResult minibatch_kmeans_fit(std::span<const SentenceVector> data, const MiniBatchOptions& options) {
  check_uniform(data);
  const std::size_t n = data.size();
  const std::size_t d = data.front().dim();
  require(options.k >= 1 && options.k <= n, ErrorKind::kArgument,
          "k = " + std::to_string(options.k) + " must lie in [1, " + std::to_string(n) + "]");
  require(options.batch_size >= 1 && options.batch_size <= n, ErrorKind::kArgument,
          "batch_size = " + std::to_string(options.batch_size) + " must lie in [1, " + std::to_string(n) + "]");
  require(options.max_iter >= 1, ErrorKind::kArgument, "max_iter must be positive");

  std::mt19937_64 rng(options.seed);
  std::vector<SentenceVector> centers = kmeans_plus_plus(data, options.k, rng);
  std::vector<double> counts(options.k, 0.0);
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);

  int iterations = 0;
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    std::span<const std::size_t> batch(pool);
    if (options.batch_size < n) {
      for (std::size_t i = 0; i < options.batch_size; ++i) std::swap(pool[i], pool[i + uniform_index(rng, n - i)]);
      batch = batch.first(options.batch_size);
    }

    std::vector<std::vector<double>> sums(options.k, std::vector<double>(d, 0.0));
    std::vector<std::size_t> members(options.k, 0);
    for (std::size_t idx : batch) {
      const std::size_t c = nearest_centroid(data[idx], centers);
      for (std::size_t j = 0; j < d; ++j) sums[c][j] += data[idx][j];
      ++members[c];
    }

    double shift = 0.0;
    for (std::size_t c = 0; c < options.k; ++c) {
      if (members[c] == 0) continue;
      counts[c] += static_cast<double>(members[c]);
      const double rate = 1.0 / counts[c];
      double moved = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        // Equivalent to applying x -> c + (x - c)/count for each member in turn.
        const double delta = (sums[c][j] - static_cast<double>(members[c]) * centers[c][j]) * rate;
        centers[c][j] += delta;
        moved += delta * delta;
      }
      shift = std::max(shift, std::sqrt(moved));
    }
    iterations = iter;
    if (options.tol > 0.0 && shift < options.tol) break;
  }

  ClusteringResult result;
  double inertia = 0.0;
  result.assignments = assign_all(data, centers, inertia);
  result.inertia = inertia;
  result.inertia_history.push_back(inertia);
  result.centroids = kmeans_centroid_set(std::move(centers));
  result.iterations = iterations;
  result.seed = options.seed;
  return result;
}

std::size_t nearest_centroid(const SentenceVector& point, std::span<const SentenceVector> centroids) {
  require(!centroids.empty(), ErrorKind::kArgument, "no centroids");
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < centroids.size(); ++j) {
    const double d2 = squared_distance(point, centroids[j]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = j;
    }
  }
  return best;
}

ClusteringResult pdc_assign(std::span<const SentenceVector> data, const CentroidSet& centroids) {
  validate(centroids);
  for (const auto& v : data) {
    require(v.dim() == centroids.dim(), ErrorKind::kArgument,
            "point dim " + std::to_string(v.dim()) + " does not match centroid dim " + std::to_string(centroids.dim()));
  }
  ClusteringResult result;
  result.centroids = centroids;
  result.assignments = assign_all(data, centroids.centroids, result.inertia);
  result.inertia_history.push_back(result.inertia);
  return result;
}

double compute_inertia(std::span<const SentenceVector> data, std::span<const std::size_t> assignments,
                       std::span<const SentenceVector> centroids) {
  require(data.size() == assignments.size(), ErrorKind::kArgument, "assignments do not line up with data");
  double inertia = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    require(assignments[i] < centroids.size(), ErrorKind::kArgument, "assignment index out of range");
    inertia += squared_distance(data[i], centroids[assignments[i]]);
  }
  return inertia;
}

double silhouette_score(std::span<const SentenceVector> data, std::span<const std::size_t> assignments) {
  require(data.size() == assignments.size(), ErrorKind::kArgument, "assignments do not line up with data");

  // Compact the labels to 0..C-1 in order of first appearance.
  std::vector<std::size_t> label_of;
  std::vector<std::size_t> cluster(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto it = std::find(label_of.begin(), label_of.end(), assignments[i]);
    cluster[i] = static_cast<std::size_t>(it - label_of.begin());
    if (it == label_of.end()) label_of.push_back(assignments[i]);
  }
  const std::size_t clusters = label_of.size();
  require(clusters >= 2, ErrorKind::kUndefinedScore,
          "silhouette needs at least two clusters, got " + std::to_string(clusters) + " (FAILED)");

  std::vector<std::size_t> sizes(clusters, 0);
  for (std::size_t c : cluster) ++sizes[c];

  const std::size_t n = data.size();
  std::vector<double> sums(n * clusters, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = euclidean_distance(data[i], data[j]);
      sums[i * clusters + cluster[j]] += dist;
      sums[j * clusters + cluster[i]] += dist;
    }
  }

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t own = cluster[i];
    if (sizes[own] <= 1) continue;
    const double a = sums[i * clusters + own] / static_cast<double>(sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < clusters; ++c) {
      if (c != own) b = std::min(b, sums[i * clusters + c] / static_cast<double>(sizes[c]));
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

CentroidSet pseudo_centroids(const ClusteringResult& result, std::span<const SentenceVector> data,
                             std::span<const std::string> texts) {
  require(texts.size() == data.size(), ErrorKind::kArgument,
          std::to_string(texts.size()) + " texts for " + std::to_string(data.size()) + " vectors");
  require(result.assignments.size() == data.size(), ErrorKind::kArgument,
          "clustering result does not come from this data");
  const auto& means = result.centroids.centroids;

  CentroidSet out;
  out.mode = CentroidMode::kKmeans;
  out.space = result.centroids.space;
  out.provider = result.centroids.provider;
  for (std::size_t c = 0; c < means.size(); ++c) {
    std::optional<std::size_t> best;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (result.assignments[i] != c) continue;
      const double d2 = squared_distance(data[i], means[c]);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = i;
      }
    }
    require(best.has_value(), ErrorKind::kEmptyCluster, "cluster " + std::to_string(c) + " has no members");
    out.labels.push_back(cluster_label(c));
    out.centroids.push_back(data[*best]);
    out.glosses.push_back(texts[*best]);
  }
  return out;
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kKmeans: return "kmeans";
    case Algorithm::kMiniBatchKmeans: return "minibatch_kmeans";
    case Algorithm::kPdc: return "pdc";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "kmeans") return Algorithm::kKmeans;
  if (text == "minibatch_kmeans" || text == "minibatch") return Algorithm::kMiniBatchKmeans;
  if (text == "pdc") return Algorithm::kPdc;
  fail(ErrorKind::kArgument, "unknown clustering algorithm '" + std::string(text) + "'");
}

std::vector<SweepRow> silhouette_sweep(std::span<const SentenceVector> data, std::span<const Algorithm> algorithms,
                                       std::span<const std::size_t> n_comp_values, const SweepOptions& options) {
  std::vector<SweepRow> rows;
  for (std::size_t n_comp : n_comp_values) {
    const PcaModel pca = pca_fit(data, n_comp);
    const std::vector<SentenceVector> reduced = pca_transform(pca, data);
    for (Algorithm algorithm : algorithms) {
      ClusteringResult fit;
      switch (algorithm) {
        case Algorithm::kKmeans:
          fit = kmeans_fit(reduced, {.k = options.k, .seed = options.seed});
          break;
        case Algorithm::kMiniBatchKmeans:
          fit = minibatch_kmeans_fit(reduced, {.k = options.k,
                                               .seed = options.seed,
                                               .batch_size = std::min(options.batch_size, reduced.size())});
          break;
        case Algorithm::kPdc: {
          require(options.pdc_centroids.has_value(), ErrorKind::kArgument, "PDC sweep rows need centroids");
          CentroidSet projected = *options.pdc_centroids;
          projected.centroids = pca_transform(pca, options.pdc_centroids->centroids);
          projected.space = Space::pca(n_comp);
          fit = pdc_assign(reduced, projected);
          break;
        }
      }
      SweepRow row{algorithm, n_comp, std::nullopt};
      try {
        row.silhouette = silhouette_score(reduced, fit.assignments);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kUndefinedScore) throw;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "algorithm,n_comp,silhouette\n";
  char buf[64];
  for (const auto& row : rows) {
    out += to_string(row.algorithm);
    out += ',' + std::to_string(row.n_comp) + ',';
    if (row.silhouette) {
      std::snprintf(buf, sizeof buf, "%.4f", *row.silhouette);
      out += buf;
    } else {
      out += "FAILED";
    }
    out += '\n';
  }
  return out;
}

}  // namespace ppsum
