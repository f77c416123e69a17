#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "ppsum/clustering.hpp"
#include "ppsum/corpus.hpp"
#include "ppsum/embedding.hpp"
#include "ppsum/embedding_store.hpp"
#include "ppsum/evaluation.hpp"
#include "ppsum/pca.hpp"
#include "ppsum/remote_embedder.hpp"
#include "ppsum/report.hpp"
#include "ppsum/summarizer.hpp"
#include "ppsum/text.hpp"

namespace ppsum::cli {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kArgument:
    case ErrorKind::kConfiguration:
    case ErrorKind::kPolicy:
    case ErrorKind::kModeMismatch:
      return kExitUsage;
    case ErrorKind::kTransport:
    case ErrorKind::kProtocol:
    case ErrorKind::kHttpStatus:
    case ErrorKind::kEmbedding:
      return kExitNetwork;
    case ErrorKind::kIo:
    case ErrorKind::kFormat:
    case ErrorKind::kIntegrity:
    case ErrorKind::kEmptyExtraction:
    case ErrorKind::kEmptyDocument:
    case ErrorKind::kUndefinedScore:
    case ErrorKind::kEmptyCluster:
      return kExitData;
  }
  return kExitData;
}

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::string provider = "hash";
  std::string endpoint;
  std::size_t dim = 768;
  std::uint64_t hash_seed = 0;
  std::uint64_t seed = 0;
  std::string fixture_root;
  bool live = false;
  std::size_t min_tokens = kDefaultMinTokens;
  int jobs = 1;
  int timeout_ms = 30000;
};

struct EmbedOptions {
  std::string corpus;
  std::string store;
};

struct FitOptions {
  std::string store;
  std::size_t k = kDefaultTopicCount;
  std::string algorithm = "kmeans";
  std::size_t batch_size = 1024;
  std::size_t n_comp = 0;
  std::string pca_out;
  std::string out;
};

struct SummarizeOptions {
  std::string source;
  std::string mode = "pdc";
  std::size_t n_best = 1;
  std::string centroids;
  std::string store;
  std::size_t n_comp = 0;
  std::string pca;
  std::string out;
};

struct EvaluateOptions {
  std::string manifest;
  std::vector<std::string> modes{"pdc"};
  std::string centroids;
  std::string store;
  std::size_t n_best = 1;
  std::size_t n_comp = 0;
  std::string pca;
  std::size_t random_sentences = 14;
  double rouge_w = 1.0;
  std::string std_dev = "population";
  std::string out_dir;
};

struct SweepCommandOptions {
  std::string store;
  std::vector<std::string> algorithms{"kmeans"};
  std::vector<std::size_t> n_comp{3, 10, 100, 140};
  std::size_t k = kDefaultTopicCount;
  std::size_t batch_size = 1024;
  std::string out;
};

// Owns the configured provider and, optionally, a store wrapped around it.
class ProviderStack {
 public:
  explicit ProviderStack(const GlobalOptions& g) {
    if (g.provider == "hash") {
      base_ = std::make_unique<HashEmbedder>(g.dim, g.hash_seed);
    } else if (g.provider == "remote") {
      require(!g.endpoint.empty(), ErrorKind::kConfiguration,
              "the remote provider needs --endpoint or EMBED_ENDPOINT");
      base_ = std::make_unique<RemoteEmbedder>(
          RemoteEmbedderOptions{g.endpoint, std::chrono::milliseconds(g.timeout_ms)});
    } else {
      fail(ErrorKind::kArgument, "unknown provider '" + g.provider + "' (expected hash or remote)");
    }
  }

  void attach_store(const std::string& path) {
    if (path.empty()) return;
    store_ = std::make_unique<EmbeddingStore>(EmbeddingStore::open(path, base_->descriptor()));
    cached_ = std::make_unique<CachedEmbedder>(*store_, *base_);
  }

  EmbeddingProvider& provider() { return cached_ ? static_cast<EmbeddingProvider&>(*cached_) : *base_; }
  EmbeddingProvider& base() { return *base_; }
  EmbeddingStore* store() { return store_.get(); }

 private:
  std::unique_ptr<EmbeddingProvider> base_;
  std::unique_ptr<EmbeddingStore> store_;
  std::unique_ptr<CachedEmbedder> cached_;
};

FetchOptions fetch_options(const GlobalOptions& g) {
  FetchOptions options;
  options.policy = g.live ? FetchPolicy::kLive : FetchPolicy::kFixtureOnly;
  if (!g.fixture_root.empty()) options.fixture_root = g.fixture_root;
  options.min_tokens = g.min_tokens;
  return options;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(file), ErrorKind::kIo, "cannot write " + path);
  file << content;
  require(static_cast<bool>(file.flush()), ErrorKind::kIo, "failed writing " + path);
}

bool has_extension(const fs::path& path, std::initializer_list<std::string_view> extensions) {
  const std::string ext = ascii_lower(path.extension().string());
  return std::find(extensions.begin(), extensions.end(), ext) != extensions.end();
}

// Sentences of a corpus: a manifest CSV, one HTML file, a directory of HTML
// files (sorted by name), or a text file holding one sentence per line.
std::vector<std::string> corpus_sentences(const std::string& corpus, const FetchOptions& fetch) {
  std::vector<std::string> out;
  auto add_document = [&](const std::string& source) {
    for (auto& s : fetch_document(source, fetch).sentences) out.push_back(std::move(s.text));
  };

  fs::path path(corpus);
  if (path.is_relative() && !fs::exists(path) && fetch.fixture_root) path = *fetch.fixture_root / path;
  require(fs::exists(path), ErrorKind::kIo, "corpus " + corpus + " does not exist");

  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && has_extension(entry.path(), {".html", ".htm"})) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) add_document(file.string());
  } else if (has_extension(path, {".csv"})) {
    FetchOptions manifest_fetch = fetch;
    if (!manifest_fetch.fixture_root) manifest_fetch.fixture_root = path.parent_path();
    for (const auto& input : batch_inputs(load_manifest(path))) {
      for (auto& s : fetch_document(input.source, manifest_fetch).sentences) out.push_back(std::move(s.text));
    }
  } else if (has_extension(path, {".html", ".htm"})) {
    add_document(path.string());
  } else {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::kIo, "cannot read " + path.string());
    std::string line;
    while (std::getline(in, line)) {
      std::string text = trim(line);
      if (!text.empty()) out.push_back(std::move(text));
    }
  }
  require(!out.empty(), ErrorKind::kEmptyExtraction, "corpus " + corpus + " holds no sentences");
  return out;
}

EmbeddingStore load_store_checked(const std::string& path, EmbeddingProvider& provider) {
  EmbeddingStore store = EmbeddingStore::load(path);
  const ProviderDescriptor expected = provider.descriptor();
  require(store.descriptor() == expected, ErrorKind::kConfiguration,
          "store " + path + " was built with " + describe(store.descriptor()) + " but the provider is " +
              describe(expected));
  require(store.size() > 0, ErrorKind::kEmptyDocument, "store " + path + " is empty");
  return store;
}

int cmd_embed(const GlobalOptions& g, const EmbedOptions& o, std::ostream& out) {
  ProviderStack stack(g);
  const auto sentences = corpus_sentences(o.corpus, fetch_options(g));
  EmbeddingStore store = EmbeddingStore::open(o.store, stack.base().descriptor());
  const std::size_t before = store.size();
  store_get_or_embed(store, sentences, stack.base());
  out << "sentences: " << sentences.size() << "\nnew entries: " << store.size() - before
      << "\nstore entries: " << store.size() << '\n';
  return kExitOk;
}

int cmd_fit(const GlobalOptions& g, const FitOptions& o, std::ostream& out) {
  ProviderStack stack(g);
  const EmbeddingStore store = load_store_checked(o.store, stack.base());
  std::vector<SentenceVector> data;
  std::vector<std::string> texts;
  for (const auto& entry : store.entries()) {
    data.push_back(entry.vector);
    texts.push_back(entry.text);
  }

  Space space;
  if (o.n_comp > 0) {
    require(!o.pca_out.empty(), ErrorKind::kArgument, "--n-comp needs --pca-out to save the PCA model");
    const PcaModel pca = pca_fit(data, o.n_comp);
    save_pca_model(pca, o.pca_out);
    data = pca_transform(pca, data);
    space = Space::pca(o.n_comp);
  }

  ClusteringResult result;
  switch (parse_algorithm(o.algorithm)) {
    case Algorithm::kKmeans:
      result = kmeans_fit(data, {.k = o.k, .seed = g.seed});
      break;
    case Algorithm::kMiniBatchKmeans:
      result = minibatch_kmeans_fit(data, {.k = o.k, .seed = g.seed, .batch_size = std::min(o.batch_size, data.size())});
      break;
    case Algorithm::kPdc:
      fail(ErrorKind::kArgument, "fit supports kmeans and minibatch_kmeans");
  }

  CentroidSet centroids = pseudo_centroids(result, data, texts);
  centroids.space = space;
  centroids.provider = store.descriptor();
  save_centroids(centroids, o.out);

  char inertia[64];
  std::snprintf(inertia, sizeof inertia, "%.6f", result.inertia);
  out << "points: " << data.size() << "\nclusters: " << centroids.size() << "\nspace: " << space.to_string()
      << "\ninertia: " << inertia << "\niterations: " << result.iterations << '\n';
  return kExitOk;
}

std::optional<PcaModel> load_pca_for(std::size_t n_comp, const std::string& path) {
  if (n_comp == 0) return std::nullopt;
  require(!path.empty(), ErrorKind::kArgument, "--n-comp needs --pca pointing at a fitted PCA model");
  return load_pca_model(path);
}

int cmd_summarize(const GlobalOptions& g, const SummarizeOptions& o, std::ostream& out) {
  ProviderStack stack(g);
  stack.attach_store(o.store);
  const CentroidMode mode = parse_centroid_mode(o.mode);
  const std::optional<PcaModel> pca = load_pca_for(o.n_comp, o.pca);

  CentroidSet centroids;
  if (!o.centroids.empty()) {
    centroids = load_centroids(o.centroids);
  } else {
    require(mode == CentroidMode::kPdc, ErrorKind::kArgument, "kmeans mode needs --centroids");
    centroids = gdpr_centroids(stack.provider());
  }

  SummaryRequest request{o.source, mode, o.n_best, Space::pca(o.n_comp)};
  const Summary summary =
      summarize(request, stack.provider(), centroids, fetch_options(g), pca ? &*pca : nullptr);
  write_output(o.out, summary_to_json(summary), out);
  return kExitOk;
}

int cmd_evaluate(const GlobalOptions& g, const EvaluateOptions& o, std::ostream& out) {
  ProviderStack stack(g);
  stack.attach_store(o.store);

  std::vector<CentroidMode> modes;
  for (const auto& m : o.modes) modes.push_back(parse_centroid_mode(m));
  std::optional<CentroidSet> kmeans;
  if (std::find(modes.begin(), modes.end(), CentroidMode::kKmeans) != modes.end()) {
    require(!o.centroids.empty(), ErrorKind::kArgument, "kmeans evaluation needs --centroids");
    kmeans = load_centroids(o.centroids);
  }
  require(o.std_dev == "population" || o.std_dev == "sample", ErrorKind::kArgument,
          "--std must be population or sample");
  const std::optional<PcaModel> pca = load_pca_for(o.n_comp, o.pca);

  BatchOptions options;
  options.seed = g.seed;
  options.n_best = o.n_best;
  options.random_sentences = o.random_sentences;
  options.fetch = fetch_options(g);
  if (!options.fetch.fixture_root) options.fetch.fixture_root = fs::path(o.manifest).parent_path();
  options.space = Space::pca(o.n_comp);
  options.pca = pca ? &*pca : nullptr;
  options.kmeans_centroids = kmeans ? &*kmeans : nullptr;
  options.rouge.w_weight = o.rouge_w;
  options.std_dev = o.std_dev == "sample" ? StdDevKind::kSample : StdDevKind::kPopulation;
  options.jobs = g.jobs;

  const auto inputs = batch_inputs(load_manifest(o.manifest));
  const BatchReport report = batch_evaluate(inputs, modes, stack.provider(), options);

  fs::create_directories(o.out_dir);
  const fs::path dir(o.out_dir);
  write_output((dir / "ssd.csv").string(), ssd_csv(report), out);
  write_output((dir / "rouge.csv").string(), rouge_csv(report), out);
  write_output((dir / "plot_data.csv").string(), plot_data_csv(report), out);

  std::size_t failed = 0;
  for (const auto& row : report.rows) {
    if (row.error) {
      ++failed;
      if (row.model == EvalModel::kRandom) out << "error: " << row.company << ": " << *row.error << '\n';
    }
  }
  out << "documents: " << inputs.size() << "\nrows: " << report.rows.size() << "\nfailed rows: " << failed
      << "\nreports: " << o.out_dir << '\n';
  return kExitOk;
}

int cmd_sweep(const GlobalOptions& g, const SweepCommandOptions& o, std::ostream& out) {
  ProviderStack stack(g);
  const EmbeddingStore store = load_store_checked(o.store, stack.base());
  std::vector<SentenceVector> data;
  for (const auto& entry : store.entries()) data.push_back(entry.vector);

  std::vector<Algorithm> algorithms;
  for (const auto& a : o.algorithms) algorithms.push_back(parse_algorithm(a));
  SweepOptions options{o.k, g.seed, o.batch_size, std::nullopt};
  if (std::find(algorithms.begin(), algorithms.end(), Algorithm::kPdc) != algorithms.end()) {
    options.pdc_centroids = gdpr_centroids(stack.base());
  }
  const auto rows = silhouette_sweep(data, algorithms, o.n_comp, options);
  write_output(o.out, sweep_csv(rows), out);
  return kExitOk;
}

int cmd_serve_check(const GlobalOptions& g, std::ostream& out) {
  require(!g.endpoint.empty(), ErrorKind::kConfiguration, "serve-check needs --endpoint or EMBED_ENDPOINT");
  RemoteEmbedder remote({g.endpoint, std::chrono::milliseconds(g.timeout_ms)});
  const ServiceHealth health = remote.health();
  const std::vector<std::string> probe{"What data do we collect?"};
  const auto vectors = remote.embed(probe);
  out << "endpoint: " << g.endpoint << "\nstatus: " << health.status << "\nmodel: " << health.model
      << "\ndim: " << health.dim << "\nprobe dim: " << vectors.front().dim() << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extractive summaries of privacy policies along the 14 GDPR topics", "ppsum"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with option defaults (flags on the command line win)");

  GlobalOptions g;
  app.add_option("--provider", g.provider, "Embedding provider")->check(CLI::IsMember({"hash", "remote"}))
      ->capture_default_str();
  app.add_option("--endpoint", g.endpoint, "Embedding service base URL")->envname("EMBED_ENDPOINT");
  app.add_option("--dim", g.dim, "Hash embedding dimension")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--hash-seed", g.hash_seed, "Hash embedding seed")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--fixture-root", g.fixture_root, "Base directory for relative fixture paths")
      ->envname("FIXTURE_ROOT");
  app.add_flag("--live", g.live, "Allow HTTP fetching of policy URLs");
  app.add_option("--min-tokens", g.min_tokens, "Drop sentences shorter than this")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Documents processed in parallel")->check(CLI::Range(1, 64))
      ->capture_default_str();
  app.add_option("--timeout-ms", g.timeout_ms, "Embedding service timeout")->check(CLI::PositiveNumber)
      ->capture_default_str();

  EmbedOptions embed;
  auto* embed_cmd = app.add_subcommand("embed", "Embed every corpus sentence into a store");
  embed_cmd->add_option("corpus", embed.corpus, "Manifest CSV, HTML file, directory of HTML, or text file")
      ->required();
  embed_cmd->add_option("--store", embed.store, "Embedding store file")->required();

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit k-means centroids on a store and save pseudo-centroids");
  fit_cmd->add_option("--store", fit.store, "Embedding store file")->required();
  fit_cmd->add_option("-k,--k", fit.k, "Number of clusters")->check(CLI::Range(2, 100000))->capture_default_str();
  fit_cmd->add_option("--algorithm", fit.algorithm, "kmeans or minibatch_kmeans")->capture_default_str();
  fit_cmd->add_option("--batch-size", fit.batch_size, "Mini-batch size")->capture_default_str();
  fit_cmd->add_option("--n-comp", fit.n_comp, "Cluster in a PCA space of this many components");
  fit_cmd->add_option("--pca-out", fit.pca_out, "Where to save the PCA model when --n-comp is set");
  fit_cmd->add_option("-o,--out", fit.out, "Centroid file")->required();

  SummarizeOptions sum;
  auto* sum_cmd = app.add_subcommand("summarize", "Summarize one privacy policy");
  sum_cmd->add_option("source", sum.source, "Fixture path or URL")->required();
  sum_cmd->add_option("--mode", sum.mode, "pdc or kmeans")->check(CLI::IsMember({"pdc", "kmeans"}))
      ->capture_default_str();
  sum_cmd->add_option("-n,--n-best", sum.n_best, "Sentences per topic")->check(CLI::PositiveNumber)
      ->capture_default_str();
  sum_cmd->add_option("--centroids", sum.centroids, "Centroid file (required for kmeans)");
  sum_cmd->add_option("--store", sum.store, "Embedding cache");
  sum_cmd->add_option("--n-comp", sum.n_comp, "Compare in PCA space");
  sum_cmd->add_option("--pca", sum.pca, "PCA model file for --n-comp");
  sum_cmd->add_option("-o,--out", sum.out, "Output JSON file (default stdout)");

  EvaluateOptions ev;
  auto* ev_cmd = app.add_subcommand("evaluate", "Score summaries of every manifest document");
  ev_cmd->add_option("manifest", ev.manifest, "Manifest CSV: company,url,fixture_file")->required();
  ev_cmd->add_option("--modes", ev.modes, "Summarizer modes")->delimiter(',')
      ->check(CLI::IsMember({"pdc", "kmeans"}));
  ev_cmd->add_option("--centroids", ev.centroids, "Centroid file for kmeans");
  ev_cmd->add_option("--store", ev.store, "Embedding cache");
  ev_cmd->add_option("-n,--n-best", ev.n_best, "Sentences per topic")->check(CLI::PositiveNumber)
      ->capture_default_str();
  ev_cmd->add_option("--n-comp", ev.n_comp, "Compare in PCA space");
  ev_cmd->add_option("--pca", ev.pca, "PCA model file for --n-comp");
  ev_cmd->add_option("--random-sentences", ev.random_sentences, "Random baseline size")->capture_default_str();
  ev_cmd->add_option("--rouge-w", ev.rouge_w, "ROUGE-W weight")->check(CLI::Range(1.0, 10.0))
      ->capture_default_str();
  ev_cmd->add_option("--std", ev.std_dev, "population or sample standard deviation")->capture_default_str();
  ev_cmd->add_option("--out-dir", ev.out_dir, "Directory for ssd.csv, rouge.csv, plot_data.csv")->required();

  SweepCommandOptions sw;
  auto* sw_cmd = app.add_subcommand("sweep", "Silhouette score per algorithm and PCA size");
  sw_cmd->add_option("--store", sw.store, "Embedding store file")->required();
  sw_cmd->add_option("--algorithms", sw.algorithms, "kmeans, minibatch_kmeans, pdc")->delimiter(',');
  sw_cmd->add_option("--n-comp", sw.n_comp, "PCA sizes")->delimiter(',');
  sw_cmd->add_option("-k,--k", sw.k, "Number of clusters")->check(CLI::Range(2, 100000))->capture_default_str();
  sw_cmd->add_option("--batch-size", sw.batch_size, "Mini-batch size")->capture_default_str();
  sw_cmd->add_option("-o,--out", sw.out, "Output CSV (default stdout)");

  auto* check_cmd = app.add_subcommand("serve-check", "Ping the embedding service");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*embed_cmd) return cmd_embed(g, embed, out);
    if (*fit_cmd) return cmd_fit(g, fit, out);
    if (*sum_cmd) return cmd_summarize(g, sum, out);
    if (*ev_cmd) return cmd_evaluate(g, ev, out);
    if (*sw_cmd) return cmd_sweep(g, sw, out);
    if (*check_cmd) return cmd_serve_check(g, out);
  } catch (const Error& e) {
    err << "ppsum: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "ppsum: io error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace ppsum::cli
