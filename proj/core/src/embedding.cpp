#include "ppsum/embedding.hpp"

#include <cmath>
#include <numeric>

#include "ppsum/error.hpp"
#include "ppsum/text.hpp"

namespace ppsum {

namespace {

void check_finite(const std::vector<double>& values) {
  for (double v : values) {
    require(std::isfinite(v), ErrorKind::kArgument, "sentence vector holds a non-finite coordinate");
  }
}

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t feature_hash(std::string_view feature, std::uint64_t seed_key) {
  std::uint64_t h = kFnvOffset ^ seed_key;
  for (unsigned char c : feature) {
    h ^= c;
    h *= kFnvPrime;
  }
  return mix64(h);
}

void add_feature(std::vector<double>& buckets, std::string_view feature, std::uint64_t seed_key) {
  const std::uint64_t h = feature_hash(feature, seed_key);
  const std::size_t bucket = static_cast<std::size_t>(h % buckets.size());
  buckets[bucket] += (h >> 63) != 0 ? -1.0 : 1.0;
}

}  // namespace

SentenceVector::SentenceVector(std::vector<double> values) : values_(std::move(values)) {
  check_finite(values_);
}

SentenceVector::SentenceVector(std::initializer_list<double> values) : values_(values) {
  check_finite(values_);
}

double SentenceVector::norm() const {
  return std::sqrt(std::inner_product(values_.begin(), values_.end(), values_.begin(), 0.0));
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorKind::kArgument,
          "dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

std::string describe(const ProviderDescriptor& descriptor) {
  return descriptor.provider_id + "/" + descriptor.model_id + " (dim " + std::to_string(descriptor.dim) + ")";
}

SentenceVector EmbeddingProvider::embed_one(const std::string& sentence) {
  auto vectors = embed(std::span<const std::string>(&sentence, 1));
  require(vectors.size() == 1, ErrorKind::kProtocol, "provider returned the wrong number of vectors");
  return std::move(vectors.front());
}

SentenceVector hash_embed(std::string_view sentence, std::size_t dim, std::uint64_t seed) {
  require(dim > 0, ErrorKind::kArgument, "hash_embed requires dim > 0");
  std::vector<double> buckets(dim, 0.0);
  const auto tokens = word_tokens(sentence);
  if (tokens.empty()) return SentenceVector(std::move(buckets));

  const std::uint64_t seed_key = mix64(seed);
  std::string bigram;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    add_feature(buckets, tokens[i], seed_key);
    if (i + 1 < tokens.size()) {
      bigram.assign(tokens[i]);
      bigram.push_back(' ');
      bigram.append(tokens[i + 1]);
      add_feature(buckets, bigram, seed_key);
    }
  }

  const double norm = std::sqrt(std::inner_product(buckets.begin(), buckets.end(), buckets.begin(), 0.0));
  // Colliding features can cancel to an all-zero vector; leave it unnormalized.
  if (norm > 0.0) {
    for (double& v : buckets) v /= norm;
  }
  return SentenceVector(std::move(buckets));
}

HashEmbedder::HashEmbedder(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
  require(dim > 0, ErrorKind::kArgument, "hash embedder requires dim > 0");
}

ProviderDescriptor HashEmbedder::descriptor() {
  return {"hash-v1", "fnv1a-uni-bigram-seed" + std::to_string(seed_), dim_};
}

std::vector<SentenceVector> HashEmbedder::embed(std::span<const std::string> sentences) {
  std::vector<SentenceVector> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(hash_embed(s, dim_, seed_));
  return out;
}

}  // namespace ppsum
