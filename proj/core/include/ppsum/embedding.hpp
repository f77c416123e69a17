#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ppsum {

/// Fixed-dimension embedding of one sentence. All coordinates are finite.
class SentenceVector {
 public:
  SentenceVector() = default;
  explicit SentenceVector(std::size_t dim) : values_(dim, 0.0) {}
  explicit SentenceVector(std::vector<double> values);
  SentenceVector(std::initializer_list<double> values);

  std::size_t dim() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> view() const noexcept { return values_; }
  std::span<double> view() noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  double norm() const;

  friend bool operator==(const SentenceVector&, const SentenceVector&) = default;

 private:
  std::vector<double> values_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double euclidean_distance(std::span<const double> a, std::span<const double> b);
inline double squared_distance(const SentenceVector& a, const SentenceVector& b) {
  return squared_distance(a.view(), b.view());
}
inline double euclidean_distance(const SentenceVector& a, const SentenceVector& b) {
  return euclidean_distance(a.view(), b.view());
}

/// Identifies an embedding space. Vectors from different descriptors must not mix.
struct ProviderDescriptor {
  std::string provider_id;
  std::string model_id;
  std::size_t dim = 0;

  friend bool operator==(const ProviderDescriptor&, const ProviderDescriptor&) = default;
};

std::string describe(const ProviderDescriptor& descriptor);

/// Contract shared by every sentence encoder.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual ProviderDescriptor descriptor() = 0;

  /// One vector per input sentence, in input order.
  virtual std::vector<SentenceVector> embed(std::span<const std::string> sentences) = 0;

  SentenceVector embed_one(const std::string& sentence);
};

/// Feature-hashing embedding over lowercase word unigrams and bigrams. Each
/// feature lands in one of `dim` buckets with a hash-derived +-1 sign, and the
/// result is L2-normalized. A sentence without tokens maps to the zero vector.
SentenceVector hash_embed(std::string_view sentence, std::size_t dim, std::uint64_t seed);

class HashEmbedder final : public EmbeddingProvider {
 public:
  HashEmbedder(std::size_t dim, std::uint64_t seed);

  ProviderDescriptor descriptor() override;
  std::vector<SentenceVector> embed(std::span<const std::string> sentences) override;

  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

}  // namespace ppsum
