#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ppsum/embedding.hpp"

namespace ppsum {

/// Persistent sentence -> vector cache bound to one embedding space.
///
/// On disk the store is line-delimited JSON: a header record
/// `{"provider_id":..,"model_id":..,"dim":N}` followed by one
/// `{"text":..,"vector":[..]}` record per sentence, appended as new sentences
/// are embedded. A truncated final line left by an interrupted write is
/// dropped when the store is reopened.
///
/// Readers may share a store; writes need a single writer.
class EmbeddingStore {
 public:
  struct Entry {
    std::string text;
    SentenceVector vector;
  };

  /// Memory-only store.
  explicit EmbeddingStore(ProviderDescriptor descriptor);

  /// Opens `path`, creating it with `expected` as header when missing. An
  /// existing file whose header differs from `expected` is a configuration error.
  static EmbeddingStore open(const std::filesystem::path& path, const ProviderDescriptor& expected);

  /// Loads an existing store file, taking the descriptor from its header.
  static EmbeddingStore load(const std::filesystem::path& path);

  const ProviderDescriptor& descriptor() const noexcept { return descriptor_; }
  const std::optional<std::filesystem::path>& path() const noexcept { return path_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const Entry> entries() const noexcept { return entries_; }

  /// Exact-string lookup.
  const SentenceVector* find(const std::string& text) const;

  /// Adds new entries and appends them to the backing file. Texts already
  /// present are skipped. Returns the number of entries added.
  std::size_t insert(std::span<const Entry> entries);

 private:
  bool add_in_memory(std::string text, SentenceVector vector);

  ProviderDescriptor descriptor_;
  std::optional<std::filesystem::path> path_;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Cache-through embedding: hits come from the store, misses go to the
/// provider once per distinct text and are appended to the store.
std::vector<SentenceVector> store_get_or_embed(EmbeddingStore& store, std::span<const std::string> sentences,
                                               EmbeddingProvider& provider);

/// Provider adaptor that routes every request through a store.
class CachedEmbedder final : public EmbeddingProvider {
 public:
  CachedEmbedder(EmbeddingStore& store, EmbeddingProvider& provider) : store_(store), provider_(provider) {}

  ProviderDescriptor descriptor() override { return store_.descriptor(); }
  std::vector<SentenceVector> embed(std::span<const std::string> sentences) override {
    return store_get_or_embed(store_, sentences, provider_);
  }

 private:
  EmbeddingStore& store_;
  EmbeddingProvider& provider_;
};

}  // namespace ppsum
