#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppsum/embedding.hpp"

namespace ppsum {

struct RemoteEmbedderOptions {
  std::string endpoint;  // base URL, e.g. http://127.0.0.1:8000
  std::chrono::milliseconds timeout{30000};
  std::size_t max_batch = 64;  // requests larger than this are chunked
};

struct ServiceHealth {
  std::string status;
  std::string model;
  std::size_t dim = 0;
};

/// Client for the embedding sidecar.
///
///   POST {endpoint}/embed   {"sentences": [..]}
///     -> 200 {"model": str, "dim": int, "vectors": [[..], ..]}
///   GET  {endpoint}/health
///     -> 200 {"status": "ok", "model": str, "dim": int}
///
/// The model and dim reported by the first response are pinned for the
/// session; a later response that disagrees is a protocol error. Transport
/// failures are retryable errors that name the endpoint.
class RemoteEmbedder final : public EmbeddingProvider {
 public:
  explicit RemoteEmbedder(RemoteEmbedderOptions options);

  /// Probes /health on first use when no /embed call has pinned the model yet.
  ProviderDescriptor descriptor() override;
  std::vector<SentenceVector> embed(std::span<const std::string> sentences) override;

  ServiceHealth health();

  const RemoteEmbedderOptions& options() const noexcept { return options_; }

 private:
  std::vector<SentenceVector> embed_batch(std::span<const std::string> batch);
  void pin(const std::string& model, std::size_t dim, const char* source);

  RemoteEmbedderOptions options_;
  std::optional<ProviderDescriptor> pinned_;
};

/// One-shot form of RemoteEmbedder::embed.
std::vector<SentenceVector> remote_embed(std::span<const std::string> sentences, const std::string& endpoint,
                                         std::chrono::milliseconds timeout);

}  // namespace ppsum
