#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppsum {

/// Error categories raised by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
  kArgument,          // precondition or argument violation
  kConfiguration,     // incompatible artifacts (store/provider/centroid mismatch)
  kIo,                // local file could not be read or written
  kFormat,            // a persisted artifact is malformed
  kIntegrity,         // bundled asset failed its checksum
  kTransport,         // network transport failure (retryable)
  kProtocol,          // remote peer spoke the wire protocol incorrectly
  kHttpStatus,        // remote document answered with a non-200 status
  kPolicy,            // request forbidden by the fetch policy
  kEmptyExtraction,   // document produced zero sentences
  kEmptyDocument,     // summarizer was handed a document without sentences
  kModeMismatch,      // summary request mode differs from the centroid mode
  kEmbedding,         // embedding provider failed during a pipeline step
  kUndefinedScore,    // silhouette on fewer than two clusters
  kEmptyCluster,      // a cluster has no members where one is required
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

  /// Transport failures may succeed on retry; everything else is deterministic.
  bool retryable() const noexcept { return kind_ == ErrorKind::kTransport; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace ppsum
