#include "ppsum/error.hpp"

namespace ppsum {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kArgument: return "argument";
    case ErrorKind::kConfiguration: return "configuration";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kFormat: return "format";
    case ErrorKind::kIntegrity: return "integrity";
    case ErrorKind::kTransport: return "transport";
    case ErrorKind::kProtocol: return "protocol";
    case ErrorKind::kHttpStatus: return "http-status";
    case ErrorKind::kPolicy: return "policy";
    case ErrorKind::kEmptyExtraction: return "empty-extraction";
    case ErrorKind::kEmptyDocument: return "empty-document";
    case ErrorKind::kModeMismatch: return "mode-mismatch";
    case ErrorKind::kEmbedding: return "embedding";
    case ErrorKind::kUndefinedScore: return "undefined-score";
    case ErrorKind::kEmptyCluster: return "empty-cluster";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace ppsum
