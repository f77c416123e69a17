#include "ppsum/remote_embedder.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "http_client.hpp"
#include "ppsum/error.hpp"

namespace ppsum {

using nlohmann::json;

namespace {

std::string join_path(std::string base, const std::string& suffix) {
  while (!base.empty() && base.back() == '/') base.pop_back();
  return base + suffix;
}

json parse_body(const std::string& body, const std::string& url) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    fail(ErrorKind::kProtocol, "malformed JSON from " + url + ": " + e.what());
  }
}

}  // namespace

RemoteEmbedder::RemoteEmbedder(RemoteEmbedderOptions options) : options_(std::move(options)) {
  detail::parse_url(options_.endpoint);
  require(options_.max_batch > 0, ErrorKind::kArgument, "max_batch must be positive");
}

void RemoteEmbedder::pin(const std::string& model, std::size_t dim, const char* source) {
  require(dim > 0, ErrorKind::kProtocol, std::string(source) + " from " + options_.endpoint + " advertised dim 0");
  if (!pinned_) {
    pinned_ = ProviderDescriptor{"remote", model, dim};
    return;
  }
  require(pinned_->model_id == model && pinned_->dim == dim, ErrorKind::kProtocol,
          std::string(source) + " from " + options_.endpoint + " reports " + model + "/" + std::to_string(dim) +
              " but the session started with " + describe(*pinned_));
}

ServiceHealth RemoteEmbedder::health() {
  const std::string url = join_path(options_.endpoint, "/health");
  const auto response = detail::http_get(url, options_.timeout, 0);
  if (response.status == 503) fail(ErrorKind::kTransport, url + " is not ready (503)");
  require(response.status == 200, ErrorKind::kProtocol,
          url + " answered status " + std::to_string(response.status));
  const json j = parse_body(response.body, url);
  try {
    return {j.at("status").get<std::string>(), j.at("model").get<std::string>(), j.at("dim").get<std::size_t>()};
  } catch (const json::exception& e) {
    fail(ErrorKind::kProtocol, "unexpected health payload from " + url + ": " + e.what());
  }
}

ProviderDescriptor RemoteEmbedder::descriptor() {
  if (!pinned_) {
    const ServiceHealth h = health();
    pin(h.model, h.dim, "health");
  }
  return *pinned_;
}

std::vector<SentenceVector> RemoteEmbedder::embed_batch(std::span<const std::string> batch) {
  const std::string url = join_path(options_.endpoint, "/embed");
  const json request{{"sentences", std::vector<std::string>(batch.begin(), batch.end())}};
  const auto response = detail::http_post_json(url, request.dump(), options_.timeout);
  require(response.status == 200, ErrorKind::kProtocol,
          url + " answered status " + std::to_string(response.status) + ": " + response.body.substr(0, 200));

  const json j = parse_body(response.body, url);
  std::string model;
  std::size_t dim = 0;
  std::vector<std::vector<double>> raw;
  try {
    model = j.at("model").get<std::string>();
    dim = j.at("dim").get<std::size_t>();
    raw = j.at("vectors").get<std::vector<std::vector<double>>>();
  } catch (const json::exception& e) {
    fail(ErrorKind::kProtocol, "unexpected embed payload from " + url + ": " + e.what());
  }
  pin(model, dim, "embed response");
  require(raw.size() == batch.size(), ErrorKind::kProtocol,
          url + " returned " + std::to_string(raw.size()) + " vectors for " + std::to_string(batch.size()) +
              " sentences");

  std::vector<SentenceVector> out;
  out.reserve(raw.size());
  for (auto& values : raw) {
    require(values.size() == dim, ErrorKind::kProtocol,
            url + " returned a vector of dim " + std::to_string(values.size()) + " while advertising " +
                std::to_string(dim));
    try {
      out.emplace_back(std::move(values));
    } catch (const Error&) {
      fail(ErrorKind::kProtocol, url + " returned a non-finite coordinate");
    }
  }
  return out;
}

std::vector<SentenceVector> RemoteEmbedder::embed(std::span<const std::string> sentences) {
  require(!sentences.empty(), ErrorKind::kArgument, "remote embedding needs at least one sentence");
  std::vector<SentenceVector> out;
  out.reserve(sentences.size());
  for (std::size_t start = 0; start < sentences.size(); start += options_.max_batch) {
    const std::size_t count = std::min(options_.max_batch, sentences.size() - start);
    auto part = embed_batch(sentences.subspan(start, count));
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<SentenceVector> remote_embed(std::span<const std::string> sentences, const std::string& endpoint,
                                         std::chrono::milliseconds timeout) {
  RemoteEmbedder embedder({endpoint, timeout});
  return embedder.embed(sentences);
}

}  // namespace ppsum
