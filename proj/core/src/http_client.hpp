#pragma once

#include <chrono>
#include <string>

namespace ppsum::detail {

struct Url {
  std::string scheme;  // "http" or "https"
  std::string host;
  int port = 0;
  std::string path;  // always starts with '/'

  std::string origin() const;
};

/// Parses `scheme://host[:port][/path]`; throws an argument error otherwise.
Url parse_url(const std::string& url);

struct HttpResponse {
  int status = 0;
  std::string body;
  std::string final_url;
};

/// GET following at most `max_redirects` redirects. Transport failures throw
/// kTransport; the status code is returned as-is.
HttpResponse http_get(const std::string& url, std::chrono::milliseconds timeout, int max_redirects);

HttpResponse http_post_json(const std::string& url, const std::string& body, std::chrono::milliseconds timeout);

}  // namespace ppsum::detail
