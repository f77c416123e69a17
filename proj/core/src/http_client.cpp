#include "http_client.hpp"

#include <httplib.h>

#include <charconv>

#include "ppsum/error.hpp"

namespace ppsum::detail {

namespace {

std::unique_ptr<httplib::Client> make_client(const Url& url, std::chrono::milliseconds timeout) {
  auto client = std::make_unique<httplib::Client>(url.origin());
  client->set_connection_timeout(timeout);
  client->set_read_timeout(timeout);
  client->set_write_timeout(timeout);
  client->set_follow_location(false);
  return client;
}

std::string resolve_location(const Url& base, const std::string& location) {
  if (location.find("://") != std::string::npos) return location;
  if (!location.empty() && location.front() == '/') return base.origin() + location;
  const auto slash = base.path.rfind('/');
  return base.origin() + base.path.substr(0, slash + 1) + location;
}

}  // namespace

std::string Url::origin() const { return scheme + "://" + host + ":" + std::to_string(port); }

Url parse_url(const std::string& url) {
  Url out;
  const auto scheme_end = url.find("://");
  require(scheme_end != std::string::npos, ErrorKind::kArgument, "not a URL: " + url);
  out.scheme = url.substr(0, scheme_end);
  require(out.scheme == "http" || out.scheme == "https", ErrorKind::kArgument, "unsupported URL scheme: " + url);

  const std::string rest = url.substr(scheme_end + 3);
  const auto path_start = rest.find_first_of("/?#");
  std::string authority = rest.substr(0, path_start);
  out.path = path_start == std::string::npos ? "/" : rest.substr(path_start);
  if (out.path.front() != '/') out.path.insert(out.path.begin(), '/');
  if (const auto at = authority.rfind('@'); at != std::string::npos) authority = authority.substr(at + 1);

  out.port = out.scheme == "https" ? 443 : 80;
  const auto colon = authority.rfind(':');
  if (colon != std::string::npos && authority.find(']') == std::string::npos) {
    const std::string port_text = authority.substr(colon + 1);
    int port = 0;
    const auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    require(ec == std::errc() && ptr == port_text.data() + port_text.size() && port > 0 && port < 65536,
            ErrorKind::kArgument, "bad port in URL: " + url);
    out.port = port;
    authority = authority.substr(0, colon);
  }
  require(!authority.empty(), ErrorKind::kArgument, "URL has no host: " + url);
  out.host = authority;
  return out;
}

HttpResponse http_get(const std::string& url, std::chrono::milliseconds timeout, int max_redirects) {
  std::string current = url;
  for (int hop = 0;; ++hop) {
    const Url parsed = parse_url(current);
    auto client = make_client(parsed, timeout);
    auto result = client->Get(parsed.path);
    if (!result) {
      fail(ErrorKind::kTransport, "GET " + current + " failed: " + httplib::to_string(result.error()));
    }
    const int status = result->status;
    if (status >= 300 && status < 400 && result->has_header("Location")) {
      require(hop < max_redirects, ErrorKind::kTransport,
              "GET " + url + " exceeded " + std::to_string(max_redirects) + " redirects");
      current = resolve_location(parsed, result->get_header_value("Location"));
      continue;
    }
    return {status, result->body, current};
  }
}

HttpResponse http_post_json(const std::string& url, const std::string& body, std::chrono::milliseconds timeout) {
  const Url parsed = parse_url(url);
  auto client = make_client(parsed, timeout);
  auto result = client->Post(parsed.path, body, "application/json");
  if (!result) {
    fail(ErrorKind::kTransport, "POST " + url + " failed: " + httplib::to_string(result.error()));
  }
  return {result->status, result->body, url};
}

}  // namespace ppsum::detail
