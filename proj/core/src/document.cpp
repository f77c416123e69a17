#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "http_client.hpp"
#include "ppsum/corpus.hpp"
#include "ppsum/error.hpp"
#include "ppsum/text.hpp"

namespace ppsum {

namespace {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Enforces a minimum gap between requests to the same host.
void wait_for_host(const std::string& host, std::chrono::milliseconds gap) {
  static std::mutex mutex;
  static std::map<std::string, std::chrono::steady_clock::time_point> next_allowed;
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mutex);
    const auto now = std::chrono::steady_clock::now();
    auto& next = next_allowed[host];
    slot = std::max(now, next);
    next = slot + gap;
  }
  std::this_thread::sleep_until(slot);
}

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back().push_back(c);
    }
  }
  return fields;
}

}  // namespace

bool is_url(std::string_view source) {
  return source.starts_with("http://") || source.starts_with("https://");
}

Document document_from_html(std::string source, std::string html, std::size_t min_tokens) {
  Document doc;
  doc.source = std::move(source);
  for (const auto& block : extract_blocks(html)) {
    for (auto& sentence : split_sentences(block, min_tokens)) {
      sentence.id = doc.sentences.size();
      doc.sentences.push_back(std::move(sentence));
    }
  }
  require(!doc.sentences.empty(), ErrorKind::kEmptyExtraction, "no sentences extracted from " + doc.source);
  doc.raw_html = std::move(html);
  return doc;
}

Document fetch_document(const std::string& source, const FetchOptions& options) {
  if (is_url(source)) {
    require(options.policy == FetchPolicy::kLive, ErrorKind::kPolicy,
            "fixture-only policy refuses to fetch " + source);
    const auto url = detail::parse_url(source);
    wait_for_host(url.host, options.host_delay);
    const auto response = detail::http_get(source, options.timeout, options.max_redirects);
    require(response.status == 200, ErrorKind::kHttpStatus,
            "GET " + source + " answered status " + std::to_string(response.status));
    return document_from_html(source, response.body, options.min_tokens);
  }

  std::filesystem::path path(source);
  if (!std::filesystem::exists(path) && options.fixture_root && path.is_relative()) {
    path = *options.fixture_root / path;
  }
  require(std::filesystem::is_regular_file(path), ErrorKind::kIo, "no such document: " + source);
  return document_from_html(source, read_text_file(path), options.min_tokens);
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorKind::kFormat, path.string() + " is empty");
  const auto header = parse_csv_line(line);
  require(header.size() == 3 && trim(header[0]) == "company" && trim(header[1]) == "url" &&
              trim(header[2]) == "fixture_file",
          ErrorKind::kFormat, path.string() + ": expected header company,url,fixture_file");

  std::vector<ManifestEntry> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = parse_csv_line(line);
    require(fields.size() == 3, ErrorKind::kFormat,
            path.string() + ":" + std::to_string(line_no) + ": expected 3 fields");
    out.push_back({trim(fields[0]), trim(fields[1]), trim(fields[2])});
  }
  return out;
}

}  // namespace ppsum
