#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ppsum {

struct Sentence {
  std::size_t id = 0;  // position within the document
  std::string text;
};

struct Document {
  std::string source;
  std::optional<std::string> raw_html;
  std::vector<Sentence> sentences;

  std::vector<std::string> texts() const;
};

inline constexpr std::size_t kDefaultMinTokens = 3;

/// Best-effort visible text of an HTML page: drops comments and
/// script/style/noscript/head content, keeps the body when there is one,
/// decodes character entities and collapses whitespace. Inline elements
/// (a, b, span, ...) join their neighbours directly; other tags separate
/// text with one space.
std::string extract_text(std::string_view html);

/// Same scan as extract_text, but returns the text of each block-level
/// element separately so headings and list items do not run into the
/// following sentence. Joining the blocks with spaces gives extract_text.
std::vector<std::string> extract_blocks(std::string_view html);

/// Maps control characters and non-breaking spaces to spaces, smart quotes to
/// ASCII quotes, dashes to '-', and the ellipsis to "...".
std::string normalize_punctuation(std::string_view text);

/// Splits on '.', '!' and '?' followed by whitespace or end of text.
/// Periods inside numbers never split. "e.g.", "i.e.", "Mr.", "Mrs.", "Ms.",
/// "Dr.", "Prof.", "St.", "vs.", "cf.", "approx." never end a sentence;
/// "No." does not before a digit; "etc.", "Inc.", "Ltd.", "Co." only end one
/// when the next word is capitalised, and the same holds for dotted
/// initialisms such as "U.K.". An ellipsis before a lowercase word does not
/// split. Bullets and URLs are stripped and fragments with fewer than
/// `min_tokens` tokens are dropped.
std::vector<Sentence> split_sentences(std::string_view text, std::size_t min_tokens = kDefaultMinTokens);

/// Number of whitespace-separated words holding at least one letter or digit.
std::size_t count_tokens(std::string_view text);

struct GdprTopic {
  std::string_view header;             // section heading
  std::string_view combined_sentence;  // hand-combined sample sentence for the topic
};

using GdprTopics = std::array<GdprTopic, 14>;

/// The 14 privacy-notice topics with their combined sample sentences.
/// Verified against a pinned checksum; corruption throws kIntegrity.
const GdprTopics& load_gdpr_topics();

/// FNV-1a 64 over "header\tcombined\n" for every topic, in order.
std::uint64_t gdpr_topics_checksum(std::span<const GdprTopic> topics);
inline constexpr std::uint64_t kGdprTopicsChecksum = 0x4dd431c9108eb627ULL;

std::vector<std::string> gdpr_topic_headers();
std::vector<std::string> gdpr_combined_sentences();

/// Generic English sentences with no privacy vocabulary, used by the random
/// baseline summary.
std::span<const std::string_view> generic_sentence_pool();

enum class FetchPolicy { kLive, kFixtureOnly };

struct FetchOptions {
  FetchPolicy policy = FetchPolicy::kFixtureOnly;
  std::optional<std::filesystem::path> fixture_root;  // base for relative paths
  std::size_t min_tokens = kDefaultMinTokens;
  std::chrono::milliseconds timeout{20000};
  int max_redirects = 5;
  std::chrono::milliseconds host_delay{500};  // politeness gap per host under live fetching
};

bool is_url(std::string_view source);

/// Reads a local file (or GETs a URL under the live policy), extracts the
/// text and splits it into sentences. Throws kPolicy for URLs under the
/// fixture-only policy, kTransport / kHttpStatus for network failures and
/// kEmptyExtraction when no sentence survives.
Document fetch_document(const std::string& source, const FetchOptions& options = {});

/// Builds a Document from already-retrieved HTML.
Document document_from_html(std::string source, std::string html, std::size_t min_tokens = kDefaultMinTokens);

struct ManifestEntry {
  std::string company;
  std::string url;
  std::string fixture_file;
};

/// Reads `company,url,fixture_file` (header row required).
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

}  // namespace ppsum
