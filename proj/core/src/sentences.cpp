#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ppsum/corpus.hpp"
#include "ppsum/text.hpp"

namespace ppsum {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_letter(char c) { return (c >= 'a' && c <= 'z') || is_upper(c); }
bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

constexpr std::array<std::string_view, 14> kAlwaysGuarded{"e.g", "i.e", "mr",  "mrs", "ms", "dr", "prof",
                                                         "st",  "vs",  "cf",  "approx", "viz", "jr", "sr"};
constexpr std::array<std::string_view, 6> kGuardedUnlessCapital{"etc", "inc", "ltd", "co", "corp", "llc"};

struct Replacement {
  std::string_view from;
  std::string_view to;
};

// UTF-8 sequences rewritten before segmentation.
constexpr std::array<Replacement, 19> kReplacements{{
    {"\xC2\xA0", " "},         // no-break space
    {"\xE2\x80\x98", "'"},     // left single quote
    {"\xE2\x80\x99", "'"},     // right single quote
    {"\xE2\x80\x9C", "\""},    // left double quote
    {"\xE2\x80\x9D", "\""},    // right double quote
    {"\xE2\x80\x93", "-"},     // en dash
    {"\xE2\x80\x94", "-"},     // em dash
    {"\xE2\x80\xA6", "..."},   // ellipsis
    {"\xE2\x80\xA2", " "},     // bullet
    {"\xE2\x80\xA3", " "},     // triangular bullet
    {"\xE2\x81\x83", " "},     // hyphen bullet
    {"\xE2\x97\xA6", " "},     // white bullet
    {"\xE2\x97\x8F", " "},     // black circle
    {"\xE2\x96\xAA", " "},     // small black square
    {"\xC2\xB7", " "},         // middle dot
    {"\xE2\x80\x8B", ""},      // zero-width space
    {"\xE2\x80\x8C", ""},      // zero-width non-joiner
    {"\xE2\x80\x8D", ""},      // zero-width joiner
    {"\xEF\xBB\xBF", ""},      // byte-order mark
}};

bool is_url_token(std::string_view token) {
  return token.starts_with("http://") || token.starts_with("https://") || token.starts_with("www.") ||
         token.starts_with("(http://") || token.starts_with("(https://");
}

// Replaces URL tokens by their trailing terminators, keeping sentence ends intact.
std::string strip_urls(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      out.push_back(text[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    const std::string_view token = text.substr(i, j - i);
    if (is_url_token(token)) {
      std::size_t tail = token.size();
      while (tail > 0 && (is_terminator(token[tail - 1]) || is_closer(token[tail - 1]) || token[tail - 1] == ',')) {
        --tail;
      }
      bool kept_terminator = false;
      for (std::size_t k = tail; k < token.size(); ++k) {
        if (!is_terminator(token[k])) continue;
        if (!kept_terminator) {
          while (!out.empty() && is_space(out.back())) out.pop_back();
          kept_terminator = true;
        }
        out.push_back(token[k]);
      }
    } else {
      out.append(token);
    }
    i = j;
  }
  return out;
}

// Letters and inner periods immediately before position `dot`.
std::string word_before(std::string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && (is_letter(text[begin - 1]) || (text[begin - 1] == '.' && begin - 1 > 0 &&
                                                      is_letter(text[begin - 2])))) {
    --begin;
  }
  return std::string(text.substr(begin, dot - begin));
}

char next_visible(std::string_view text, std::size_t from) {
  while (from < text.size() && is_space(text[from])) ++from;
  return from < text.size() ? text[from] : '\0';
}

bool period_is_guarded(std::string_view text, std::size_t dot, std::size_t after) {
  const std::string word = word_before(text, dot);
  if (word.empty()) return false;
  const std::string key = ascii_lower(word);
  if (std::find(kAlwaysGuarded.begin(), kAlwaysGuarded.end(), key) != kAlwaysGuarded.end()) return true;
  const char next = next_visible(text, after);
  if (key == "no") return is_digit(next);
  // Dotted initialisms such as "U.K." end a sentence only before a capital.
  if (key.find('.') != std::string::npos) return next != '\0' && !is_upper(next);
  if (std::find(kGuardedUnlessCapital.begin(), kGuardedUnlessCapital.end(), key) != kGuardedUnlessCapital.end()) {
    return next != '\0' && !is_upper(next);
  }
  return false;
}

// Drops leading list markers such as "-", "*", ">" and "1)".
std::string strip_leading_marker(std::string text) {
  std::size_t i = 0;
  for (;;) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i < text.size() && (text[i] == '-' || text[i] == '*' || text[i] == '>' || text[i] == '+') &&
        (i + 1 == text.size() || is_space(text[i + 1]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_digit(text[j])) ++j;
    if (j > i && j < text.size() && text[j] == ')' && (j + 1 == text.size() || is_space(text[j + 1]))) {
      i = j + 1;
      continue;
    }
    break;
  }
  return text.substr(i);
}

}  // namespace

std::string normalize_punctuation(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < 0x20 || c == 0x7F) {
      out.push_back(' ');
      ++i;
      continue;
    }
    // C1 control characters.
    if (c == 0xC2 && i + 1 < text.size() && static_cast<unsigned char>(text[i + 1]) >= 0x80 &&
        static_cast<unsigned char>(text[i + 1]) <= 0x9F) {
      out.push_back(' ');
      i += 2;
      continue;
    }
    bool replaced = false;
    if (c >= 0xC2) {
      for (const auto& r : kReplacements) {
        if (text.compare(i, r.from.size(), r.from) == 0) {
          out.append(r.to);
          i += r.from.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(text[i++]);
  }
  return out;
}

std::size_t count_tokens(std::string_view text) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    bool has_word = false;
    while (i < text.size() && !is_space(text[i])) {
      has_word = has_word || is_word_byte(static_cast<unsigned char>(text[i]));
      ++i;
    }
    if (has_word) ++count;
  }
  return count;
}

std::vector<Sentence> split_sentences(std::string_view raw, std::size_t min_tokens) {
  const std::string text = collapse_whitespace(strip_urls(normalize_punctuation(raw)));

  std::vector<std::string> pieces;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!is_terminator(text[i])) continue;
    std::size_t j = i + 1;
    while (j < text.size() && is_terminator(text[j])) ++j;
    const std::size_t run_end = j;
    while (j < text.size() && is_closer(text[j])) ++j;
    if (j < text.size() && !is_space(text[j])) continue;
    if (text[i] == '.' && j == i + 1 && period_is_guarded(text, i, j)) continue;
    // An ellipsis trailing into a lowercase word continues the sentence.
    const bool ellipsis = run_end - i >= 2 && std::all_of(text.begin() + static_cast<std::ptrdiff_t>(i),
                                                          text.begin() + static_cast<std::ptrdiff_t>(run_end),
                                                          [](char c) { return c == '.'; });
    if (ellipsis && j == run_end) {
      const char next = next_visible(text, j);
      if (next >= 'a' && next <= 'z') {
        i = run_end - 1;
        continue;
      }
    }
    pieces.emplace_back(text.substr(start, j - start));
    start = j;
    i = j - 1;
  }
  if (start < text.size()) pieces.emplace_back(text.substr(start));

  std::vector<Sentence> out;
  for (auto& piece : pieces) {
    std::string cleaned = trim(strip_leading_marker(std::move(piece)));
    if (cleaned.empty() || count_tokens(cleaned) < min_tokens) continue;
    out.push_back({out.size(), std::move(cleaned)});
  }
  return out;
}

std::vector<std::string> Document::texts() const {
  std::vector<std::string> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(s.text);
  return out;
}

}  // namespace ppsum
