#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ppsum/corpus.hpp"
#include "ppsum/text.hpp"

namespace ppsum {

namespace {

constexpr std::array<std::string_view, 28> kInlineTags{
    "a",    "abbr", "b",    "bdi", "bdo",    "cite",  "code", "data",  "dfn", "em",
    "font", "i",    "kbd",  "label", "mark", "q",     "s",    "samp",  "small", "span",
    "strong", "sub", "sup", "time", "tt",    "u",     "var",  "wbr"};

constexpr std::array<std::string_view, 6> kSkipContentTags{"script", "style", "noscript", "template", "title", "head"};
// Unclosed, these swallow the rest of the document.
constexpr std::array<std::string_view, 4> kRawTextTags{"script", "style", "noscript", "template"};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool contains(std::span<const std::string_view> set, std::string_view name) {
  return std::find(set.begin(), set.end(), name) != set.end();
}

// Case-insensitive search for "</name" at or after `from`.
std::size_t find_closing(std::string_view html, std::string_view name, std::size_t from) {
  for (std::size_t i = html.find("</", from); i != std::string_view::npos; i = html.find("</", i + 2)) {
    if (i + 2 + name.size() > html.size()) return std::string_view::npos;
    bool match = true;
    for (std::size_t k = 0; k < name.size(); ++k) {
      if (lower(html[i + 2 + k]) != name[k]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    const std::size_t after = i + 2 + name.size();
    if (after == html.size() || !is_alpha(html[after])) return i;
  }
  return std::string_view::npos;
}

// End of a tag starting at `open` ('<'), honouring quoted attribute values.
std::size_t find_tag_end(std::string_view html, std::size_t open) {
  char quote = 0;
  for (std::size_t i = open + 1; i < html.size(); ++i) {
    const char c = html[i];
    if (quote != 0) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      return i;
    }
  }
  return std::string_view::npos;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

struct NamedEntity {
  std::string_view name;
  std::uint32_t codepoint;
};

constexpr std::array<NamedEntity, 26> kNamedEntities{{
    {"amp", '&'},     {"lt", '<'},       {"gt", '>'},       {"quot", '"'},     {"apos", '\''},
    {"nbsp", ' '},    {"copy", 0xA9},    {"reg", 0xAE},     {"trade", 0x2122}, {"hellip", 0x2026},
    {"mdash", 0x2014}, {"ndash", 0x2013}, {"lsquo", 0x2018}, {"rsquo", 0x2019}, {"ldquo", 0x201C},
    {"rdquo", 0x201D}, {"bull", 0x2022}, {"middot", 0xB7},  {"laquo", 0xAB},   {"raquo", 0xBB},
    {"euro", 0x20AC}, {"pound", 0xA3},   {"sect", 0xA7},    {"deg", 0xB0},     {"shy", 0xAD},
    {"zwnj", 0x200C},
}};

// Latin-1 letters U+00C0..U+00FF in code point order.
constexpr std::array<std::string_view, 64> kLatin1Entities{
    "Agrave", "Aacute", "Acirc", "Atilde", "Auml", "Aring", "AElig", "Ccedil",
    "Egrave", "Eacute", "Ecirc", "Euml", "Igrave", "Iacute", "Icirc", "Iuml",
    "ETH", "Ntilde", "Ograve", "Oacute", "Ocirc", "Otilde", "Ouml", "times",
    "Oslash", "Ugrave", "Uacute", "Ucirc", "Uuml", "Yacute", "THORN", "szlig",
    "agrave", "aacute", "acirc", "atilde", "auml", "aring", "aelig", "ccedil",
    "egrave", "eacute", "ecirc", "euml", "igrave", "iacute", "icirc", "iuml",
    "eth", "ntilde", "ograve", "oacute", "ocirc", "otilde", "ouml", "divide",
    "oslash", "ugrave", "uacute", "ucirc", "uuml", "yacute", "thorn", "yuml",
};

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '&') {
      out.push_back(text[i]);
      continue;
    }
    const std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back('&');
      continue;
    }
    const std::string_view body = text.substr(i + 1, semi - i - 1);
    bool decoded = false;
    if (body.size() >= 2 && body[0] == '#') {
      const bool hex = body[1] == 'x' || body[1] == 'X';
      const std::string_view digits = body.substr(hex ? 2 : 1);
      std::uint32_t cp = 0;
      bool ok = !digits.empty();
      for (char c : digits) {
        std::uint32_t v;
        if (c >= '0' && c <= '9') v = static_cast<std::uint32_t>(c - '0');
        else if (hex && lower(c) >= 'a' && lower(c) <= 'f') v = static_cast<std::uint32_t>(lower(c) - 'a' + 10);
        else { ok = false; break; }
        cp = cp * (hex ? 16 : 10) + v;
        if (cp > 0x10FFFF) cp = 0x110000;
      }
      if (ok) {
        if (cp == 0xA0) cp = ' ';
        append_utf8(out, cp);
        decoded = true;
      }
    } else {
      for (const auto& entity : kNamedEntities) {
        if (entity.name == body) {
          if (entity.codepoint != 0xAD && entity.codepoint != 0x200C) append_utf8(out, entity.codepoint);
          decoded = true;
          break;
        }
      }
      for (std::size_t k = 0; !decoded && k < kLatin1Entities.size(); ++k) {
        if (kLatin1Entities[k] == body) {
          append_utf8(out, static_cast<std::uint32_t>(0xC0 + k));
          decoded = true;
        }
      }
    }
    if (decoded) {
      i = semi;
    } else {
      out.push_back('&');
    }
  }
  return out;
}

class BlockScanner {
 public:
  explicit BlockScanner(std::string_view html) : html_(html) {}

  std::vector<std::string> run() {
    std::size_t i = 0;
    while (i < html_.size()) {
      if (html_.compare(i, 4, "<!--") == 0) {
        const std::size_t end = html_.find("-->", i + 4);
        i = end == std::string_view::npos ? html_.size() : end + 3;
        continue;
      }
      if (html_[i] == '<' && i + 1 < html_.size() &&
          (is_alpha(html_[i + 1]) || html_[i + 1] == '/' || html_[i + 1] == '!' || html_[i + 1] == '?')) {
        const std::size_t end = find_tag_end(html_, i);
        if (end == std::string_view::npos) {
          // Unterminated tag: treat the rest as markup.
          break;
        }
        i = handle_tag(i, end);
        continue;
      }
      if (!after_body_) current_.push_back(html_[i]);
      ++i;
    }
    flush();
    return std::move(blocks_);
  }

 private:
  std::size_t handle_tag(std::size_t open, std::size_t end) {
    std::size_t p = open + 1;
    const bool closing = html_[p] == '/';
    if (closing) ++p;
    std::string name;
    while (p < end && (is_alpha(html_[p]) || (html_[p] >= '0' && html_[p] <= '9'))) name.push_back(lower(html_[p++]));
    const bool self_closing = end > open && html_[end - 1] == '/';

    if (!closing && !self_closing && contains(kSkipContentTags, name)) {
      const std::size_t close = find_closing(html_, name, end + 1);
      if (close != std::string_view::npos) {
        const std::size_t close_end = find_tag_end(html_, close);
        flush();
        return close_end == std::string_view::npos ? html_.size() : close_end + 1;
      }
      if (contains(kRawTextTags, name)) {
        flush();
        return html_.size();
      }
      return end + 1;
    }
    if (name == "body") {
      if (!closing) {
        // Anything before <body> is outside the page content.
        flush();
        blocks_.clear();
      } else {
        flush();
        after_body_ = true;
      }
      return end + 1;
    }
    if (name.empty() || !contains(kInlineTags, name)) flush();
    return end + 1;
  }

  void flush() {
    if (current_.empty()) return;
    std::string text = collapse_whitespace(decode_entities(current_));
    current_.clear();
    if (!text.empty()) blocks_.push_back(std::move(text));
  }

  std::string_view html_;
  std::string current_;
  std::vector<std::string> blocks_;
  bool after_body_ = false;
};

}  // namespace

std::vector<std::string> extract_blocks(std::string_view html) { return BlockScanner(html).run(); }

std::string extract_text(std::string_view html) {
  std::string out;
  for (const auto& block : extract_blocks(html)) {
    if (!out.empty()) out.push_back(' ');
    out += block;
  }
  return collapse_whitespace(out);
}

}  // namespace ppsum
