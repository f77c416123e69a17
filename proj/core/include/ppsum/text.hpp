#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ppsum {

/// Lowercases ASCII letters and splits on every run of non-alphanumeric bytes.
/// Bytes >= 0x80 count as word characters so UTF-8 words stay whole.
std::vector<std::string> word_tokens(std::string_view text, bool lowercase = true);

bool is_word_byte(unsigned char c) noexcept;

std::string ascii_lower(std::string_view text);

std::string trim(std::string_view text);

/// Replaces every whitespace run with one space and trims the ends.
std::string collapse_whitespace(std::string_view text);

}  // namespace ppsum
