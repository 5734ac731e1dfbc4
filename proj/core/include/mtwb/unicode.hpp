#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace mtwb::unicode {

// Decodes UTF-8 into code points. Returns nullopt on malformed input.
std::optional<std::u32string> decode(std::string_view utf8);

// Like decode() but throws Error(kNonTextPayload).
std::u32string decode_or_throw(std::string_view utf8, std::string_view what);

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

bool is_valid(std::string_view utf8);

// Number of Unicode scalar values. Malformed input throws kNonTextPayload.
std::size_t length(std::string_view utf8);

bool is_whitespace(char32_t cp);
// General category P*.
bool is_punctuation(char32_t cp);
// Simple (1:1) case folding.
char32_t fold(char32_t cp);

// Strips a leading U+FEFF byte order mark.
std::string_view strip_bom(std::string_view utf8);

}  // namespace mtwb::unicode
