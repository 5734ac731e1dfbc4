#include "mtwb/unicode.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "mtwb/error.hpp"

namespace mtwb::unicode {

std::optional<std::u32string> decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto n = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < n) {
    UChar32 c;
    U8_NEXT(s, i, n, c);
    if (c < 0) return std::nullopt;
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::u32string decode_or_throw(std::string_view utf8, std::string_view what) {
  auto decoded = decode(utf8);
  if (!decoded) {
    throw Error(ErrorCode::kNonTextPayload,
                std::string(what) + " is not valid UTF-8 text");
  }
  return std::move(*decoded);
}

void append(std::string& out, char32_t cp) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (!error) out.append(reinterpret_cast<const char*>(buf), len);
}

std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append(out, cp);
  return out;
}

bool is_valid(std::string_view utf8) { return decode(utf8).has_value(); }

std::size_t length(std::string_view utf8) {
  return decode_or_throw(utf8, "text").size();
}

bool is_whitespace(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

bool is_punctuation(char32_t cp) { return u_ispunct(static_cast<UChar32>(cp)); }

char32_t fold(char32_t cp) {
  return static_cast<char32_t>(u_foldCase(static_cast<UChar32>(cp), U_FOLD_CASE_DEFAULT));
}

std::string_view strip_bom(std::string_view utf8) {
  constexpr std::string_view kBom = "\xEF\xBB\xBF";
  if (utf8.substr(0, kBom.size()) == kBom) utf8.remove_prefix(kBom.size());
  return utf8;
}

}  // namespace mtwb::unicode
