#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mtwb {

// SQL LIKE over whole values: '%' matches any run of characters (including
// none), '_' exactly one character, everything else itself. Matching is
// case-insensitive under simple case folding. A backslash makes the next
// '%', '_' or '\' literal; before anything else (or at the end) it is a
// literal backslash.
class LikePattern {
 public:
  explicit LikePattern(std::string_view pattern);

  bool matches(std::string_view value) const;
  bool matches(std::u32string_view folded_value) const;

  const std::string& text() const { return text_; }

 private:
  enum class Kind { kLiteral, kOne, kAny };
  struct Atom {
    Kind kind;
    char32_t cp = 0;
  };

  std::string text_;
  std::vector<Atom> atoms_;
};

bool like_match(std::string_view pattern, std::string_view value);

// Case-folds a whole string for repeated matching.
std::u32string fold_text(std::string_view text);

}  // namespace mtwb
