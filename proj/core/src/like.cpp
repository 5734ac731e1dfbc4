#include "mtwb/like.hpp"

#include "mtwb/unicode.hpp"

namespace mtwb {

std::u32string fold_text(std::string_view text) {
  std::u32string out = unicode::decode(text).value_or(std::u32string());
  for (char32_t& cp : out) cp = unicode::fold(cp);
  return out;
}

LikePattern::LikePattern(std::string_view pattern) : text_(pattern) {
  const std::u32string cps = fold_text(pattern);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    if (cp == U'\\') {
      if (i + 1 < cps.size() && (cps[i + 1] == U'%' || cps[i + 1] == U'_' || cps[i + 1] == U'\\')) {
        atoms_.push_back({Kind::kLiteral, cps[++i]});
      } else {
        atoms_.push_back({Kind::kLiteral, U'\\'});
      }
    } else if (cp == U'%') {
      // Consecutive '%' collapse.
      if (atoms_.empty() || atoms_.back().kind != Kind::kAny) atoms_.push_back({Kind::kAny});
    } else if (cp == U'_') {
      atoms_.push_back({Kind::kOne});
    } else {
      atoms_.push_back({Kind::kLiteral, cp});
    }
  }
}

bool LikePattern::matches(std::string_view value) const { return matches(fold_text(value)); }

// Greedy wildcard matching that only ever backtracks to the most recent
// '%': linear memory, O(n * m) worst case.
bool LikePattern::matches(std::u32string_view value) const {
  std::size_t p = 0;
  std::size_t v = 0;
  std::size_t star_p = std::u32string_view::npos;
  std::size_t star_v = 0;
  while (v < value.size()) {
    if (p < atoms_.size() && atoms_[p].kind == Kind::kAny) {
      star_p = p++;
      star_v = v;
    } else if (p < atoms_.size() &&
               (atoms_[p].kind == Kind::kOne || atoms_[p].cp == value[v])) {
      ++p;
      ++v;
    } else if (star_p != std::u32string_view::npos) {
      p = star_p + 1;
      v = ++star_v;
    } else {
      return false;
    }
  }
  while (p < atoms_.size() && atoms_[p].kind == Kind::kAny) ++p;
  return p == atoms_.size();
}

bool like_match(std::string_view pattern, std::string_view value) {
  return LikePattern(pattern).matches(value);
}

}  // namespace mtwb
