#include "table.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "mtwb/unicode.hpp"

namespace mtwb::cli {

void Table::print(std::ostream& out) const {
  std::vector<std::size_t> widths(header_.size(), 0);
  auto measure = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) {
      widths[i] = std::max(widths[i], unicode::length(row[i]));
    }
  };
  measure(header_);
  for (const auto& row : rows_) measure(row);

  auto line = [&](const std::vector<std::string>& row) {
    std::string text;
    for (std::size_t i = 0; i < widths.size(); ++i) {
      const std::string cell = i < row.size() ? row[i] : "";
      text += cell;
      if (i + 1 < widths.size()) text += std::string(widths[i] - unicode::length(cell) + 2, ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  };
  line(header_);
  std::vector<std::string> rule;
  for (std::size_t w : widths) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& row : rows_) line(row);
}

std::string clip(const std::string& text, std::size_t width) {
  const auto decoded = unicode::decode(text);
  if (!decoded || decoded->size() <= width) return text;
  const std::u32string& cps = *decoded;
  std::u32string kept(cps.begin(), cps.begin() + static_cast<std::ptrdiff_t>(width > 3 ? width - 3 : 0));
  return unicode::encode(kept) + "...";
}

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

}  // namespace mtwb::cli
