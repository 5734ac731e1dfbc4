#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mtwb::cli {

// Left-aligned text table with a header rule.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& out) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Shortens to at most `width` code points, marking the cut with "...".
std::string clip(const std::string& text, std::size_t width);

std::string fixed(double value, int digits = 2);

}  // namespace mtwb::cli
