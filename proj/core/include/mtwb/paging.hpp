#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <vector>

namespace mtwb {

inline constexpr std::size_t kDefaultPageSize = 20;
inline constexpr std::size_t kMaxPageSize = 200;

// 1-based page of at most page_size items.
struct PageRequest {
  std::size_t page = 1;
  std::size_t page_size = kDefaultPageSize;

  // Throws kInvalidPage.
  static PageRequest make(long long page, long long page_size);

  std::size_t offset() const { return (page - 1) * page_size; }

  template <typename T>
  std::vector<T> slice(std::vector<T> items) const {
    if (offset() >= items.size()) return {};
    const std::size_t end = std::min(items.size(), offset() + page_size);
    return std::vector<T>(std::make_move_iterator(items.begin() + offset()),
                          std::make_move_iterator(items.begin() + end));
  }
};

}  // namespace mtwb
