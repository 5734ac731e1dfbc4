#pragma once

#include <set>
#include <string>
#include <vector>

#include "mtwb/grouping.hpp"
#include "mtwb/like.hpp"
#include "mtwb/paging.hpp"
#include "mtwb/query.hpp"
#include "mtwb/snapshot.hpp"
#include "mtwb/store.hpp"

namespace mtwb {

struct SearchResult {
  std::vector<InstanceGroup> groups;  // the requested page
  std::vector<std::string> matched_error_ids;  // sorted, over all matching instances
  std::size_t total = 0;  // matching groups across all pages
  PageRequest page;
};

// Compiled form of a query, reusable across runs and instances.
class QueryMatcher {
 public:
  explicit QueryMatcher(const SearchQuery& query);

  bool matches(const RunData& run, const Instance& instance) const;

  // Annotations of the instance satisfying an error clause that adds
  // instances (first clause, AND, OR). AND NOT clauses only remove.
  std::vector<std::string> matched_errors(const RunData& run, const Instance& instance) const;

 private:
  bool clause_matches(std::size_t i, const RunData& run, const Instance& instance) const;

  SearchQuery query_;
  std::vector<LikePattern> patterns_;
};

// Throws kUnknownRun, kBadRequest (no runs).
SearchResult execute_query(const Reader& store, const SearchQuery& query,
                           const std::vector<std::string>& run_ids, const PageRequest& page);

}  // namespace mtwb
