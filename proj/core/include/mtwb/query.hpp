#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace mtwb {

enum class Conjunction { kAnd, kOr, kAndNot };

enum class SearchField {
  kErrorType,
  kErrorScale,
  kErrorExplanation,
  kTextSource,
  kTextPrediction,
  kTextReference,
  kLangSource,
  kLangTarget,
};

std::string_view conjunction_name(Conjunction c);  // "AND", "OR", "AND NOT"
std::string_view field_name(SearchField f);        // "error.type", ...
std::optional<SearchField> parse_field(std::string_view name);
bool is_error_field(SearchField f);

struct SearchClause {
  Conjunction conjunction = Conjunction::kAnd;  // ignored on the first clause
  SearchField field = SearchField::kTextPrediction;
  std::string pattern;  // raw LIKE pattern

  friend bool operator==(const SearchClause&, const SearchClause&) = default;
};

// Clauses combine strictly left to right with equal precedence:
//   result = M(c1); result = result (AND: ∩, OR: ∪, AND NOT: \) M(ci) ...
// An empty query matches everything.
struct SearchQuery {
  std::vector<SearchClause> clauses;

  friend bool operator==(const SearchQuery&, const SearchQuery&) = default;
};

//   query  := ε | clause (conj clause)*
//   conj   := AND | OR | AND NOT          (case-insensitive)
//   clause := field '~' pattern
//   pattern is single-quoted; '' is an embedded quote.
// Throws kParseError with the 0-based character "position".
SearchQuery parse_query(std::string_view text);

// Structured form: [{"conjunction": "AND", "field": "error.type",
// "pattern": "%x%"}, ...]. Throws kParseError with the clause "index".
SearchQuery query_from_json(const nlohmann::json& clauses);
nlohmann::json query_to_json(const SearchQuery& query);

// Textual form that parse_query() maps back to the same query.
std::string query_to_text(const SearchQuery& query);

}  // namespace mtwb
