#include "mtwb/search.hpp"

#include "mtwb/error.hpp"
#include "mtwb/like.hpp"
#include "mtwb/types.hpp"

namespace mtwb {

namespace {

std::string_view error_text(SearchField field, const ErrorAnnotation& a) {
  switch (field) {
    case SearchField::kErrorType: return a.error_type;
    case SearchField::kErrorScale: return severity_name(a.severity);
    default: return a.explanation;
  }
}

}  // namespace

QueryMatcher::QueryMatcher(const SearchQuery& query) : query_(query) {
  patterns_.reserve(query_.clauses.size());
  for (const auto& clause : query_.clauses) patterns_.emplace_back(clause.pattern);
}

bool QueryMatcher::clause_matches(std::size_t i, const RunData& run,
                                  const Instance& instance) const {
  const SearchField field = query_.clauses[i].field;
  const LikePattern& pattern = patterns_[i];
  switch (field) {
    case SearchField::kErrorType:
    case SearchField::kErrorScale:
    case SearchField::kErrorExplanation:
      for (const auto& a : run.errors_of(instance)) {
        if (pattern.matches(error_text(field, a))) return true;
      }
      return false;
    case SearchField::kTextSource:
      return instance.source && pattern.matches(*instance.source);
    case SearchField::kTextPrediction:
      return pattern.matches(instance.prediction);
    case SearchField::kTextReference:
      return instance.reference && pattern.matches(*instance.reference);
    case SearchField::kLangSource:
      return pattern.matches(run.run.lang.source);
    case SearchField::kLangTarget:
      return pattern.matches(run.run.lang.target);
  }
  return false;
}

bool QueryMatcher::matches(const RunData& run, const Instance& instance) const {
  if (query_.clauses.empty()) return true;
  bool in = clause_matches(0, run, instance);
  for (std::size_t i = 1; i < query_.clauses.size(); ++i) {
    switch (query_.clauses[i].conjunction) {
      case Conjunction::kAnd:
        in = in && clause_matches(i, run, instance);
        break;
      case Conjunction::kOr:
        in = in || clause_matches(i, run, instance);
        break;
      case Conjunction::kAndNot:
        in = in && !clause_matches(i, run, instance);
        break;
    }
  }
  return in;
}

std::vector<std::string> QueryMatcher::matched_errors(const RunData& run,
                                                      const Instance& instance) const {
  std::vector<std::string> ids;
  for (const auto& a : run.errors_of(instance)) {
    for (std::size_t i = 0; i < query_.clauses.size(); ++i) {
      const auto& clause = query_.clauses[i];
      if (!is_error_field(clause.field)) continue;
      if (i > 0 && clause.conjunction == Conjunction::kAndNot) continue;
      if (patterns_[i].matches(error_text(clause.field, a))) {
        ids.push_back(a.id);
        break;
      }
    }
  }
  return ids;
}

SearchResult execute_query(const Reader& store, const SearchQuery& query,
                           const std::vector<std::string>& run_ids, const PageRequest& page) {
  if (run_ids.empty()) {
    throw Error(ErrorCode::kBadRequest, "at least one run is required", {{"field", "run_ids"}});
  }
  const auto runs = load_runs(store, run_ids);
  const QueryMatcher matcher(query);

  std::set<std::string> error_ids;
  auto groups = build_groups(runs, [&](const RunData& run, const Instance& inst) {
    if (!matcher.matches(run, inst)) return false;
    for (auto& id : matcher.matched_errors(run, inst)) error_ids.insert(std::move(id));
    return true;
  });

  SearchResult result;
  result.total = groups.size();
  result.page = page;
  result.groups = page.slice(std::move(groups));
  result.matched_error_ids.assign(error_ids.begin(), error_ids.end());
  return result;
}

}  // namespace mtwb
