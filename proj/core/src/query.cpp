#include "mtwb/query.hpp"

#include <array>
#include <cctype>

#include "mtwb/error.hpp"
#include "mtwb/unicode.hpp"

namespace mtwb {

namespace {

constexpr std::array kFields = {
    SearchField::kErrorType,     SearchField::kErrorScale,     SearchField::kErrorExplanation,
    SearchField::kTextSource,    SearchField::kTextPrediction, SearchField::kTextReference,
    SearchField::kLangSource,    SearchField::kLangTarget,
};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SearchQuery parse() {
    SearchQuery query;
    skip_ws();
    if (at_end()) return query;
    query.clauses.push_back(clause(Conjunction::kAnd));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const std::size_t conj_pos = pos_;
      const Conjunction conj = conjunction();
      skip_ws();
      if (at_end()) fail(conj_pos, "dangling conjunction '" +
                                       std::string(conjunction_name(conj)) + "'");
      query.clauses.push_back(clause(conj));
    }
    return query;
  }

 private:
  [[noreturn]] void fail(std::size_t byte_pos, const std::string& why) const {
    const std::size_t position = unicode::decode(text_.substr(0, byte_pos))
                                     .value_or(std::u32string(byte_pos, U'?'))
                                     .size();
    throw Error(ErrorCode::kParseError,
                why + " at position " + std::to_string(position),
                {{"position", position}});
  }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view word() {
    const std::size_t start = pos_;
    while (!at_end()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-') {
        ++pos_;
      } else {
        break;
      }
    }
    return text_.substr(start, pos_ - start);
  }

  Conjunction conjunction() {
    const std::size_t start = pos_;
    const std::string_view w = word();
    if (iequals(w, "OR")) return Conjunction::kOr;
    if (iequals(w, "AND")) {
      const std::size_t after_and = pos_;
      skip_ws();
      if (iequals(word(), "NOT")) return Conjunction::kAndNot;
      pos_ = after_and;
      return Conjunction::kAnd;
    }
    if (w.empty()) fail(start, "expected AND, OR or AND NOT");
    fail(start, "expected AND, OR or AND NOT but found '" + std::string(w) + "'");
  }

  SearchClause clause(Conjunction conj) {
    SearchClause c;
    c.conjunction = conj;
    const std::size_t field_pos = pos_;
    const std::string_view name = word();
    if (name.empty()) fail(field_pos, "expected a field name");
    auto field = parse_field(name);
    if (!field) fail(field_pos, "unknown field '" + std::string(name) + "'");
    c.field = *field;
    skip_ws();
    if (at_end() || text_[pos_] != '~') fail(pos_, "expected '~' after field");
    ++pos_;
    skip_ws();
    if (at_end() || text_[pos_] != '\'') fail(pos_, "missing pattern");
    const std::size_t open = pos_++;
    for (;;) {
      if (at_end()) fail(open, "unterminated pattern");
      const char ch = text_[pos_++];
      if (ch == '\'') {
        if (!at_end() && text_[pos_] == '\'') {
          c.pattern += '\'';
          ++pos_;
          continue;
        }
        break;
      }
      c.pattern += ch;
    }
    return c;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view conjunction_name(Conjunction c) {
  switch (c) {
    case Conjunction::kAnd: return "AND";
    case Conjunction::kOr: return "OR";
    case Conjunction::kAndNot: return "AND NOT";
  }
  return "AND";
}

std::string_view field_name(SearchField f) {
  switch (f) {
    case SearchField::kErrorType: return "error.type";
    case SearchField::kErrorScale: return "error.scale";
    case SearchField::kErrorExplanation: return "error.explanation";
    case SearchField::kTextSource: return "text.source";
    case SearchField::kTextPrediction: return "text.prediction";
    case SearchField::kTextReference: return "text.reference";
    case SearchField::kLangSource: return "lang.source";
    case SearchField::kLangTarget: return "lang.target";
  }
  return "text.prediction";
}

std::optional<SearchField> parse_field(std::string_view name) {
  for (SearchField f : kFields) {
    if (iequals(field_name(f), name)) return f;
  }
  return std::nullopt;
}

bool is_error_field(SearchField f) {
  return f == SearchField::kErrorType || f == SearchField::kErrorScale ||
         f == SearchField::kErrorExplanation;
}

SearchQuery parse_query(std::string_view text) { return Parser(text).parse(); }

SearchQuery query_from_json(const nlohmann::json& clauses) {
  if (!clauses.is_array()) {
    throw Error(ErrorCode::kParseError, "structured query must be a list of clauses",
                {{"field", "clauses"}});
  }
  SearchQuery query;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const auto& c = clauses[i];
    auto bad = [&](const std::string& why) {
      throw Error(ErrorCode::kParseError, "clause " + std::to_string(i) + ": " + why,
                  {{"index", i}});
    };
    if (!c.is_object()) bad("must be an object");
    SearchClause clause;
    auto field = c.find("field");
    if (field == c.end() || !field->is_string()) bad("'field' is required");
    auto parsed = parse_field(field->get<std::string>());
    if (!parsed) bad("unknown field '" + field->get<std::string>() + "'");
    clause.field = *parsed;
    auto pattern = c.find("pattern");
    if (pattern == c.end() || !pattern->is_string()) bad("missing pattern");
    clause.pattern = pattern->get<std::string>();
    auto conj = c.find("conjunction");
    if (conj != c.end() && !conj->is_null()) {
      if (!conj->is_string()) bad("'conjunction' must be a string");
      std::string name = conj->get<std::string>();
      for (char& ch : name) {
        if (ch == '_') ch = ' ';
      }
      if (iequals(name, "AND")) {
        clause.conjunction = Conjunction::kAnd;
      } else if (iequals(name, "OR")) {
        clause.conjunction = Conjunction::kOr;
      } else if (iequals(name, "AND NOT")) {
        clause.conjunction = Conjunction::kAndNot;
      } else {
        bad("unknown conjunction '" + conj->get<std::string>() + "'");
      }
    } else if (i > 0) {
      bad("'conjunction' is required after the first clause");
    }
    if (i == 0) clause.conjunction = Conjunction::kAnd;
    query.clauses.push_back(std::move(clause));
  }
  return query;
}

nlohmann::json query_to_json(const SearchQuery& query) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < query.clauses.size(); ++i) {
    const auto& c = query.clauses[i];
    out.push_back({{"conjunction", i == 0 ? nlohmann::json(nullptr)
                                          : nlohmann::json(conjunction_name(c.conjunction))},
                   {"field", field_name(c.field)},
                   {"pattern", c.pattern}});
  }
  return out;
}

std::string query_to_text(const SearchQuery& query) {
  std::string out;
  for (std::size_t i = 0; i < query.clauses.size(); ++i) {
    const auto& c = query.clauses[i];
    if (i > 0) {
      out += ' ';
      out += conjunction_name(c.conjunction);
      out += ' ';
    }
    out += field_name(c.field);
    out += " ~ '";
    for (char ch : c.pattern) {
      out += ch;
      if (ch == '\'') out += '\'';
    }
    out += '\'';
  }
  return out;
}

}  // namespace mtwb
