#include "mtwb/extraction.hpp"

#include <boost/regex.hpp>

#include "mtwb/error.hpp"
#include "mtwb/unicode.hpp"

namespace mtwb {

using nlohmann::json;

std::string_view extraction_mode_name(ExtractionMode m) {
  switch (m) {
    case ExtractionMode::kJsonlFields: return "jsonl_fields";
    case ExtractionMode::kTsvColumns: return "tsv_columns";
    case ExtractionMode::kParallelFiles: return "parallel_files";
    case ExtractionMode::kRegexRecord: return "regex_record";
  }
  return "jsonl_fields";
}

std::string_view text_field_name(TextField f) {
  switch (f) {
    case TextField::kSource: return "source";
    case TextField::kPrediction: return "prediction";
    case TextField::kReference: return "reference";
  }
  return "prediction";
}

namespace {

constexpr TextField kAllFields[] = {TextField::kSource, TextField::kPrediction,
                                    TextField::kReference};

[[noreturn]] void invalid_spec(const std::string& why) {
  throw Error(ErrorCode::kInvalidSpec, "invalid extraction spec: " + why);
}

ExtractionMode parse_mode(const std::string& name) {
  for (auto m : {ExtractionMode::kJsonlFields, ExtractionMode::kTsvColumns,
                 ExtractionMode::kParallelFiles, ExtractionMode::kRegexRecord}) {
    if (extraction_mode_name(m) == name) return m;
  }
  invalid_spec("unknown mode '" + name + "'");
}

bool uses_positions(ExtractionMode m) {
  return m == ExtractionMode::kTsvColumns || m == ExtractionMode::kParallelFiles;
}

// Named groups written as (?<name>...), (?P<name>...) or (?'name'...).
std::vector<std::string> named_groups(std::string_view pattern) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i + 3 < pattern.size(); ++i) {
    if (pattern[i] == '\\') {
      ++i;
      continue;
    }
    if (pattern[i] != '(' || pattern[i + 1] != '?') continue;
    std::size_t start = i + 2;
    char close = 0;
    if (pattern[start] == '<' && start + 1 < pattern.size() && pattern[start + 1] != '=' &&
        pattern[start + 1] != '!') {
      close = '>';
      ++start;
    } else if (pattern[start] == 'P' && start + 1 < pattern.size() && pattern[start + 1] == '<') {
      close = '>';
      start += 2;
    } else if (pattern[start] == '\'') {
      close = '\'';
      ++start;
    } else {
      continue;
    }
    const std::size_t end = pattern.find(close, start);
    if (end == std::string_view::npos) break;
    names.emplace_back(pattern.substr(start, end - start));
  }
  return names;
}

[[noreturn]] void field_missing(TextField f, std::size_t record, std::size_t file,
                                std::size_t line) {
  throw Error(ErrorCode::kFieldMissing,
              "record " + std::to_string(record) + " (file " + std::to_string(file) + ", line " +
                  std::to_string(line) + ") has no " + std::string(text_field_name(f)),
              {{"record", record},
               {"file", file},
               {"line", line},
               {"field", text_field_name(f)}});
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

void assign(ExtractedRecord& rec, TextField f, std::string value) {
  switch (f) {
    case TextField::kSource: rec.source = std::move(value); break;
    case TextField::kPrediction: rec.prediction = std::move(value); break;
    case TextField::kReference: rec.reference = std::move(value); break;
  }
}

}  // namespace

ExtractionSpec ExtractionSpec::from_json(const json& j) {
  if (!j.is_object()) invalid_spec("spec must be an object");
  auto mode = j.find("mode");
  if (mode == j.end() || !mode->is_string()) invalid_spec("'mode' is required");

  ExtractionSpec spec;
  spec.mode = parse_mode(mode->get<std::string>());
  if (auto p = j.find("pattern"); p != j.end()) {
    if (!p->is_string()) invalid_spec("'pattern' must be a string");
    spec.pattern = p->get<std::string>();
  }

  auto fields = j.find("fields");
  if (fields != j.end() && !fields->is_object()) invalid_spec("'fields' must be an object");
  if (fields == j.end() || fields->empty()) {
    if (spec.mode == ExtractionMode::kRegexRecord) {
      // Groups named after the fields themselves.
      for (const auto& name : named_groups(spec.pattern)) {
        for (TextField f : kAllFields) {
          if (name == text_field_name(f)) spec.names[f] = name;
        }
      }
    } else if (fields == j.end()) {
      invalid_spec("'fields' is required");
    }
  } else {
    for (const auto& [key, value] : fields->items()) {
      std::optional<TextField> field;
      for (TextField f : kAllFields) {
        if (key == text_field_name(f)) field = f;
      }
      if (!field) invalid_spec("unknown field '" + key + "'");
      if (uses_positions(spec.mode)) {
        if (!value.is_number_integer() || value.get<long long>() < 0) {
          invalid_spec("field '" + key + "' must map to a non-negative integer");
        }
        spec.positions[*field] = value.get<std::size_t>();
      } else {
        if (!value.is_string() || value.get<std::string>().empty()) {
          invalid_spec("field '" + key + "' must map to a name");
        }
        spec.names[*field] = value.get<std::string>();
      }
    }
  }
  spec.validate();
  return spec;
}

json ExtractionSpec::to_json() const {
  json fields = json::object();
  for (const auto& [f, name] : names) fields[std::string(text_field_name(f))] = name;
  for (const auto& [f, pos] : positions) fields[std::string(text_field_name(f))] = pos;
  json j = {{"mode", extraction_mode_name(mode)}, {"fields", fields}};
  if (mode == ExtractionMode::kRegexRecord) j["pattern"] = pattern;
  return j;
}

void ExtractionSpec::validate() const {
  const bool positional = uses_positions(mode);
  const bool has_prediction = positional ? positions.count(TextField::kPrediction) > 0
                                         : names.count(TextField::kPrediction) > 0;
  if (!has_prediction) invalid_spec("a prediction mapping is required");
  if (mode == ExtractionMode::kRegexRecord) {
    if (pattern.empty()) invalid_spec("regex_record needs a pattern");
    try {
      boost::regex re(pattern, boost::regex::perl);
    } catch (const boost::regex_error& e) {
      invalid_spec(std::string("pattern does not compile: ") + e.what());
    }
    const auto groups = named_groups(pattern);
    for (const auto& [f, name] : names) {
      if (std::find(groups.begin(), groups.end(), name) == groups.end()) {
        invalid_spec("pattern has no named group '" + name + "' for " +
                     std::string(text_field_name(f)));
      }
    }
  }
}

std::vector<std::string_view> split_lines(std::string_view text) {
  text = unicode::strip_bom(text);
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

std::vector<ExtractedRecord> extract_records(std::span<const std::string> files,
                                             const ExtractionSpec& spec) {
  spec.validate();
  for (std::size_t k = 0; k < files.size(); ++k) {
    if (!unicode::is_valid(files[k])) {
      throw Error(ErrorCode::kNonTextPayload,
                  "file " + std::to_string(k) + " is not UTF-8 text", {{"file", k}});
    }
  }

  std::vector<ExtractedRecord> out;
  switch (spec.mode) {
    case ExtractionMode::kJsonlFields: {
      for (std::size_t k = 0; k < files.size(); ++k) {
        const auto lines = split_lines(files[k]);
        for (std::size_t i = 0; i < lines.size(); ++i) {
          if (is_blank(lines[i])) continue;
          const std::size_t line_no = i + 1;
          json obj;
          try {
            obj = json::parse(lines[i]);
          } catch (const json::parse_error&) {
            throw Error(ErrorCode::kMalformedRecord,
                        "file " + std::to_string(k) + " line " + std::to_string(line_no) +
                            " is not a JSON object",
                        {{"file", k}, {"line", line_no}});
          }
          if (!obj.is_object()) {
            throw Error(ErrorCode::kMalformedRecord,
                        "file " + std::to_string(k) + " line " + std::to_string(line_no) +
                            " is not a JSON object",
                        {{"file", k}, {"line", line_no}});
          }
          ExtractedRecord rec;
          rec.file = k;
          rec.line = line_no;
          for (const auto& [f, key] : spec.names) {
            auto it = obj.find(key);
            if (it == obj.end() || it->is_null()) {
              if (f == TextField::kPrediction) field_missing(f, out.size() + 1, k, line_no);
              continue;
            }
            if (!it->is_string()) {
              throw Error(ErrorCode::kNonTextPayload,
                          "key '" + key + "' on line " + std::to_string(line_no) +
                              " is not text",
                          {{"file", k}, {"line", line_no}, {"field", key}});
            }
            assign(rec, f, it->get<std::string>());
          }
          out.push_back(std::move(rec));
        }
      }
      break;
    }
    case ExtractionMode::kTsvColumns: {
      for (std::size_t k = 0; k < files.size(); ++k) {
        const auto lines = split_lines(files[k]);
        for (std::size_t i = 0; i < lines.size(); ++i) {
          std::vector<std::string_view> cols;
          std::string_view rest = lines[i];
          for (;;) {
            const std::size_t tab = rest.find('\t');
            cols.push_back(rest.substr(0, tab));
            if (tab == std::string_view::npos) break;
            rest.remove_prefix(tab + 1);
          }
          ExtractedRecord rec;
          rec.file = k;
          rec.line = i + 1;
          for (const auto& [f, col] : spec.positions) {
            if (col >= cols.size()) field_missing(f, out.size() + 1, k, i + 1);
            assign(rec, f, std::string(cols[col]));
          }
          out.push_back(std::move(rec));
        }
      }
      break;
    }
    case ExtractionMode::kParallelFiles: {
      std::vector<std::vector<std::string_view>> columns(files.size());
      for (std::size_t k = 0; k < files.size(); ++k) columns[k] = split_lines(files[k]);
      for (const auto& [f, pos] : spec.positions) {
        if (pos >= files.size()) {
          invalid_spec(std::string(text_field_name(f)) + " maps to file " + std::to_string(pos) +
                       " but only " + std::to_string(files.size()) + " files were given");
        }
      }
      std::vector<std::size_t> counts;
      for (const auto& [f, pos] : spec.positions) counts.push_back(columns[pos].size());
      if (std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) !=
          counts.end()) {
        std::string listing;
        for (std::size_t c : counts) listing += (listing.empty() ? "" : ", ") + std::to_string(c);
        json by_field = json::object();
        for (const auto& [f, pos] : spec.positions) {
          by_field[std::string(text_field_name(f))] = columns[pos].size();
        }
        throw Error(ErrorCode::kLineCountMismatch, "parallel files differ in length: " + listing,
                    {{"counts", counts}, {"by_field", by_field}});
      }
      const std::size_t n = counts.empty() ? 0 : counts.front();
      for (std::size_t i = 0; i < n; ++i) {
        ExtractedRecord rec;
        rec.line = i + 1;
        for (const auto& [f, pos] : spec.positions) assign(rec, f, std::string(columns[pos][i]));
        out.push_back(std::move(rec));
      }
      break;
    }
    case ExtractionMode::kRegexRecord: {
      const boost::regex re(spec.pattern, boost::regex::perl);
      for (std::size_t k = 0; k < files.size(); ++k) {
        const auto lines = split_lines(files[k]);
        for (std::size_t i = 0; i < lines.size(); ++i) {
          if (is_blank(lines[i])) continue;
          const std::size_t line_no = i + 1;
          boost::match_results<std::string_view::const_iterator> m;
          if (!boost::regex_search(lines[i].begin(), lines[i].end(), m, re)) {
            throw Error(ErrorCode::kPatternNoMatch,
                        "file " + std::to_string(k) + " line " + std::to_string(line_no) +
                            " does not match the pattern",
                        {{"file", k}, {"line", line_no}});
          }
          ExtractedRecord rec;
          rec.file = k;
          rec.line = line_no;
          for (const auto& [f, group] : spec.names) {
            const auto& sub = m[group];
            if (!sub.matched) {
              if (f == TextField::kPrediction) field_missing(f, out.size() + 1, k, line_no);
              continue;
            }
            assign(rec, f, sub.str());
          }
          out.push_back(std::move(rec));
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace mtwb
