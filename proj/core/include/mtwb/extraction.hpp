#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace mtwb {

// Declarative replacement for user-written file readers.
enum class ExtractionMode { kJsonlFields, kTsvColumns, kParallelFiles, kRegexRecord };

enum class TextField { kSource, kPrediction, kReference };

std::string_view extraction_mode_name(ExtractionMode m);
std::string_view text_field_name(TextField f);

struct ExtractionSpec {
  ExtractionMode mode = ExtractionMode::kJsonlFields;
  // jsonl_fields: object keys. regex_record: named capture groups.
  std::map<TextField, std::string> names;
  // tsv_columns: 0-based columns. parallel_files: 0-based file positions.
  std::map<TextField, std::size_t> positions;
  // regex_record only.
  std::string pattern;

  // {"mode": "jsonl_fields", "fields": {"prediction": "hyp", ...}}
  // {"mode": "tsv_columns", "fields": {"prediction": 0, "reference": 1}}
  // {"mode": "parallel_files", "fields": {"prediction": 0, "reference": 1}}
  // {"mode": "regex_record", "pattern": "(?<prediction>.*) \\|\\|\\| (?<reference>.*)"}
  // Throws kInvalidSpec.
  static ExtractionSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  // Throws kInvalidSpec.
  void validate() const;
};

struct ExtractedRecord {
  std::optional<std::string> source;
  std::string prediction;
  std::optional<std::string> reference;
  std::size_t file = 0;  // 0-based file position
  std::size_t line = 0;  // 1-based line within that file
};

// Splits text into lines: tolerates a UTF-8 BOM and CRLF endings; a final
// newline does not start an extra line.
std::vector<std::string_view> split_lines(std::string_view text);

// Extracts one record per input record, in file order.
// Throws kLineCountMismatch, kFieldMissing (with "record"), kPatternNoMatch
// (with "line"), kMalformedRecord, kNonTextPayload, kInvalidSpec.
std::vector<ExtractedRecord> extract_records(std::span<const std::string> files,
                                             const ExtractionSpec& spec);

}  // namespace mtwb
