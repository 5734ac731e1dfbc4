#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mtwb/store.hpp"
#include "mtwb/types.hpp"

namespace mtwb {

// Line-delimited record protocol shared by external metric adapters, direct
// annotation-file ingestion and run export:
//
//   {"index": 0, "score": -7, "errors": [{"type": "...", "severity": "major",
//    "span": [3, 9], "explanation": "..."}]}
//
// Export adds "source"/"prediction"/"reference" text fields, a "scores"
// object holding every metric, and an "origin" on each error.
struct AdapterError {
  std::string error_type;
  std::string severity;
  std::optional<Span> span;
  std::string explanation;
  std::optional<std::string> origin;
};

struct AdapterRecord {
  std::optional<std::int64_t> index;
  std::optional<std::string> id;
  std::optional<double> score;
  std::optional<std::map<std::string, double>> scores;
  std::optional<std::vector<AdapterError>> errors;
  std::size_t line = 0;  // 1-based position in the stream
};

struct AdapterStream {
  std::vector<AdapterRecord> records;
  std::size_t blank_lines = 0;
};

// Throws kMalformedRecord (with "line") or kInvalidSpan.
AdapterRecord parse_adapter_record(std::string_view line_text, std::size_t line);
AdapterStream parse_adapter_stream(std::string_view text);

nlohmann::json adapter_record_to_json(const AdapterRecord& record);

struct IngestCounts {
  std::size_t scores_added = 0;
  std::size_t errors_added = 0;
  std::size_t skipped = 0;
};

// Applies records inside an open transaction. Errors for an instance replace
// earlier errors with the same origin; scores overwrite.
// Throws kUnknownInstance (with "record"), kInvalidSpan, kUnknownSeverity.
IngestCounts apply_adapter_records(WriteTxn& txn, const Run& run,
                                   const std::vector<AdapterRecord>& records,
                                   std::string_view origin);

// Parses and applies a whole stream atomically.
IngestCounts ingest_annotations(Store& store, std::string_view run_id, std::string_view stream,
                                std::string_view origin);

struct AdapterConfig {
  // Shell command; "{devices}" and "{metric}" are substituted.
  std::string command;
  std::map<std::string, std::string> env;
};

class AdapterTable {
 public:
  AdapterTable() = default;

  // {"comet": {"command": "...", "env": {"K": "V"}}, ...}
  static AdapterTable from_json(const nlohmann::json& config);
  static AdapterTable load(const std::filesystem::path& path);

  void add(std::string metric, AdapterConfig config);
  const AdapterConfig* find(std::string_view metric) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, AdapterConfig, std::less<>> adapters_;
};

// Device hints reach the adapter verbatim as CANVAS_DEVICES and through the
// "{devices}" placeholder.
std::string devices_string(const std::vector<std::string>& device_hints);

// Serializes the run's instances to the adapter's stdin (one JSON object per
// line) and parses its stdout as adapter records.
// Throws kAdapterMissing, kAdapterFailed (diagnostics carry stderr).
std::vector<AdapterRecord> run_adapter(const Reader& store, std::string_view run_id,
                                       const AdapterTable& adapters, std::string_view metric,
                                       const std::vector<std::string>& device_hints);

}  // namespace mtwb
