#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mtwb/adapter.hpp"
#include "mtwb/extraction.hpp"
#include "mtwb/store.hpp"
#include "mtwb/validation.hpp"

namespace mtwb {

inline constexpr std::string_view kBleuMetric = "bleu";
inline constexpr std::string_view kBaselineMetric = "baseline";

bool is_builtin_metric(std::string_view metric);

struct RunRequest {
  std::string name;
  std::string source_lang;
  std::string target_lang;
  std::vector<std::string> metrics;
  std::vector<std::string> device_hints;
};

// Throws kUnknownMetric, kInvalidLanguageCode.
Run create_run(Store& store, const AdapterTable& adapters, const RunRequest& request);

struct AppendResult {
  std::size_t count = 0;
  std::int64_t first_index = 0;
  // Indices of instances accepted with an empty prediction.
  std::vector<std::int64_t> empty_predictions;
};

// Appends with consecutive indices in one transaction. Throws kUnknownRun.
AppendResult add_instances_manual(Store& store, std::string_view run_id,
                                  const std::vector<RawInstance>& triples);

struct FileIngestResult {
  AppendResult appended;
  // First extracted records; with dry_run nothing is persisted.
  std::vector<ExtractedRecord> preview;
  std::size_t extracted = 0;
};

inline constexpr std::size_t kPreviewRecords = 5;

// All-or-nothing per call.
FileIngestResult ingest_file(Store& store, std::string_view run_id,
                             std::span<const std::string> files, const ExtractionSpec& spec,
                             bool dry_run = false);

// One export record per instance, in index order: the adapter record format
// plus the instance texts and every stored score.
std::vector<nlohmann::ordered_json> export_run(const Reader& store, std::string_view run_id);
std::string export_run_ndjson(const Reader& store, std::string_view run_id);

struct ImportResult {
  std::size_t instances = 0;
  IngestCounts annotations;
};

// Reads an export stream into a run: instances are appended, then scores
// and errors re-attached. Atomic.
ImportResult import_run(Store& store, std::string_view run_id, std::string_view stream);

}  // namespace mtwb
