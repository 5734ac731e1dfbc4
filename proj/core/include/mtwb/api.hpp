#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mtwb/adapter.hpp"
#include "mtwb/evaluation.hpp"
#include "mtwb/feedback.hpp"
#include "mtwb/paging.hpp"
#include "mtwb/store.hpp"

namespace mtwb {

std::string_view version();

struct ApiOptions {
  FeedbackOptions feedback;
  std::size_t workers = 2;
};

// Request handlers shared by the HTTP server and the CLI. Each takes the
// decoded request document and returns the response document, so both
// front ends produce identical content. Malformed bodies raise kBadRequest
// with a "field" diagnostic.
class Api {
 public:
  Api(Store& store, AdapterTable adapters, ApiOptions options = {});

  Store& store() { return store_; }
  Evaluator& evaluator() { return evaluator_; }

  nlohmann::json health() const;

  // {"name", "source_lang", "target_lang", "metrics": [...], "device_hints": [...]}
  nlohmann::json create_run(const nlohmann::json& body);
  nlohmann::json list_runs() const;
  nlohmann::json get_run(const std::string& run_id) const;

  // {"instances": [{"source", "prediction", "reference"}, ...]} or a bare array.
  nlohmann::json add_instances(const std::string& run_id, const nlohmann::json& body);
  // File contents in spec order.
  nlohmann::json ingest(const std::string& run_id, const nlohmann::json& spec,
                        const std::vector<std::string>& files, bool dry_run);
  // Adapter-format records, one per line.
  nlohmann::json upload_annotations(const std::string& run_id, std::string_view stream,
                                    const std::string& origin);
  nlohmann::json import_run(const std::string& run_id, std::string_view stream);

  // {"metrics": [...], "device_hints": [...]}; both optional.
  nlohmann::json evaluate(const std::string& run_id, const nlohmann::json& body);
  nlohmann::json job(const std::string& job_id) const;
  nlohmann::json wait_job(const std::string& job_id);

  // {"run_ids": [...], "query": "text" | [clauses], "page", "page_size"}
  nlohmann::json search(const nlohmann::json& body) const;
  nlohmann::json summary(const std::string& run_id, std::size_t bin_count) const;
  // {"run_ids": [...], "bin_count"}
  nlohmann::json compare(const nlohmann::json& body) const;
  nlohmann::json groups(const std::vector<std::string>& run_ids, const PageRequest& page) const;

  // {"group_key", "ordering", "session_id", "consented", "run_ids"}
  nlohmann::json submit_ranking(const nlohmann::json& body);
  nlohmann::json revoke_feedback(const std::string& session_id);

  // Line-delimited records.
  std::string export_feedback() const;
  std::string export_run(const std::string& run_id) const;

 private:
  Store& store_;
  ApiOptions options_;
  Evaluator evaluator_;
};

// Splits "a,b,,c" into {"a", "b", "c"}.
std::vector<std::string> split_csv(std::string_view text);

}  // namespace mtwb
