#include "mtwb/api.hpp"

#include "mtwb/analytics.hpp"
#include "mtwb/error.hpp"
#include "mtwb/extraction.hpp"
#include "mtwb/ingestion.hpp"
#include "mtwb/json.hpp"
#include "mtwb/query.hpp"
#include "mtwb/search.hpp"

#ifndef MTWB_VERSION
#define MTWB_VERSION "0.0.0"
#endif

namespace mtwb {

using nlohmann::json;

std::string_view version() { return MTWB_VERSION; }

std::vector<std::string> split_csv(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item(text.substr(start, comma - start));
    const auto first = item.find_first_not_of(" \t");
    if (first != std::string::npos) {
      item = item.substr(first, item.find_last_not_of(" \t") - first + 1);
      out.push_back(std::move(item));
    }
    start = comma + 1;
  }
  return out;
}

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& expected) {
  throw Error(ErrorCode::kBadRequest, "field '" + field + "' must be " + expected,
              {{"field", field}, {"expected", expected}});
}

void require_object(const json& body) {
  if (!body.is_object()) {
    throw Error(ErrorCode::kBadRequest, "request body must be an object",
                {{"field", "body"}, {"expected", "object"}});
  }
}

std::string string_field(const json& body, const std::string& field, bool required) {
  auto it = body.find(field);
  if (it == body.end() || it->is_null()) {
    if (required) bad_field(field, "a string");
    return {};
  }
  if (!it->is_string()) bad_field(field, "a string");
  return it->get<std::string>();
}

// Array of strings, or one comma-separated string.
std::vector<std::string> strings_field(const json& body, const std::string& field,
                                       bool required) {
  auto it = body.find(field);
  if (it == body.end() || it->is_null()) {
    if (required) bad_field(field, "a list of strings");
    return {};
  }
  if (it->is_string()) return split_csv(it->get<std::string>());
  if (!it->is_array()) bad_field(field, "a list of strings");
  std::vector<std::string> out;
  for (const auto& item : *it) {
    if (!item.is_string()) bad_field(field, "a list of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

long long int_field(const json& body, const std::string& field, long long fallback) {
  auto it = body.find(field);
  if (it == body.end() || it->is_null()) return fallback;
  if (!it->is_number_integer()) bad_field(field, "an integer");
  return it->get<long long>();
}

bool bool_field(const json& body, const std::string& field, bool fallback) {
  auto it = body.find(field);
  if (it == body.end() || it->is_null()) return fallback;
  if (!it->is_boolean()) bad_field(field, "a boolean");
  return it->get<bool>();
}

PageRequest page_of(const json& body) {
  return PageRequest::make(int_field(body, "page", 1),
                           int_field(body, "page_size", static_cast<long long>(kDefaultPageSize)));
}

std::size_t bin_count_of(long long requested) {
  if (requested < 1) {
    throw Error(ErrorCode::kInvalidBinCount, "bin_count must be at least 1",
                {{"bin_count", requested}});
  }
  return static_cast<std::size_t>(requested);
}

json group_json(const InstanceGroup& g) {
  json members = json::array();
  for (const auto& m : g.members) {
    members.push_back({{"run_id", m.run_id},
                       {"run_name", m.run_name},
                       {"instance", m.instance},
                       {"scores", m.scores},
                       {"annotations", m.annotations}});
  }
  return {{"group_key", g.group_key},
          {"source", g.source},
          {"reference", g.reference},
          {"members", std::move(members)}};
}

json groups_json(const std::vector<InstanceGroup>& groups) {
  json out = json::array();
  for (const auto& g : groups) out.push_back(group_json(g));
  return out;
}

json record_json(const ExtractedRecord& r) {
  return {{"source", optional_text(r.source)},
          {"prediction", r.prediction},
          {"reference", optional_text(r.reference)},
          {"file", r.file},
          {"line", r.line}};
}

json append_json(const AppendResult& r) {
  return {{"count", r.count},
          {"first_index", r.first_index},
          {"empty_predictions", r.empty_predictions}};
}

json counts_json(const IngestCounts& c) {
  return {{"scores_added", c.scores_added},
          {"errors_added", c.errors_added},
          {"skipped", c.skipped}};
}

}  // namespace

Api::Api(Store& store, AdapterTable adapters, ApiOptions options)
    : store_(store), options_(options), evaluator_(store, std::move(adapters), options.workers) {}

json Api::health() const {
  return {{"status", "ok"}, {"version", version()}, {"schema_version", store_.schema_version()}};
}

json Api::create_run(const json& body) {
  require_object(body);
  RunRequest req;
  req.name = string_field(body, "name", true);
  req.source_lang = string_field(body, "source_lang", true);
  req.target_lang = string_field(body, "target_lang", true);
  req.metrics = strings_field(body, "metrics", false);
  req.device_hints = strings_field(body, "device_hints", false);
  return mtwb::create_run(store_, evaluator_.adapters(), req);
}

json Api::list_runs() const {
  return {{"runs", store_.list_runs()}};
}

json Api::get_run(const std::string& run_id) const {
  return store_.read([&](const Reader& r) {
    json out = r.require_run(run_id);
    out["instance_count"] = r.instance_count(run_id);
    return out;
  });
}

json Api::add_instances(const std::string& run_id, const json& body) {
  const json* items = &body;
  if (body.is_object()) {
    auto it = body.find("instances");
    if (it == body.end()) bad_field("instances", "a list of instances");
    items = &*it;
  }
  if (!items->is_array()) bad_field("instances", "a list of instances");
  std::vector<RawInstance> raw;
  for (std::size_t i = 0; i < items->size(); ++i) {
    try {
      raw.push_back(raw_instance_from_json(run_id, (*items)[i]));
    } catch (Error& e) {
      json details = e.details();
      details["item"] = i;
      throw Error(e.code(), e.what(), std::move(details));
    }
  }
  return append_json(add_instances_manual(store_, run_id, raw));
}

json Api::ingest(const std::string& run_id, const json& spec_doc,
                 const std::vector<std::string>& files, bool dry_run) {
  if (!spec_doc.is_object()) bad_field("spec", "an extraction spec object");
  const ExtractionSpec spec = ExtractionSpec::from_json(spec_doc);
  const FileIngestResult result = ingest_file(store_, run_id, files, spec, dry_run);
  json preview = json::array();
  for (const auto& r : result.preview) preview.push_back(record_json(r));
  return {{"dry_run", dry_run},
          {"extracted", result.extracted},
          {"appended", append_json(result.appended)},
          {"preview", std::move(preview)}};
}

json Api::upload_annotations(const std::string& run_id, std::string_view stream,
                             const std::string& origin) {
  if (origin.empty()) bad_field("origin", "a nonempty metric name");
  return counts_json(ingest_annotations(store_, run_id, stream, origin));
}

json Api::import_run(const std::string& run_id, std::string_view stream) {
  const ImportResult r = mtwb::import_run(store_, run_id, stream);
  return {{"instances", r.instances}, {"annotations", counts_json(r.annotations)}};
}

json Api::evaluate(const std::string& run_id, const json& body) {
  json doc = body.is_null() ? json::object() : body;
  require_object(doc);
  return evaluator_.start(run_id, strings_field(doc, "metrics", false),
                          strings_field(doc, "device_hints", false));
}

json Api::job(const std::string& job_id) const { return evaluator_.status(job_id); }

json Api::wait_job(const std::string& job_id) { return evaluator_.wait(job_id); }

json Api::search(const json& body) const {
  require_object(body);
  const auto run_ids = strings_field(body, "run_ids", true);
  SearchQuery query;
  if (auto it = body.find("query"); it != body.end() && !it->is_null()) {
    if (it->is_string()) {
      query = parse_query(it->get<std::string>());
    } else if (it->is_array()) {
      query = query_from_json(*it);
    } else {
      bad_field("query", "a query string or a list of clauses");
    }
  }
  const PageRequest page = page_of(body);
  const SearchResult result = store_.read(
      [&](const Reader& r) { return execute_query(r, query, run_ids, page); });
  return {{"query", query_to_json(query)},
          {"groups", groups_json(result.groups)},
          {"matched_error_ids", result.matched_error_ids},
          {"total", result.total},
          {"page", result.page.page},
          {"page_size", result.page.page_size}};
}

json Api::summary(const std::string& run_id, std::size_t bin_count) const {
  bin_count_of(static_cast<long long>(bin_count));
  return store_.read([&](const Reader& r) { return json(run_summary(r, run_id, bin_count)); });
}

json Api::compare(const json& body) const {
  require_object(body);
  const auto run_ids = strings_field(body, "run_ids", true);
  const std::size_t bins =
      bin_count_of(int_field(body, "bin_count", static_cast<long long>(kDefaultBinCount)));
  return store_.read(
      [&](const Reader& r) { return json{{"runs", compare_runs(r, run_ids, bins)}}; });
}

json Api::groups(const std::vector<std::string>& run_ids, const PageRequest& page) const {
  const GroupPage result =
      store_.read([&](const Reader& r) { return group_instances(r, run_ids, page); });
  return {{"groups", groups_json(result.groups)},
          {"total", result.total},
          {"page", result.page.page},
          {"page_size", result.page.page_size}};
}

json Api::submit_ranking(const json& body) {
  require_object(body);
  RankingRequest req;
  req.group_key = string_field(body, "group_key", true);
  req.ordering = strings_field(body, "ordering", true);
  req.session_id = string_field(body, "session_id", true);
  req.consented = bool_field(body, "consented", false);
  req.run_ids = strings_field(body, "run_ids", false);
  const RankingReceipt receipt = mtwb::submit_ranking(store_, req, options_.feedback);
  json out = {{"stored", receipt.stored}};
  out["id"] = receipt.feedback ? json(receipt.feedback->id) : json(nullptr);
  return out;
}

json Api::revoke_feedback(const std::string& session_id) {
  return {{"session_id", session_id}, {"deleted", mtwb::revoke_feedback(store_, session_id)}};
}

std::string Api::export_feedback() const {
  return store_.read([](const Reader& r) { return export_feedback_ndjson(r); });
}

std::string Api::export_run(const std::string& run_id) const {
  return store_.read([&](const Reader& r) { return export_run_ndjson(r, run_id); });
}

}  // namespace mtwb
