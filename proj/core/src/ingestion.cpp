#include "mtwb/ingestion.hpp"

#include <algorithm>
#include <map>

#include "mtwb/error.hpp"
#include "mtwb/json.hpp"

namespace mtwb {

using nlohmann::json;
using nlohmann::ordered_json;

bool is_builtin_metric(std::string_view metric) {
  return metric == kBleuMetric || metric == kBaselineMetric;
}

Run create_run(Store& store, const AdapterTable& adapters, const RunRequest& request) {
  Run run;
  run.id = make_id("run");
  run.name = request.name;
  run.lang = LanguagePair::make(request.source_lang, request.target_lang);
  run.created_at = utc_now();
  for (const auto& metric : request.metrics) {
    if (!is_builtin_metric(metric) && !adapters.find(metric)) {
      throw Error(ErrorCode::kUnknownMetric, "unknown metric '" + metric + "'",
                  {{"metric", metric}});
    }
    run.requested_metrics.push_back(metric);
  }
  std::sort(run.requested_metrics.begin(), run.requested_metrics.end());
  run.requested_metrics.erase(
      std::unique(run.requested_metrics.begin(), run.requested_metrics.end()),
      run.requested_metrics.end());
  run.device_hints = request.device_hints;
  run.status = RunStatus::kCreated;
  store.write([&](WriteTxn& txn) { txn.insert_run(run); });
  return run;
}

namespace {

AppendResult append_instances(WriteTxn& txn, std::string_view run_id,
                              const std::vector<RawInstance>& triples) {
  AppendResult result;
  result.first_index = static_cast<std::int64_t>(txn.instance_count(run_id));
  std::int64_t index = result.first_index;
  for (const auto& raw : triples) {
    ValidatedInstance v = validate_instance(txn, raw);
    v.instance.index = index;
    txn.insert_instance(v.instance);
    if (v.empty_prediction) result.empty_predictions.push_back(index);
    ++index;
  }
  result.count = triples.size();
  return result;
}

}  // namespace

AppendResult add_instances_manual(Store& store, std::string_view run_id,
                                  const std::vector<RawInstance>& triples) {
  store.require_run(run_id);
  if (triples.empty()) {
    return {0, static_cast<std::int64_t>(store.instance_count(run_id)), {}};
  }
  for (const auto& t : triples) {
    if (t.run_id != run_id) {
      throw Error(ErrorCode::kBadRequest, "instance batch mixes runs");
    }
  }
  return store.write([&](WriteTxn& txn) { return append_instances(txn, run_id, triples); });
}

FileIngestResult ingest_file(Store& store, std::string_view run_id,
                             std::span<const std::string> files, const ExtractionSpec& spec,
                             bool dry_run) {
  store.require_run(run_id);
  std::vector<ExtractedRecord> records = extract_records(files, spec);

  FileIngestResult result;
  result.extracted = records.size();
  for (std::size_t i = 0; i < records.size() && i < kPreviewRecords; ++i) {
    result.preview.push_back(records[i]);
  }
  if (dry_run) return result;

  std::vector<RawInstance> triples;
  triples.reserve(records.size());
  for (auto& r : records) {
    triples.push_back({std::string(run_id), std::move(r.source), std::move(r.prediction),
                       std::move(r.reference)});
  }
  if (triples.empty()) {
    result.appended.first_index = static_cast<std::int64_t>(store.instance_count(run_id));
    return result;
  }
  result.appended =
      store.write([&](WriteTxn& txn) { return append_instances(txn, run_id, triples); });
  return result;
}

std::vector<ordered_json> export_run(const Reader& store, std::string_view run_id) {
  store.require_run(run_id);
  const auto instances = store.instances(run_id);
  std::map<std::string, std::vector<ErrorAnnotation>> errors;
  for (auto& a : store.annotations_for_run(run_id)) errors[a.instance_id].push_back(std::move(a));
  std::map<std::string, std::map<std::string, double>> scores;
  for (const auto& s : store.scores_for_run(run_id)) scores[s.instance_id][s.metric] = s.value;

  std::vector<ordered_json> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) {
    ordered_json rec;
    rec["index"] = inst.index;
    rec["source"] = optional_text(inst.source);
    rec["prediction"] = inst.prediction;
    rec["reference"] = optional_text(inst.reference);
    rec["score"] = nullptr;
    ordered_json score_map = ordered_json::object();
    for (const auto& [metric, value] : scores[inst.id]) score_map[metric] = value;
    rec["scores"] = std::move(score_map);
    ordered_json list = ordered_json::array();
    for (const auto& a : errors[inst.id]) {
      ordered_json e;
      e["type"] = a.error_type;
      e["severity"] = severity_name(a.severity);
      e["span"] = {a.span.start, a.span.end};
      e["explanation"] = a.explanation;
      e["origin"] = a.origin;
      list.push_back(std::move(e));
    }
    rec["errors"] = std::move(list);
    out.push_back(std::move(rec));
  }
  return out;
}

std::string export_run_ndjson(const Reader& store, std::string_view run_id) {
  std::string out;
  for (const auto& rec : export_run(store, run_id)) {
    out += rec.dump();
    out += '\n';
  }
  return out;
}

ImportResult import_run(Store& store, std::string_view run_id, std::string_view stream) {
  const Run run = store.require_run(run_id);
  std::vector<RawInstance> triples;
  std::vector<AdapterRecord> records;
  const auto lines = split_lines(stream);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t") == std::string_view::npos) continue;
    const std::size_t line_no = i + 1;
    json obj;
    try {
      obj = json::parse(lines[i]);
    } catch (const json::parse_error&) {
      throw Error(ErrorCode::kMalformedRecord, "line " + std::to_string(line_no) + " is not JSON",
                  {{"line", line_no}});
    }
    try {
      triples.push_back(raw_instance_from_json(std::string(run_id), obj));
    } catch (Error& e) {
      json details = e.details();
      details["line"] = line_no;
      throw Error(e.code(), e.what(), std::move(details));
    }
    AdapterRecord rec = parse_adapter_record(lines[i], line_no);
    records.push_back(std::move(rec));
  }

  return store.write([&](WriteTxn& txn) {
    ImportResult result;
    AppendResult appended = append_instances(txn, run_id, triples);
    result.instances = appended.count;
    for (std::size_t k = 0; k < records.size(); ++k) {
      records[k].index = appended.first_index + static_cast<std::int64_t>(k);
      records[k].id.reset();
    }
    // Export records always carry "scores", so no score is derived here.
    result.annotations = apply_adapter_records(txn, run, records, "import");
    return result;
  });
}

}  // namespace mtwb
