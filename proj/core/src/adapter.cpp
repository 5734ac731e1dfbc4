#include "mtwb/adapter.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mtwb/annotate.hpp"
#include "mtwb/error.hpp"
#include "mtwb/json.hpp"
#include "mtwb/validation.hpp"
#include "process.hpp"

namespace mtwb {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::kMalformedRecord,
              "malformed record on line " + std::to_string(line) + ": " + why,
              {{"line", line}});
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

AdapterError parse_error_entry(const json& e, std::size_t line) {
  if (!e.is_object()) malformed(line, "error entries must be objects");
  AdapterError out;
  auto type = e.find("type");
  if (type == e.end() || !type->is_string()) malformed(line, "error needs a string 'type'");
  out.error_type = type->get<std::string>();
  auto severity = e.find("severity");
  if (severity == e.end() || !severity->is_string()) {
    malformed(line, "error needs a string 'severity'");
  }
  out.severity = severity->get<std::string>();
  auto explanation = e.find("explanation");
  if (explanation != e.end() && !explanation->is_null()) {
    if (!explanation->is_string()) malformed(line, "'explanation' must be a string");
    out.explanation = explanation->get<std::string>();
  }
  auto origin = e.find("origin");
  if (origin != e.end() && !origin->is_null()) {
    if (!origin->is_string()) malformed(line, "'origin' must be a string");
    out.origin = origin->get<std::string>();
  }
  auto span = e.find("span");
  if (span != e.end() && !span->is_null()) {
    if (!span->is_array() || span->size() != 2 || !(*span)[0].is_number_integer() ||
        !(*span)[1].is_number_integer()) {
      malformed(line, "'span' must be [start, end] or null");
    }
    const auto start = (*span)[0].get<std::int64_t>();
    const auto end = (*span)[1].get<std::int64_t>();
    if (start < 0 || end < 0 || start > end) {
      throw Error(ErrorCode::kInvalidSpan,
                  "span [" + std::to_string(start) + ", " + std::to_string(end) +
                      "] on line " + std::to_string(line) + " is invalid",
                  {{"line", line}, {"span", {start, end}}});
    }
    out.span = Span{static_cast<std::size_t>(start), static_cast<std::size_t>(end)};
  }
  return out;
}

}  // namespace

AdapterRecord parse_adapter_record(std::string_view line_text, std::size_t line) {
  json j;
  try {
    j = json::parse(line_text);
  } catch (const json::parse_error& e) {
    malformed(line, "not valid JSON");
  }
  if (!j.is_object()) malformed(line, "record must be an object");

  AdapterRecord rec;
  rec.line = line;
  if (auto it = j.find("index"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
      malformed(line, "'index' must be a non-negative integer");
    }
    rec.index = it->get<std::int64_t>();
  }
  if (auto it = j.find("id"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) malformed(line, "'id' must be a string");
    rec.id = it->get<std::string>();
  }
  if (!rec.index && !rec.id) malformed(line, "record needs an 'index' or 'id'");

  if (auto it = j.find("score"); it != j.end() && !it->is_null()) {
    if (!it->is_number()) malformed(line, "'score' must be a number or null");
    rec.score = it->get<double>();
  }
  if (auto it = j.find("scores"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) malformed(line, "'scores' must be an object");
    std::map<std::string, double> scores;
    for (const auto& [metric, value] : it->items()) {
      if (!value.is_number()) malformed(line, "score for '" + metric + "' must be a number");
      scores[metric] = value.get<double>();
    }
    rec.scores = std::move(scores);
  }
  if (auto it = j.find("errors"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) malformed(line, "'errors' must be an array");
    std::vector<AdapterError> errors;
    for (const auto& e : *it) errors.push_back(parse_error_entry(e, line));
    rec.errors = std::move(errors);
  }
  if (!rec.score && !rec.scores && !rec.errors) {
    malformed(line, "record carries neither a score nor errors");
  }
  return rec;
}

AdapterStream parse_adapter_stream(std::string_view text) {
  AdapterStream stream;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view row =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line;
    if (line == 1 && row.substr(0, 3) == "\xEF\xBB\xBF") row.remove_prefix(3);
    if (is_blank(row)) {
      ++stream.blank_lines;
      continue;
    }
    stream.records.push_back(parse_adapter_record(row, line));
  }
  return stream;
}

json adapter_record_to_json(const AdapterRecord& record) {
  json j = json::object();
  if (record.index) j["index"] = *record.index;
  if (record.id) j["id"] = *record.id;
  j["score"] = record.score ? json(*record.score) : json(nullptr);
  if (record.scores) j["scores"] = *record.scores;
  if (record.errors) {
    json errors = json::array();
    for (const auto& e : *record.errors) {
      json entry = {{"type", e.error_type},
                    {"severity", e.severity},
                    {"span", e.span ? json(*e.span) : json(nullptr)},
                    {"explanation", e.explanation}};
      if (e.origin) entry["origin"] = *e.origin;
      errors.push_back(std::move(entry));
    }
    j["errors"] = std::move(errors);
  }
  return j;
}

IngestCounts apply_adapter_records(WriteTxn& txn, const Run& run,
                                   const std::vector<AdapterRecord>& records,
                                   std::string_view origin) {
  IngestCounts counts;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const AdapterRecord& rec = records[k];
    std::optional<Instance> instance;
    if (rec.index) {
      instance = txn.find_instance_at(run.id, *rec.index);
    } else if (rec.id) {
      instance = txn.find_instance(*rec.id);
      if (instance && instance->run_id != run.id) instance.reset();
    }
    if (!instance) {
      json details = {{"record", k}, {"line", rec.line}};
      if (rec.index) details["index"] = *rec.index;
      if (rec.id) details["id"] = *rec.id;
      throw Error(ErrorCode::kUnknownInstance,
                  "record " + std::to_string(k) + " (line " + std::to_string(rec.line) +
                      ") does not match an instance of run '" + run.id + "'",
                  std::move(details));
    }

    std::vector<ErrorAnnotation> own_errors;
    if (rec.errors) {
      std::set<std::string> cleared{std::string(origin)};
      for (const auto& e : *rec.errors) {
        if (e.origin) cleared.insert(*e.origin);
      }
      for (const auto& o : cleared) txn.delete_annotations(instance->id, o);
      for (const auto& e : *rec.errors) {
        RawAnnotation raw{instance->id, e.error_type, e.severity, e.span, e.explanation,
                          e.origin.value_or(std::string(origin))};
        ErrorAnnotation a;
        try {
          a = validate_annotation(raw, *instance);
        } catch (Error& err) {
          json details = err.details();
          details["line"] = rec.line;
          details["record"] = k;
          throw Error(err.code(), err.what(), std::move(details));
        }
        txn.insert_annotation(a);
        ++counts.errors_added;
        if (a.origin == origin) own_errors.push_back(std::move(a));
      }
    }

    if (rec.score) {
      txn.upsert_score({instance->id, std::string(origin), *rec.score});
      ++counts.scores_added;
    }
    if (rec.scores) {
      for (const auto& [metric, value] : *rec.scores) {
        txn.upsert_score({instance->id, metric, value});
        ++counts.scores_added;
      }
    }
    if (!rec.score && !rec.scores && rec.errors) {
      txn.upsert_score({instance->id, std::string(origin), annotation_score(own_errors)});
      ++counts.scores_added;
    }
  }
  return counts;
}

IngestCounts ingest_annotations(Store& store, std::string_view run_id, std::string_view stream,
                                std::string_view origin) {
  const Run run = store.require_run(run_id);
  AdapterStream parsed = parse_adapter_stream(stream);
  IngestCounts counts = store.write(
      [&](WriteTxn& txn) { return apply_adapter_records(txn, run, parsed.records, origin); });
  counts.skipped = parsed.blank_lines;
  return counts;
}

AdapterTable AdapterTable::from_json(const json& config) {
  if (!config.is_object()) {
    throw Error(ErrorCode::kBadRequest, "adapter table must be an object of metric -> adapter");
  }
  AdapterTable table;
  for (const auto& [metric, entry] : config.items()) {
    AdapterConfig cfg;
    if (entry.is_string()) {
      cfg.command = entry.get<std::string>();
    } else if (entry.is_object() && entry.contains("command") && entry["command"].is_string()) {
      cfg.command = entry["command"].get<std::string>();
      if (auto env = entry.find("env"); env != entry.end()) {
        if (!env->is_object()) {
          throw Error(ErrorCode::kBadRequest, "adapter '" + metric + "' env must be an object");
        }
        for (const auto& [k, v] : env->items()) {
          cfg.env[k] = v.is_string() ? v.get<std::string>() : v.dump();
        }
      }
    } else {
      throw Error(ErrorCode::kBadRequest, "adapter '" + metric + "' needs a command");
    }
    table.add(metric, std::move(cfg));
  }
  return table;
}

AdapterTable AdapterTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kBadRequest, "cannot read adapter config '" + path.string() + "'");
  }
  try {
    json config = json::parse(in);
    if (config.contains("adapters")) config = config["adapters"];
    return from_json(config);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kBadRequest,
                "adapter config '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void AdapterTable::add(std::string metric, AdapterConfig config) {
  adapters_[std::move(metric)] = std::move(config);
}

const AdapterConfig* AdapterTable::find(std::string_view metric) const {
  auto it = adapters_.find(metric);
  return it == adapters_.end() ? nullptr : &it->second;
}

std::vector<std::string> AdapterTable::names() const {
  std::vector<std::string> out;
  for (const auto& [name, cfg] : adapters_) out.push_back(name);
  return out;
}

std::string devices_string(const std::vector<std::string>& device_hints) {
  std::string out;
  for (std::size_t i = 0; i < device_hints.size(); ++i) {
    if (i) out += ',';
    out += device_hints[i];
  }
  return out;
}

namespace {

std::string substitute(std::string text, std::string_view key, std::string_view value) {
  std::size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
  return text;
}

}  // namespace

std::vector<AdapterRecord> run_adapter(const Reader& store, std::string_view run_id,
                                       const AdapterTable& adapters, std::string_view metric,
                                       const std::vector<std::string>& device_hints) {
  const AdapterConfig* cfg = adapters.find(metric);
  if (!cfg) {
    throw Error(ErrorCode::kAdapterMissing,
                "no adapter configured for metric '" + std::string(metric) + "'",
                {{"metric", std::string(metric)}});
  }
  const Run run = store.require_run(run_id);

  std::string input;
  for (const Instance& inst : store.instances(run.id)) {
    json line = {{"index", inst.index},
                 {"id", inst.id},
                 {"source", optional_text(inst.source)},
                 {"prediction", inst.prediction},
                 {"reference", optional_text(inst.reference)},
                 {"source_lang", run.lang.source},
                 {"target_lang", run.lang.target}};
    input += line.dump();
    input += '\n';
  }

  const std::string devices = devices_string(device_hints);
  std::string command = substitute(cfg->command, "{devices}", devices);
  command = substitute(command, "{metric}", metric);
  std::map<std::string, std::string> env = cfg->env;
  env["CANVAS_DEVICES"] = devices;
  env["CANVAS_METRIC"] = std::string(metric);

  detail::ProcessResult result;
  try {
    result = detail::run_shell(command, env, input);
  } catch (const std::system_error& e) {
    throw Error(ErrorCode::kAdapterFailed,
                "adapter for '" + std::string(metric) + "' could not start: " + e.what(),
                {{"metric", std::string(metric)}});
  }
  if (result.exit_code != 0) {
    throw Error(ErrorCode::kAdapterFailed,
                "adapter for '" + std::string(metric) + "' exited with status " +
                    std::to_string(result.exit_code) +
                    (result.err.empty() ? std::string() : ": " + result.err),
                {{"metric", std::string(metric)},
                 {"exit_code", result.exit_code},
                 {"stderr", result.err}});
  }
  try {
    return parse_adapter_stream(result.out).records;
  } catch (const Error& e) {
    throw Error(ErrorCode::kAdapterFailed,
                "adapter for '" + std::string(metric) + "' produced bad output: " + e.what(),
                {{"metric", std::string(metric)}, {"cause", e.to_json()}});
  }
}

}  // namespace mtwb
