#include "cli.hpp"

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mtwb/api.hpp"
#include "mtwb/error.hpp"
#include "mtwb/server.hpp"
#include "mtwb/store.hpp"
#include "table.hpp"

namespace mtwb::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kBadRequest, "cannot read " + path, {{"file", path}});
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kBadRequest, path + " is not valid JSON",
                {{"file", path}, {"position", e.byte}});
  }
}

// Instances file: a JSON array, {"instances": [...]}, or one object per line.
json parse_instances_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
  }
  json items = json::array();
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      items.push_back(json::parse(line));
    } catch (const json::parse_error&) {
      throw Error(ErrorCode::kMalformedRecord, path + ": line is not valid JSON",
                  {{"file", path}, {"line", number}});
    }
  }
  return items;
}

std::string text_or_dash(const json& value) {
  if (value.is_null()) return "-";
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_float()) return fixed(value.get<double>());
  return value.dump();
}

std::string join(const json& list, const char* sep = ",") {
  std::string out;
  for (const auto& item : list) {
    if (!out.empty()) out += sep;
    out += text_or_dash(item);
  }
  return out;
}

void print_runs(std::ostream& out, const json& runs) {
  Table t({"ID", "NAME", "LANG", "STATUS", "METRICS", "BLEU"});
  for (const auto& r : runs) {
    t.add({r["id"], r["name"],
           r["lang"]["source"].get<std::string>() + "-" + r["lang"]["target"].get<std::string>(),
           r["status"], join(r["requested_metrics"]),
           r["bleu"].is_null() ? "-" : fixed(r["bleu"]["score"].get<double>())});
  }
  t.print(out);
}

void print_groups(std::ostream& out, const json& doc) {
  out << doc["total"].get<std::size_t>() << " groups (page " << doc["page"].get<std::size_t>()
      << ", " << doc["page_size"].get<std::size_t>() << " per page)\n";
  for (const auto& g : doc["groups"]) {
    out << "\n[" << g["group_key"].get<std::string>() << "] "
        << clip(g["source"].get<std::string>(), 70) << "\n";
    out << "  ref: " << clip(g["reference"].get<std::string>(), 70) << "\n";
    Table t({"RUN", "SCORES", "ERRORS", "PREDICTION"});
    for (const auto& m : g["members"]) {
      std::string scores;
      for (const auto& [metric, value] : m["scores"].items()) {
        if (!scores.empty()) scores += " ";
        scores += metric + "=" + fixed(value.get<double>());
      }
      t.add({m["run_name"], scores.empty() ? "-" : scores,
             std::to_string(m["annotations"].size()),
             clip(m["instance"]["prediction"].get<std::string>(), 60)});
    }
    std::ostringstream block;
    t.print(block);
    std::istringstream rows(block.str());
    for (std::string row; std::getline(rows, row);) out << "  " << row << "\n";
  }
}

void print_stats(std::ostream& out, const json& stats) {
  out << stats["run_name"].get<std::string>() << " (" << stats["run_id"].get<std::string>()
      << "): " << stats["instance_count"] << " instances, " << stats["annotation_count"]
      << " annotations\n";
  out << "  BLEU: "
      << (stats["corpus_bleu"].is_null() ? "not evaluated"
                                         : fixed(stats["corpus_bleu"]["score"].get<double>()))
      << "\n";
  if (!stats["mean_scores"].empty()) {
    Table t({"METRIC", "MEAN", "N", "RANGE"});
    for (const auto& [metric, mean] : stats["mean_scores"].items()) {
      const auto& h = stats["histograms"][metric];
      t.add({metric, fixed(mean.get<double>(), 4), text_or_dash(stats["scored_instances"][metric]),
             "[" + fixed(h["lo"].get<double>()) + ", " + fixed(h["hi"].get<double>()) + "]"});
    }
    std::ostringstream block;
    t.print(block);
    std::istringstream rows(block.str());
    for (std::string row; std::getline(rows, row);) out << "  " << row << "\n";
  }
  if (!stats["error_type_counts"].empty()) {
    Table t({"COUNT", "ERROR TYPE"});
    for (const auto& c : stats["error_type_counts"]) {
      t.add({text_or_dash(c["count"]), clip(c["error_type"].get<std::string>(), 80)});
    }
    std::ostringstream block;
    t.print(block);
    std::istringstream rows(block.str());
    for (std::string row; std::getline(rows, row);) out << "  " << row << "\n";
  }
}

void print_job(std::ostream& out, const json& job) {
  out << "job " << job["id"].get<std::string>() << ": " << job["state"].get<std::string>() << " ("
      << job["progress"]["completed"] << "/" << job["progress"]["total"] << ")\n";
  if (job.contains("diagnostics") && job["diagnostics"].is_string() &&
      !job["diagnostics"].get<std::string>().empty()) {
    out << job["diagnostics"].get<std::string>() << "\n";
  }
}

void print_kv(std::ostream& out, const json& doc) {
  for (const auto& [key, value] : doc.items()) {
    out << key << ": " << (value.is_structured() ? value.dump() : text_or_dash(value)) << "\n";
  }
}

struct Options {
  std::string db = "canvas.db";
  std::string adapters;
  bool json_out = false;
};

int serve(Api& api, const std::string& host, int port, const std::string& static_dir,
          std::ostream& out) {
  ServerOptions opts;
  opts.host = host;
  opts.port = port;
  if (!static_dir.empty()) opts.static_dir = static_dir;
  Server server(api, opts);
  const int bound = server.start();
  out << "listening on http://" << host << ":" << bound << std::endl;

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  int sig = 0;
  sigwait(&signals, &sig);
  server.stop();
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Machine translation evaluation workbench"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Options opt;
  app.add_option("--db", opt.db, "Store file (CANVAS_DB overrides)");
  app.add_option("--adapters", opt.adapters, "Adapter table (JSON)");
  app.add_flag("--json", opt.json_out, "Structured output");

  std::string run_id, name, source_lang, target_lang, metrics, devices, runs, query, spec_path,
      file, origin, job_id, session, group, ordering, host = "127.0.0.1", static_dir;
  std::optional<std::string> source, prediction, reference;
  std::vector<std::string> files;
  int port = 8787;
  long long page = 1, page_size = kDefaultPageSize, bins = 20;
  bool dry_run = false, no_wait = false, consent = false, no_retain = false;

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--port", port, "Port, 0 for any free port");
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--static", static_dir, "UI bundle directory served at /");
  serve_cmd->add_flag("--no-retain-feedback", no_retain, "Acknowledge rankings without storing");

  auto* health_cmd = app.add_subcommand("health", "Version and schema version");

  auto* create_cmd = app.add_subcommand("create-run", "Create a run");
  create_cmd->add_option("--name", name)->required();
  create_cmd->add_option("--source-lang", source_lang)->required();
  create_cmd->add_option("--target-lang", target_lang)->required();
  create_cmd->add_option("--metrics", metrics, "Comma-separated metric names");
  create_cmd->add_option("--devices", devices, "Comma-separated device hints");

  auto* runs_cmd = app.add_subcommand("runs", "List runs");

  auto* add_cmd = app.add_subcommand("add", "Append instances manually");
  add_cmd->add_option("run", run_id)->required();
  add_cmd->add_option("--file", file, "JSON array or JSONL of {source, prediction, reference}");
  add_cmd->add_option("--source", source);
  add_cmd->add_option("--prediction", prediction);
  add_cmd->add_option("--reference", reference);

  auto* ingest_cmd = app.add_subcommand("ingest", "Extract instances from text files");
  ingest_cmd->add_option("run", run_id)->required();
  ingest_cmd->add_option("files", files)->required();
  ingest_cmd->add_option("--spec", spec_path, "Extraction spec (JSON)")->required();
  ingest_cmd->add_flag("--dry-run", dry_run, "Preview without storing");

  auto* annotate_cmd = app.add_subcommand("annotate", "Ingest an adapter-format record file");
  annotate_cmd->add_option("run", run_id)->required();
  annotate_cmd->add_option("file", file)->required();
  annotate_cmd->add_option("--origin", origin, "Metric name the records come from")->required();

  auto* import_cmd = app.add_subcommand("import", "Load an export stream into a run");
  import_cmd->add_option("run", run_id)->required();
  import_cmd->add_option("file", file)->required();

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Run metrics on a run");
  evaluate_cmd->add_option("run", run_id)->required();
  evaluate_cmd->add_option("--metrics", metrics, "Defaults to the run's requested metrics");
  evaluate_cmd->add_option("--devices", devices);
  evaluate_cmd->add_flag("--no-wait", no_wait, "Return the queued job immediately");

  auto* job_cmd = app.add_subcommand("job", "Show an evaluation job");
  job_cmd->add_option("id", job_id)->required();

  auto* search_cmd = app.add_subcommand("search", "Query instances across runs");
  search_cmd->add_option("--runs", runs)->required();
  search_cmd->add_option("--query", query);
  search_cmd->add_option("--page", page);
  search_cmd->add_option("--page-size", page_size);

  auto* summary_cmd = app.add_subcommand("summary", "Dashboard statistics for one run");
  summary_cmd->add_option("run", run_id)->required();
  summary_cmd->add_option("--bins", bins);

  auto* stats_cmd = app.add_subcommand("stats", "Side-by-side statistics");
  stats_cmd->add_option("--runs", runs)->required();
  stats_cmd->add_option("--bins", bins);

  auto* groups_cmd = app.add_subcommand("groups", "Instances grouped by source and reference");
  groups_cmd->add_option("--runs", runs)->required();
  groups_cmd->add_option("--page", page);
  groups_cmd->add_option("--page-size", page_size);

  auto* rank_cmd = app.add_subcommand("rank", "Submit a ranking for a group");
  rank_cmd->add_option("--group", group)->required();
  rank_cmd->add_option("--ordering", ordering, "Run ids, best first")->required();
  rank_cmd->add_option("--session", session)->required();
  rank_cmd->add_flag("--consent", consent, "Allow the ranking to be stored");
  rank_cmd->add_option("--runs", runs, "Run selection the group belongs to");

  auto* revoke_cmd = app.add_subcommand("revoke", "Delete all feedback of a session");
  revoke_cmd->add_option("session", session)->required();

  auto* export_feedback_cmd = app.add_subcommand("export-feedback", "Consented rankings");
  auto* export_cmd = app.add_subcommand("export", "Export a run as records");
  export_cmd->add_option("run", run_id)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (const char* env = std::getenv("CANVAS_DB"); env && *env) opt.db = env;

  auto emit = [&](const json& doc, auto&& human) {
    if (opt.json_out) {
      out << doc.dump() << "\n";
    } else {
      human(doc);
    }
  };

  try {
    if (serve_cmd->parsed()) {
      // Block before any thread exists so sigwait() receives them.
      sigset_t signals;
      sigemptyset(&signals);
      sigaddset(&signals, SIGINT);
      sigaddset(&signals, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &signals, nullptr);
    }

    Store store(opt.db);
    AdapterTable adapters = opt.adapters.empty() ? AdapterTable() : AdapterTable::load(opt.adapters);
    ApiOptions api_options;
    api_options.feedback.retain = !no_retain;
    Api api(store, std::move(adapters), api_options);

    if (serve_cmd->parsed()) {
      api.evaluator().recover_interrupted();
      return serve(api, host, port, static_dir, out);
    }
    if (health_cmd->parsed()) {
      emit(api.health(), [&](const json& d) { print_kv(out, d); });
    } else if (create_cmd->parsed()) {
      const json body = {{"name", name},
                         {"source_lang", source_lang},
                         {"target_lang", target_lang},
                         {"metrics", split_csv(metrics)},
                         {"device_hints", split_csv(devices)}};
      emit(api.create_run(body), [&](const json& d) { print_runs(out, json::array({d})); });
    } else if (runs_cmd->parsed()) {
      emit(api.list_runs(), [&](const json& d) { print_runs(out, d["runs"]); });
    } else if (add_cmd->parsed()) {
      json items = json::array();
      if (!file.empty()) items = parse_instances_file(file);
      if (prediction) {
        json one = {{"prediction", *prediction}};
        if (source) one["source"] = *source;
        if (reference) one["reference"] = *reference;
        if (items.is_object()) {
          throw Error(ErrorCode::kBadRequest, "--prediction cannot be combined with an object file",
                      {{"field", "prediction"}});
        }
        items.push_back(one);
      }
      emit(api.add_instances(run_id, items), [&](const json& d) {
        out << "added " << d["count"] << " instances starting at index " << d["first_index"]
            << "\n";
        if (!d["empty_predictions"].empty()) {
          out << "warning: empty predictions at " << join(d["empty_predictions"], ", ") << "\n";
        }
      });
    } else if (ingest_cmd->parsed()) {
      std::vector<std::string> contents;
      for (const auto& f : files) contents.push_back(read_file(f));
      emit(api.ingest(run_id, parse_json_file(spec_path), contents, dry_run), [&](const json& d) {
        if (dry_run) {
          out << d["extracted"] << " records would be added; first records:\n";
        } else {
          out << "added " << d["appended"]["count"] << " instances starting at index "
              << d["appended"]["first_index"] << "\n";
        }
        Table t({"LINE", "SOURCE", "PREDICTION", "REFERENCE"});
        for (const auto& r : d["preview"]) {
          t.add({text_or_dash(r["line"]), clip(text_or_dash(r["source"]), 30),
                 clip(text_or_dash(r["prediction"]), 30), clip(text_or_dash(r["reference"]), 30)});
        }
        if (dry_run) t.print(out);
      });
    } else if (annotate_cmd->parsed()) {
      emit(api.upload_annotations(run_id, read_file(file), origin),
           [&](const json& d) { print_kv(out, d); });
    } else if (import_cmd->parsed()) {
      emit(api.import_run(run_id, read_file(file)), [&](const json& d) { print_kv(out, d); });
    } else if (evaluate_cmd->parsed()) {
      json job = api.evaluate(run_id, {{"metrics", split_csv(metrics)},
                                       {"device_hints", split_csv(devices)}});
      if (!no_wait) job = api.wait_job(job["id"].get<std::string>());
      emit(job, [&](const json& d) { print_job(out, d); });
      if (job["state"] == "failed") return 1;
    } else if (job_cmd->parsed()) {
      emit(api.job(job_id), [&](const json& d) { print_job(out, d); });
    } else if (search_cmd->parsed()) {
      const json body = {
          {"run_ids", split_csv(runs)}, {"query", query}, {"page", page}, {"page_size", page_size}};
      emit(api.search(body), [&](const json& d) {
        print_groups(out, d);
        out << "\n" << d["matched_error_ids"].size() << " matched errors\n";
      });
    } else if (summary_cmd->parsed()) {
      if (bins < 1) {
        throw Error(ErrorCode::kInvalidBinCount, "bins must be at least 1", {{"bin_count", bins}});
      }
      emit(api.summary(run_id, static_cast<std::size_t>(bins)),
           [&](const json& d) { print_stats(out, d); });
    } else if (stats_cmd->parsed()) {
      emit(api.compare({{"run_ids", split_csv(runs)}, {"bin_count", bins}}), [&](const json& d) {
        bool first = true;
        for (const auto& s : d["runs"]) {
          if (!first) out << "\n";
          first = false;
          print_stats(out, s);
        }
      });
    } else if (groups_cmd->parsed()) {
      emit(api.groups(split_csv(runs), PageRequest::make(page, page_size)),
           [&](const json& d) { print_groups(out, d); });
    } else if (rank_cmd->parsed()) {
      const json body = {{"group_key", group},
                         {"ordering", split_csv(ordering)},
                         {"session_id", session},
                         {"consented", consent},
                         {"run_ids", split_csv(runs)}};
      emit(api.submit_ranking(body), [&](const json& d) {
        out << (d["stored"].get<bool>() ? "stored " + d["id"].get<std::string>()
                                        : std::string("acknowledged, not stored"))
            << "\n";
      });
    } else if (revoke_cmd->parsed()) {
      emit(api.revoke_feedback(session),
           [&](const json& d) { out << "deleted " << d["deleted"] << " records\n"; });
    } else if (export_feedback_cmd->parsed()) {
      out << api.export_feedback();
    } else if (export_cmd->parsed()) {
      out << api.export_run(run_id);
    }
    return 0;
  } catch (const Error& e) {
    if (opt.json_out) {
      err << e.to_json().dump() << "\n";
    } else {
      err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
      if (!e.details().empty()) err << "  " << e.details().dump() << "\n";
    }
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mtwb::cli
