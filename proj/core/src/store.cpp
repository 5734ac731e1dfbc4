#include "mtwb/store.hpp"

#include <sqlite3.h>

#include <nlohmann/json.hpp>

#include "mtwb/error.hpp"
#include "mtwb/json.hpp"

namespace mtwb {

using nlohmann::json;

namespace {

[[noreturn]] void fail(sqlite3* db, std::string_view what) {
  throw Error(ErrorCode::kStorageError,
              std::string(what) + ": " + (db ? sqlite3_errmsg(db) : "no connection"));
}

void exec(sqlite3* db, const char* sql) {
  char* msg = nullptr;
  if (sqlite3_exec(db, sql, nullptr, nullptr, &msg) != SQLITE_OK) {
    std::string text = msg ? msg : "unknown error";
    sqlite3_free(msg);
    throw Error(ErrorCode::kStorageError, text);
  }
}

// Prepared statement with positional binding; columns read by index.
class Stmt {
 public:
  Stmt(sqlite3* db, std::string_view sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql.data(), static_cast<int>(sql.size()), &stmt_, nullptr) !=
        SQLITE_OK) {
      fail(db, "prepare");
    }
  }
  ~Stmt() { sqlite3_finalize(stmt_); }
  Stmt(const Stmt&) = delete;
  Stmt& operator=(const Stmt&) = delete;

  Stmt& bind(std::string_view v) {
    check(sqlite3_bind_text(stmt_, ++arg_, v.data(), static_cast<int>(v.size()),
                            SQLITE_TRANSIENT));
    return *this;
  }
  Stmt& bind(const std::string& v) { return bind(std::string_view(v)); }
  Stmt& bind(const char* v) { return bind(std::string_view(v)); }
  Stmt& bind(const std::optional<std::string>& v) {
    if (!v) {
      check(sqlite3_bind_null(stmt_, ++arg_));
      return *this;
    }
    return bind(std::string_view(*v));
  }
  Stmt& bind(std::int64_t v) {
    check(sqlite3_bind_int64(stmt_, ++arg_, v));
    return *this;
  }
  Stmt& bind(std::size_t v) { return bind(static_cast<std::int64_t>(v)); }
  Stmt& bind(int v) { return bind(static_cast<std::int64_t>(v)); }
  Stmt& bind(bool v) { return bind(static_cast<std::int64_t>(v ? 1 : 0)); }
  Stmt& bind(double v) {
    check(sqlite3_bind_double(stmt_, ++arg_, v));
    return *this;
  }

  // True while a row is available.
  bool step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    fail(db_, "step");
  }

  void run() {
    while (step()) {
    }
  }

  std::string text(int col) const {
    const auto* p = sqlite3_column_text(stmt_, col);
    return p ? std::string(reinterpret_cast<const char*>(p),
                           static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col)))
             : std::string();
  }
  std::optional<std::string> opt_text(int col) const {
    if (sqlite3_column_type(stmt_, col) == SQLITE_NULL) return std::nullopt;
    return text(col);
  }
  std::int64_t int64(int col) const { return sqlite3_column_int64(stmt_, col); }
  double real(int col) const { return sqlite3_column_double(stmt_, col); }

 private:
  void check(int rc) {
    if (rc != SQLITE_OK) fail(db_, "bind");
  }

  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
  int arg_ = 0;
};

constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS meta (key TEXT PRIMARY KEY, value TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS runs (
  seq INTEGER PRIMARY KEY AUTOINCREMENT,
  id TEXT NOT NULL UNIQUE,
  name TEXT NOT NULL,
  source_lang TEXT NOT NULL,
  target_lang TEXT NOT NULL,
  created_at TEXT NOT NULL,
  requested_metrics TEXT NOT NULL,
  device_hints TEXT NOT NULL,
  status TEXT NOT NULL,
  bleu TEXT
);
CREATE TABLE IF NOT EXISTS instances (
  id TEXT PRIMARY KEY,
  run_id TEXT NOT NULL REFERENCES runs(id),
  idx INTEGER NOT NULL,
  source TEXT,
  prediction TEXT NOT NULL,
  reference TEXT,
  UNIQUE (run_id, idx)
);
CREATE TABLE IF NOT EXISTS annotations (
  seq INTEGER PRIMARY KEY AUTOINCREMENT,
  id TEXT NOT NULL UNIQUE,
  instance_id TEXT NOT NULL REFERENCES instances(id),
  run_id TEXT NOT NULL,
  error_type TEXT NOT NULL,
  severity TEXT NOT NULL,
  span_start INTEGER NOT NULL,
  span_end INTEGER NOT NULL,
  explanation TEXT NOT NULL,
  origin TEXT NOT NULL
);
CREATE INDEX IF NOT EXISTS annotations_by_instance ON annotations (instance_id, origin);
CREATE INDEX IF NOT EXISTS annotations_by_run ON annotations (run_id, origin);
CREATE TABLE IF NOT EXISTS scores (
  instance_id TEXT NOT NULL REFERENCES instances(id),
  run_id TEXT NOT NULL,
  metric TEXT NOT NULL,
  value REAL NOT NULL,
  PRIMARY KEY (instance_id, metric)
);
CREATE INDEX IF NOT EXISTS scores_by_run ON scores (run_id, metric);
CREATE TABLE IF NOT EXISTS feedback (
  seq INTEGER PRIMARY KEY AUTOINCREMENT,
  id TEXT NOT NULL UNIQUE,
  group_key TEXT NOT NULL,
  ordering TEXT NOT NULL,
  session_id TEXT NOT NULL,
  consented INTEGER NOT NULL,
  created_at TEXT NOT NULL,
  source TEXT NOT NULL,
  reference TEXT NOT NULL,
  outputs TEXT NOT NULL
);
CREATE INDEX IF NOT EXISTS feedback_by_session ON feedback (session_id);
CREATE TABLE IF NOT EXISTS jobs (
  seq INTEGER PRIMARY KEY AUTOINCREMENT,
  id TEXT NOT NULL UNIQUE,
  run_id TEXT NOT NULL,
  metrics TEXT NOT NULL,
  device_hints TEXT NOT NULL,
  state TEXT NOT NULL,
  completed INTEGER NOT NULL,
  total INTEGER NOT NULL,
  diagnostics TEXT NOT NULL,
  created_at TEXT NOT NULL
);
)sql";

constexpr std::string_view kRunCols =
    "id, name, source_lang, target_lang, created_at, requested_metrics, device_hints, "
    "status, bleu";
constexpr std::string_view kInstanceCols = "id, run_id, idx, source, prediction, reference";
constexpr std::string_view kJobCols =
    "id, run_id, metrics, device_hints, state, completed, total, diagnostics, created_at";

Run read_run(const Stmt& s) {
  Run r;
  r.id = s.text(0);
  r.name = s.text(1);
  r.lang = {s.text(2), s.text(3)};
  r.created_at = s.text(4);
  r.requested_metrics = json::parse(s.text(5)).get<std::vector<std::string>>();
  r.device_hints = json::parse(s.text(6)).get<std::vector<std::string>>();
  r.status = parse_status(s.text(7));
  if (auto bleu = s.opt_text(8)) r.bleu = json::parse(*bleu).get<BleuReport>();
  return r;
}

Instance read_instance(const Stmt& s) {
  return {s.text(0), s.text(1), s.int64(2), s.opt_text(3), s.text(4), s.opt_text(5)};
}

EvaluationJob read_job(const Stmt& s) {
  EvaluationJob job;
  job.id = s.text(0);
  job.run_id = s.text(1);
  job.metrics = json::parse(s.text(2)).get<std::vector<std::string>>();
  job.device_hints = json::parse(s.text(3)).get<std::vector<std::string>>();
  job.state = parse_job_state(s.text(4));
  job.completed = static_cast<std::size_t>(s.int64(5));
  job.total = static_cast<std::size_t>(s.int64(6));
  job.diagnostics = s.text(7);
  job.created_at = s.text(8);
  return job;
}

std::string sql(std::string_view a, std::string_view b, std::string_view c = {}) {
  std::string out(a);
  out += b;
  out += c;
  return out;
}

// Query bodies shared by the pooled read path and write transactions.
namespace q {

std::optional<Run> find_run(sqlite3* db, std::string_view id) {
  Stmt s(db, sql("SELECT ", kRunCols, " FROM runs WHERE id = ?"));
  s.bind(id);
  if (!s.step()) return std::nullopt;
  return read_run(s);
}

std::vector<Run> list_runs(sqlite3* db) {
  Stmt s(db, sql("SELECT ", kRunCols, " FROM runs ORDER BY seq"));
  std::vector<Run> out;
  while (s.step()) out.push_back(read_run(s));
  return out;
}

std::optional<Instance> find_instance(sqlite3* db, std::string_view id) {
  Stmt s(db, sql("SELECT ", kInstanceCols, " FROM instances WHERE id = ?"));
  s.bind(id);
  if (!s.step()) return std::nullopt;
  return read_instance(s);
}

std::optional<Instance> find_instance_at(sqlite3* db, std::string_view run_id,
                                         std::int64_t index) {
  Stmt s(db, sql("SELECT ", kInstanceCols, " FROM instances WHERE run_id = ? AND idx = ?"));
  s.bind(run_id).bind(index);
  if (!s.step()) return std::nullopt;
  return read_instance(s);
}

std::vector<Instance> instances(sqlite3* db, std::string_view run_id) {
  Stmt s(db, sql("SELECT ", kInstanceCols, " FROM instances WHERE run_id = ? ORDER BY idx"));
  s.bind(run_id);
  std::vector<Instance> out;
  while (s.step()) out.push_back(read_instance(s));
  return out;
}

std::size_t count(sqlite3* db, std::string_view query, std::optional<std::string_view> arg) {
  Stmt s(db, query);
  if (arg) s.bind(*arg);
  s.step();
  return static_cast<std::size_t>(s.int64(0));
}

std::size_t instance_count(sqlite3* db, std::string_view run_id) {
  return count(db, "SELECT COUNT(*) FROM instances WHERE run_id = ?", run_id);
}

std::vector<ErrorAnnotation> annotations_for_run(sqlite3* db, std::string_view run_id) {
  Stmt s(db,
         "SELECT a.id, a.instance_id, a.error_type, a.severity, a.span_start, a.span_end, "
         "a.explanation, a.origin FROM annotations a JOIN instances i ON a.instance_id = i.id "
         "WHERE a.run_id = ? ORDER BY i.idx, a.seq");
  s.bind(run_id);
  std::vector<ErrorAnnotation> out;
  while (s.step()) {
    ErrorAnnotation a;
    a.id = s.text(0);
    a.instance_id = s.text(1);
    a.error_type = s.text(2);
    a.severity = parse_severity(s.text(3));
    a.span = {static_cast<std::size_t>(s.int64(4)), static_cast<std::size_t>(s.int64(5))};
    a.explanation = s.text(6);
    a.origin = s.text(7);
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<InstanceScore> scores_for_run(sqlite3* db, std::string_view run_id) {
  Stmt s(db,
         "SELECT s.instance_id, s.metric, s.value FROM scores s JOIN instances i ON "
         "s.instance_id = i.id WHERE s.run_id = ? ORDER BY i.idx, s.metric");
  s.bind(run_id);
  std::vector<InstanceScore> out;
  while (s.step()) out.push_back({s.text(0), s.text(1), s.real(2)});
  return out;
}

std::vector<RankingFeedback> feedback(sqlite3* db) {
  Stmt s(db,
         "SELECT id, group_key, ordering, session_id, consented, created_at, source, "
         "reference, outputs FROM feedback ORDER BY seq");
  std::vector<RankingFeedback> out;
  while (s.step()) {
    RankingFeedback f;
    f.id = s.text(0);
    f.group_key = s.text(1);
    f.ordering = json::parse(s.text(2)).get<std::vector<std::string>>();
    f.session_id = s.text(3);
    f.consented = s.int64(4) != 0;
    f.created_at = s.text(5);
    f.source_text = s.text(6);
    f.reference_text = s.text(7);
    for (const auto& o : json::parse(s.text(8))) {
      f.outputs.push_back({o.at("run_id").get<std::string>(),
                           o.at("run_name").get<std::string>(),
                           o.at("prediction").get<std::string>()});
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::optional<EvaluationJob> find_job(sqlite3* db, std::string_view id) {
  Stmt s(db, sql("SELECT ", kJobCols, " FROM jobs WHERE id = ?"));
  s.bind(id);
  if (!s.step()) return std::nullopt;
  return read_job(s);
}

std::vector<EvaluationJob> jobs_in_state(sqlite3* db, JobState state) {
  Stmt s(db, sql("SELECT ", kJobCols, " FROM jobs WHERE state = ? ORDER BY seq"));
  s.bind(job_state_name(state));
  std::vector<EvaluationJob> out;
  while (s.step()) out.push_back(read_job(s));
  return out;
}

StoreCounts counts(sqlite3* db) {
  return {count(db, "SELECT COUNT(*) FROM runs", std::nullopt),
          count(db, "SELECT COUNT(*) FROM instances", std::nullopt),
          count(db, "SELECT COUNT(*) FROM annotations", std::nullopt),
          count(db, "SELECT COUNT(*) FROM scores", std::nullopt),
          count(db, "SELECT COUNT(*) FROM feedback", std::nullopt)};
}

}  // namespace q

sqlite3* open_connection(const std::filesystem::path& path) {
  sqlite3* db = nullptr;
  const int rc = sqlite3_open_v2(path.c_str(), &db,
                                 SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE |
                                     SQLITE_OPEN_FULLMUTEX,
                                 nullptr);
  if (rc != SQLITE_OK) {
    std::string msg = db ? sqlite3_errmsg(db) : "out of memory";
    sqlite3_close(db);
    throw Error(ErrorCode::kStorageUnwritable,
                "cannot open store at '" + path.string() + "': " + msg,
                {{"path", path.string()}});
  }
  sqlite3_busy_timeout(db, 10000);
  return db;
}

}  // namespace

Run Reader::require_run(std::string_view id) const {
  auto run = find_run(id);
  if (!run) {
    throw Error(ErrorCode::kUnknownRun, "unknown run '" + std::string(id) + "'",
                {{"run_id", std::string(id)}});
  }
  return std::move(*run);
}

// ---------------------------------------------------------------------------
// Snapshot

std::optional<Run> Snapshot::find_run(std::string_view id) const { return q::find_run(db_, id); }
std::vector<Run> Snapshot::list_runs() const { return q::list_runs(db_); }
std::optional<Instance> Snapshot::find_instance(std::string_view id) const {
  return q::find_instance(db_, id);
}
std::optional<Instance> Snapshot::find_instance_at(std::string_view run_id,
                                                   std::int64_t index) const {
  return q::find_instance_at(db_, run_id, index);
}
std::vector<Instance> Snapshot::instances(std::string_view run_id) const {
  return q::instances(db_, run_id);
}
std::size_t Snapshot::instance_count(std::string_view run_id) const {
  return q::instance_count(db_, run_id);
}
std::vector<ErrorAnnotation> Snapshot::annotations_for_run(std::string_view run_id) const {
  return q::annotations_for_run(db_, run_id);
}
std::vector<InstanceScore> Snapshot::scores_for_run(std::string_view run_id) const {
  return q::scores_for_run(db_, run_id);
}
std::vector<RankingFeedback> Snapshot::feedback() const { return q::feedback(db_); }
std::optional<EvaluationJob> Snapshot::find_job(std::string_view id) const {
  return q::find_job(db_, id);
}
std::vector<EvaluationJob> Snapshot::jobs_in_state(JobState state) const {
  return q::jobs_in_state(db_, state);
}
StoreCounts Snapshot::counts() const { return q::counts(db_); }

// ---------------------------------------------------------------------------
// WriteTxn

void WriteTxn::insert_run(const Run& run) {
  Stmt s(db_,
         "INSERT INTO runs (id, name, source_lang, target_lang, created_at, requested_metrics, "
         "device_hints, status, bleu) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)");
  s.bind(run.id)
      .bind(run.name)
      .bind(run.lang.source)
      .bind(run.lang.target)
      .bind(run.created_at)
      .bind(json(run.requested_metrics).dump())
      .bind(json(run.device_hints).dump())
      .bind(status_name(run.status))
      .bind(run.bleu ? std::optional<std::string>(json(*run.bleu).dump()) : std::nullopt);
  s.run();
}

void WriteTxn::set_run_status(std::string_view run_id, RunStatus status) {
  const Run run = require_run(run_id);
  if (run.status == status) return;
  if (!can_transition(run.status, status)) {
    throw Error(ErrorCode::kInvalidState,
                "run '" + run.id + "' cannot move from " + std::string(status_name(run.status)) +
                    " to " + std::string(status_name(status)),
                {{"from", status_name(run.status)}, {"to", status_name(status)}});
  }
  Stmt s(db_, "UPDATE runs SET status = ? WHERE id = ?");
  s.bind(status_name(status)).bind(run_id);
  s.run();
}

void WriteTxn::set_run_bleu(std::string_view run_id, const std::optional<BleuReport>& report) {
  Stmt s(db_, "UPDATE runs SET bleu = ? WHERE id = ?");
  s.bind(report ? std::optional<std::string>(json(*report).dump()) : std::nullopt).bind(run_id);
  s.run();
}

void WriteTxn::insert_instance(const Instance& instance) {
  Stmt s(db_,
         "INSERT INTO instances (id, run_id, idx, source, prediction, reference) "
         "VALUES (?, ?, ?, ?, ?, ?)");
  s.bind(instance.id)
      .bind(instance.run_id)
      .bind(instance.index)
      .bind(instance.source)
      .bind(instance.prediction)
      .bind(instance.reference);
  s.run();
}

void WriteTxn::upsert_score(const InstanceScore& score) {
  Stmt s(db_,
         "INSERT INTO scores (instance_id, run_id, metric, value) "
         "SELECT ?, run_id, ?, ? FROM instances WHERE id = ? "
         "ON CONFLICT (instance_id, metric) DO UPDATE SET value = excluded.value");
  s.bind(score.instance_id).bind(score.metric).bind(score.value).bind(score.instance_id);
  s.run();
}

std::size_t WriteTxn::delete_scores(std::string_view run_id, std::string_view metric) {
  Stmt s(db_, "DELETE FROM scores WHERE run_id = ? AND metric = ?");
  s.bind(run_id).bind(metric);
  s.run();
  return static_cast<std::size_t>(sqlite3_changes(db_));
}

void WriteTxn::insert_annotation(const ErrorAnnotation& a) {
  Stmt s(db_,
         "INSERT INTO annotations (id, instance_id, run_id, error_type, severity, span_start, "
         "span_end, explanation, origin) SELECT ?, ?, run_id, ?, ?, ?, ?, ?, ? FROM instances "
         "WHERE id = ?");
  s.bind(a.id)
      .bind(a.instance_id)
      .bind(a.error_type)
      .bind(severity_name(a.severity))
      .bind(a.span.start)
      .bind(a.span.end)
      .bind(a.explanation)
      .bind(a.origin)
      .bind(a.instance_id);
  s.run();
}

std::size_t WriteTxn::delete_annotations(std::string_view instance_id, std::string_view origin) {
  Stmt s(db_, "DELETE FROM annotations WHERE instance_id = ? AND origin = ?");
  s.bind(instance_id).bind(origin);
  s.run();
  return static_cast<std::size_t>(sqlite3_changes(db_));
}

std::size_t WriteTxn::delete_run_annotations(std::string_view run_id, std::string_view origin) {
  Stmt s(db_, "DELETE FROM annotations WHERE run_id = ? AND origin = ?");
  s.bind(run_id).bind(origin);
  s.run();
  return static_cast<std::size_t>(sqlite3_changes(db_));
}

void WriteTxn::insert_feedback(const RankingFeedback& f) {
  Stmt s(db_,
         "INSERT INTO feedback (id, group_key, ordering, session_id, consented, created_at, "
         "source, reference, outputs) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)");
  s.bind(f.id)
      .bind(f.group_key)
      .bind(json(f.ordering).dump())
      .bind(f.session_id)
      .bind(f.consented)
      .bind(f.created_at)
      .bind(f.source_text)
      .bind(f.reference_text)
      .bind(json(f.outputs).dump());
  s.run();
}

std::size_t WriteTxn::delete_feedback_session(std::string_view session_id) {
  Stmt s(db_, "DELETE FROM feedback WHERE session_id = ?");
  s.bind(session_id);
  s.run();
  return static_cast<std::size_t>(sqlite3_changes(db_));
}

void WriteTxn::upsert_job(const EvaluationJob& job) {
  Stmt s(db_,
         "INSERT INTO jobs (id, run_id, metrics, device_hints, state, completed, total, "
         "diagnostics, created_at) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?) "
         "ON CONFLICT (id) DO UPDATE SET state = excluded.state, completed = "
         "excluded.completed, total = excluded.total, diagnostics = excluded.diagnostics");
  s.bind(job.id)
      .bind(job.run_id)
      .bind(json(job.metrics).dump())
      .bind(json(job.device_hints).dump())
      .bind(job_state_name(job.state))
      .bind(job.completed)
      .bind(job.total)
      .bind(job.diagnostics)
      .bind(job.created_at);
  s.run();
}

// ---------------------------------------------------------------------------
// Store

Store::ReadLease::~ReadLease() {
  if (db_) store_->release(db_);
}

Store::SnapshotGuard::SnapshotGuard(sqlite3* db) : db_(db) { exec(db_, "BEGIN DEFERRED"); }

Store::SnapshotGuard::~SnapshotGuard() {
  sqlite3_exec(db_, "COMMIT", nullptr, nullptr, nullptr);
}

Store::TxnGuard::TxnGuard(sqlite3* db) : db_(db) { exec(db_, "BEGIN IMMEDIATE"); }

Store::TxnGuard::~TxnGuard() {
  if (!done_) sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
}

void Store::TxnGuard::commit() {
  exec(db_, "COMMIT");
  done_ = true;
}

Store::Store(const std::filesystem::path& path) : path_(path) {
  writer_ = open_connection(path_);
  try {
    exec(writer_, "PRAGMA journal_mode = WAL");
    exec(writer_, "PRAGMA synchronous = NORMAL");
    Stmt version(writer_, "PRAGMA user_version");
    version.step();
    const int current = static_cast<int>(version.int64(0));
    if (current > kSchemaVersion) {
      throw Error(ErrorCode::kStorageError,
                  "store schema version " + std::to_string(current) +
                      " is newer than supported version " + std::to_string(kSchemaVersion));
    }
    if (current < kSchemaVersion) {
      exec(writer_, "BEGIN IMMEDIATE");
      exec(writer_, kSchema);
      Stmt meta(writer_, "INSERT OR REPLACE INTO meta (key, value) VALUES ('schema_version', ?)");
      meta.bind(std::to_string(kSchemaVersion));
      meta.run();
      exec(writer_, ("PRAGMA user_version = " + std::to_string(kSchemaVersion)).c_str());
      exec(writer_, "COMMIT");
    }
  } catch (const Error& e) {
    const bool readonly = sqlite3_errcode(writer_) == SQLITE_READONLY ||
                          sqlite3_errcode(writer_) == SQLITE_CANTOPEN ||
                          sqlite3_errcode(writer_) == SQLITE_PERM;
    sqlite3_close(writer_);
    writer_ = nullptr;
    if (readonly) {
      throw Error(ErrorCode::kStorageUnwritable,
                  "store at '" + path_.string() + "' is not writable: " + e.what(),
                  {{"path", path_.string()}});
    }
    throw;
  }
}

Store::~Store() {
  for (sqlite3* db : pool_) sqlite3_close(db);
  if (writer_) sqlite3_close(writer_);
}

int Store::schema_version() const {
  auto db = lease();
  Stmt s(db.get(), "PRAGMA user_version");
  s.step();
  return static_cast<int>(s.int64(0));
}

Store::ReadLease Store::lease() const {
  {
    std::lock_guard lock(pool_mu_);
    if (!pool_.empty()) {
      sqlite3* db = pool_.back();
      pool_.pop_back();
      return {this, db};
    }
  }
  return {this, open_connection(path_)};
}

void Store::release(sqlite3* db) const {
  std::lock_guard lock(pool_mu_);
  pool_.push_back(db);
}

std::optional<Run> Store::find_run(std::string_view id) const {
  return q::find_run(lease().get(), id);
}
std::vector<Run> Store::list_runs() const { return q::list_runs(lease().get()); }
std::optional<Instance> Store::find_instance(std::string_view id) const {
  return q::find_instance(lease().get(), id);
}
std::optional<Instance> Store::find_instance_at(std::string_view run_id,
                                                std::int64_t index) const {
  return q::find_instance_at(lease().get(), run_id, index);
}
std::vector<Instance> Store::instances(std::string_view run_id) const {
  return q::instances(lease().get(), run_id);
}
std::size_t Store::instance_count(std::string_view run_id) const {
  return q::instance_count(lease().get(), run_id);
}
std::vector<ErrorAnnotation> Store::annotations_for_run(std::string_view run_id) const {
  return q::annotations_for_run(lease().get(), run_id);
}
std::vector<InstanceScore> Store::scores_for_run(std::string_view run_id) const {
  return q::scores_for_run(lease().get(), run_id);
}
std::vector<RankingFeedback> Store::feedback() const { return q::feedback(lease().get()); }
std::optional<EvaluationJob> Store::find_job(std::string_view id) const {
  return q::find_job(lease().get(), id);
}
std::vector<EvaluationJob> Store::jobs_in_state(JobState state) const {
  return q::jobs_in_state(lease().get(), state);
}
StoreCounts Store::counts() const { return q::counts(lease().get()); }

}  // namespace mtwb
