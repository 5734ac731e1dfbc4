#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "mtwb/types.hpp"

struct sqlite3;

namespace mtwb {

inline constexpr int kSchemaVersion = 1;

struct StoreCounts {
  std::size_t runs = 0;
  std::size_t instances = 0;
  std::size_t annotations = 0;
  std::size_t scores = 0;
  std::size_t feedback = 0;

  friend bool operator==(const StoreCounts&, const StoreCounts&) = default;
};

// Read surface shared by the store (committed state) and an open write
// transaction (its own uncommitted state).
class Reader {
 public:
  virtual ~Reader() = default;

  virtual std::optional<Run> find_run(std::string_view id) const = 0;
  virtual std::vector<Run> list_runs() const = 0;

  virtual std::optional<Instance> find_instance(std::string_view id) const = 0;
  virtual std::optional<Instance> find_instance_at(std::string_view run_id,
                                                   std::int64_t index) const = 0;
  virtual std::vector<Instance> instances(std::string_view run_id) const = 0;
  virtual std::size_t instance_count(std::string_view run_id) const = 0;

  virtual std::vector<ErrorAnnotation> annotations_for_run(std::string_view run_id) const = 0;
  virtual std::vector<InstanceScore> scores_for_run(std::string_view run_id) const = 0;

  virtual std::vector<RankingFeedback> feedback() const = 0;
  virtual std::optional<EvaluationJob> find_job(std::string_view id) const = 0;
  virtual std::vector<EvaluationJob> jobs_in_state(JobState state) const = 0;

  virtual StoreCounts counts() const = 0;

  // Throws kUnknownRun.
  Run require_run(std::string_view id) const;
};

// Reads over a single connection. Inside Store::read() this is a consistent
// snapshot of the last committed state.
class Snapshot : public Reader {
 public:
  explicit Snapshot(sqlite3* db) : db_(db) {}

  std::optional<Run> find_run(std::string_view id) const override;
  std::vector<Run> list_runs() const override;
  std::optional<Instance> find_instance(std::string_view id) const override;
  std::optional<Instance> find_instance_at(std::string_view run_id,
                                           std::int64_t index) const override;
  std::vector<Instance> instances(std::string_view run_id) const override;
  std::size_t instance_count(std::string_view run_id) const override;
  std::vector<ErrorAnnotation> annotations_for_run(std::string_view run_id) const override;
  std::vector<InstanceScore> scores_for_run(std::string_view run_id) const override;
  std::vector<RankingFeedback> feedback() const override;
  std::optional<EvaluationJob> find_job(std::string_view id) const override;
  std::vector<EvaluationJob> jobs_in_state(JobState state) const override;
  StoreCounts counts() const override;

 protected:
  sqlite3* db_;
};

class WriteTxn final : public Snapshot {
 public:
  using Snapshot::Snapshot;

  void insert_run(const Run& run);
  // Enforces can_transition(); throws kInvalidState.
  void set_run_status(std::string_view run_id, RunStatus status);
  void set_run_bleu(std::string_view run_id, const std::optional<BleuReport>& report);

  void insert_instance(const Instance& instance);

  // Replaces any existing (instance, metric) score.
  void upsert_score(const InstanceScore& score);
  std::size_t delete_scores(std::string_view run_id, std::string_view metric);

  void insert_annotation(const ErrorAnnotation& annotation);
  std::size_t delete_annotations(std::string_view instance_id, std::string_view origin);
  std::size_t delete_run_annotations(std::string_view run_id, std::string_view origin);

  void insert_feedback(const RankingFeedback& feedback);
  std::size_t delete_feedback_session(std::string_view session_id);

  void upsert_job(const EvaluationJob& job);

 };

// Embedded single-file store. Every write() call is one atomic transaction;
// readers use separate connections and observe the last committed state.
class Store final : public Reader {
 public:
  // Creates the file and schema when absent. Throws kStorageUnwritable.
  explicit Store(const std::filesystem::path& path);
  ~Store() override;

  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  const std::filesystem::path& path() const { return path_; }
  int schema_version() const;

  std::optional<Run> find_run(std::string_view id) const override;
  std::vector<Run> list_runs() const override;
  std::optional<Instance> find_instance(std::string_view id) const override;
  std::optional<Instance> find_instance_at(std::string_view run_id,
                                           std::int64_t index) const override;
  std::vector<Instance> instances(std::string_view run_id) const override;
  std::size_t instance_count(std::string_view run_id) const override;
  std::vector<ErrorAnnotation> annotations_for_run(std::string_view run_id) const override;
  std::vector<InstanceScore> scores_for_run(std::string_view run_id) const override;
  std::vector<RankingFeedback> feedback() const override;
  std::optional<EvaluationJob> find_job(std::string_view id) const override;
  std::vector<EvaluationJob> jobs_in_state(JobState state) const override;
  StoreCounts counts() const override;

  // Runs fn(const Reader&) against one consistent read snapshot.
  template <typename Fn>
  decltype(auto) read(Fn&& fn) const {
    auto db = lease();
    SnapshotGuard guard(db.get());
    const Snapshot snapshot(db.get());
    return fn(static_cast<const Reader&>(snapshot));
  }

  // Runs fn(WriteTxn&) as one atomic transaction; rolled back on exception.
  template <typename Fn>
  decltype(auto) write(Fn&& fn) {
    std::lock_guard lock(write_mu_);
    TxnGuard guard(writer_);
    WriteTxn txn(writer_);
    if constexpr (std::is_void_v<decltype(fn(txn))>) {
      fn(txn);
      guard.commit();
    } else {
      decltype(auto) result = fn(txn);
      guard.commit();
      return result;
    }
  }

 private:
  class TxnGuard {
   public:
    explicit TxnGuard(sqlite3* db);
    ~TxnGuard();
    void commit();

   private:
    sqlite3* db_;
    bool done_ = false;
  };

  class SnapshotGuard {
   public:
    explicit SnapshotGuard(sqlite3* db);
    ~SnapshotGuard();

   private:
    sqlite3* db_;
  };

  class ReadLease {
   public:
    ReadLease(const Store* store, sqlite3* db) : store_(store), db_(db) {}
    ~ReadLease();
    ReadLease(ReadLease&& other) noexcept : store_(other.store_), db_(other.db_) {
      other.db_ = nullptr;
    }
    ReadLease(const ReadLease&) = delete;
    ReadLease& operator=(const ReadLease&) = delete;
    ReadLease& operator=(ReadLease&&) = delete;

    sqlite3* get() const { return db_; }

   private:
    const Store* store_;
    sqlite3* db_;
  };

  ReadLease lease() const;
  void release(sqlite3* db) const;

  std::filesystem::path path_;
  sqlite3* writer_ = nullptr;
  std::mutex write_mu_;
  mutable std::mutex pool_mu_;
  mutable std::vector<sqlite3*> pool_;
};

}  // namespace mtwb
