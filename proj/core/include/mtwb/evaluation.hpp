#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "mtwb/adapter.hpp"
#include "mtwb/store.hpp"
#include "mtwb/types.hpp"

namespace mtwb {

// Background evaluation jobs. Each job runs its metrics one at a time in
// the requested order; each metric commits in its own transaction so a
// failure leaves no partial results for that metric. At most one job per
// run is active at a time.
class Evaluator {
 public:
  Evaluator(Store& store, AdapterTable adapters, std::size_t workers = 2);
  ~Evaluator();

  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  const AdapterTable& adapters() const { return adapters_; }

  // Validates synchronously and queues the job. Empty metrics/device hints
  // fall back to the run's requested ones.
  // Throws kUnknownRun, kEmptyRun, kMissingReference (with "indices"),
  // kAdapterMissing, kInvalidState.
  EvaluationJob start(std::string_view run_id, std::vector<std::string> metrics,
                      std::vector<std::string> device_hints);

  // Throws kNotFound.
  EvaluationJob status(std::string_view job_id) const;

  // Blocks until the job is done or failed, or the timeout passes.
  EvaluationJob wait(std::string_view job_id,
                     std::chrono::milliseconds timeout = std::chrono::minutes(10));

  // Marks jobs left queued/running by a previous process as failed.
  std::size_t recover_interrupted();

 private:
  void worker_loop();
  void execute(EvaluationJob job);
  void run_metric(const std::string& run_id, const std::string& metric,
                  const std::vector<std::string>& device_hints);
  void save(const EvaluationJob& job);

  Store& store_;
  AdapterTable adapters_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::condition_variable done_cv_;
  std::deque<EvaluationJob> queue_;
  std::set<std::string> active_runs_;
  bool stopping_ = false;
  std::vector<std::thread> workers_;
};

}  // namespace mtwb
