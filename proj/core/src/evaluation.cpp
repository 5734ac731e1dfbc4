#include "mtwb/evaluation.hpp"

#include <algorithm>

#include "mtwb/annotate.hpp"
#include "mtwb/bleu.hpp"
#include "mtwb/error.hpp"
#include "mtwb/ingestion.hpp"

namespace mtwb {

Evaluator::Evaluator(Store& store, AdapterTable adapters, std::size_t workers)
    : store_(store), adapters_(std::move(adapters)) {
  workers = std::max<std::size_t>(workers, 1);
  for (std::size_t i = 0; i < workers; ++i) workers_.emplace_back([this] { worker_loop(); });
}

Evaluator::~Evaluator() {
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
  }
  cv_.notify_all();
  for (auto& t : workers_) t.join();
}

EvaluationJob Evaluator::start(std::string_view run_id, std::vector<std::string> metrics,
                               std::vector<std::string> device_hints) {
  const Run run = store_.require_run(run_id);
  if (metrics.empty()) metrics = run.requested_metrics;
  if (device_hints.empty()) device_hints = run.device_hints;
  if (metrics.empty()) {
    throw Error(ErrorCode::kBadRequest, "no metrics requested for run '" + run.id + "'");
  }
  if (run.status == RunStatus::kFailed) {
    throw Error(ErrorCode::kInvalidState, "run '" + run.id + "' has failed and is read-only",
                {{"status", status_name(run.status)}});
  }
  for (const auto& metric : metrics) {
    if (!is_builtin_metric(metric) && !adapters_.find(metric)) {
      throw Error(ErrorCode::kAdapterMissing, "no adapter configured for metric '" + metric + "'",
                  {{"metric", metric}});
    }
  }

  const auto instances = store_.instances(run.id);
  if (instances.empty()) {
    throw Error(ErrorCode::kEmptyRun, "run '" + run.id + "' has no instances");
  }
  const bool needs_reference = std::any_of(metrics.begin(), metrics.end(), [](const auto& m) {
    return is_builtin_metric(m);
  });
  if (needs_reference) {
    std::vector<std::int64_t> missing;
    for (const auto& inst : instances) {
      if (!inst.reference) missing.push_back(inst.index);
    }
    if (!missing.empty()) {
      throw Error(ErrorCode::kMissingReference,
                  std::to_string(missing.size()) + " instance(s) of run '" + run.id +
                      "' have no reference",
                  {{"indices", missing}});
    }
  }

  EvaluationJob job;
  job.id = make_id("job");
  job.run_id = run.id;
  job.metrics = std::move(metrics);
  job.device_hints = std::move(device_hints);
  job.state = JobState::kQueued;
  job.total = instances.size() * job.metrics.size();
  job.created_at = utc_now();
  save(job);
  {
    std::lock_guard lock(mu_);
    queue_.push_back(job);
  }
  cv_.notify_all();
  return job;
}

EvaluationJob Evaluator::status(std::string_view job_id) const {
  auto job = store_.find_job(job_id);
  if (!job) {
    throw Error(ErrorCode::kNotFound, "unknown job '" + std::string(job_id) + "'",
                {{"job_id", std::string(job_id)}});
  }
  return *job;
}

EvaluationJob Evaluator::wait(std::string_view job_id, std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  std::unique_lock lock(mu_);
  for (;;) {
    EvaluationJob job = status(job_id);
    if (job.terminal()) return job;
    if (done_cv_.wait_until(lock, deadline) == std::cv_status::timeout) return status(job_id);
  }
}

std::size_t Evaluator::recover_interrupted() {
  return store_.write([](WriteTxn& txn) {
    std::size_t n = 0;
    for (JobState state : {JobState::kQueued, JobState::kRunning}) {
      for (EvaluationJob job : txn.jobs_in_state(state)) {
        job.state = JobState::kFailed;
        job.diagnostics = "interrupted: the service stopped before the job finished";
        txn.upsert_job(job);
        if (auto run = txn.find_run(job.run_id); run && run->status == RunStatus::kEvaluating) {
          txn.set_run_status(run->id, RunStatus::kFailed);
        }
        ++n;
      }
    }
    return n;
  });
}

void Evaluator::save(const EvaluationJob& job) {
  store_.write([&](WriteTxn& txn) { txn.upsert_job(job); });
}

void Evaluator::worker_loop() {
  for (;;) {
    EvaluationJob job;
    {
      std::unique_lock lock(mu_);
      auto runnable = queue_.end();
      cv_.wait(lock, [&] {
        if (stopping_) return true;
        runnable = std::find_if(queue_.begin(), queue_.end(), [&](const EvaluationJob& j) {
          return active_runs_.count(j.run_id) == 0;
        });
        return runnable != queue_.end();
      });
      if (stopping_) return;
      job = std::move(*runnable);
      queue_.erase(runnable);
      active_runs_.insert(job.run_id);
    }
    execute(job);
    {
      std::lock_guard lock(mu_);
      active_runs_.erase(job.run_id);
    }
    cv_.notify_all();
    done_cv_.notify_all();
  }
}

void Evaluator::execute(EvaluationJob job) {
  try {
    store_.write([&](WriteTxn& txn) { txn.set_run_status(job.run_id, RunStatus::kEvaluating); });
    job.state = JobState::kRunning;
    save(job);

    const std::size_t per_metric = job.metrics.empty() ? 0 : job.total / job.metrics.size();
    for (const auto& metric : job.metrics) {
      run_metric(job.run_id, metric, job.device_hints);
      job.completed += per_metric;
      save(job);
    }

    store_.write([&](WriteTxn& txn) { txn.set_run_status(job.run_id, RunStatus::kReady); });
    job.state = JobState::kDone;
    save(job);
  } catch (const std::exception& e) {
    job.state = JobState::kFailed;
    job.diagnostics = e.what();
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
      job.diagnostics = std::string(error_code_name(err->code())) + ": " + e.what();
    }
    try {
      store_.write([&](WriteTxn& txn) {
        txn.upsert_job(job);
        auto run = txn.find_run(job.run_id);
        if (run && can_transition(run->status, RunStatus::kFailed)) {
          txn.set_run_status(job.run_id, RunStatus::kFailed);
        }
      });
    } catch (const std::exception&) {
      // The store itself is failing; nothing more can be recorded.
    }
  }
}

void Evaluator::run_metric(const std::string& run_id, const std::string& metric,
                           const std::vector<std::string>& device_hints) {
  if (metric == kBleuMetric) {
    std::vector<BleuPair> pairs;
    for (const auto& inst : store_.instances(run_id)) {
      pairs.push_back({inst.prediction, inst.reference});
    }
    const BleuReport report = corpus_bleu(pairs);
    store_.write([&](WriteTxn& txn) { txn.set_run_bleu(run_id, report); });
    return;
  }

  if (metric == kBaselineMetric) {
    struct Result {
      std::string instance_id;
      std::vector<ErrorAnnotation> annotations;
    };
    std::vector<Result> results;
    for (const auto& inst : store_.instances(run_id)) {
      auto annotations = baseline_annotate(inst.prediction, inst.reference);
      for (auto& a : annotations) {
        a.id = make_id("err");
        a.instance_id = inst.id;
      }
      results.push_back({inst.id, std::move(annotations)});
    }
    store_.write([&](WriteTxn& txn) {
      txn.delete_run_annotations(run_id, kBaselineOrigin);
      for (const auto& r : results) {
        for (const auto& a : r.annotations) txn.insert_annotation(a);
        txn.upsert_score({r.instance_id, std::string(kBaselineMetric),
                          annotation_score(r.annotations)});
      }
    });
    return;
  }

  auto records = run_adapter(store_, run_id, adapters_, metric, device_hints);
  const Run run = store_.require_run(run_id);
  store_.write([&](WriteTxn& txn) { apply_adapter_records(txn, run, records, metric); });
}

}  // namespace mtwb
