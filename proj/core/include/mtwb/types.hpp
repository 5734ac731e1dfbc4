#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtwb/bleu.hpp"

namespace mtwb {

struct LanguagePair {
  std::string source;
  std::string target;

  // Lowercases and validates both codes (BCP-47 shaped, e.g. "zh", "pt-br").
  // Throws kInvalidLanguageCode.
  static LanguagePair make(std::string_view source, std::string_view target);

  friend bool operator==(const LanguagePair&, const LanguagePair&) = default;
};

enum class RunStatus { kCreated, kEvaluating, kReady, kFailed };

std::string_view status_name(RunStatus s);
RunStatus parse_status(std::string_view name);
// created -> evaluating -> {ready, failed}; ready -> evaluating.
bool can_transition(RunStatus from, RunStatus to);

struct Run {
  std::string id;
  std::string name;
  LanguagePair lang;
  std::string created_at;
  std::vector<std::string> requested_metrics;  // sorted, unique
  std::vector<std::string> device_hints;
  RunStatus status = RunStatus::kCreated;
  std::optional<BleuReport> bleu;
};

struct Instance {
  std::string id;
  std::string run_id;
  std::int64_t index = 0;
  std::optional<std::string> source;
  std::string prediction;
  std::optional<std::string> reference;

  friend bool operator==(const Instance&, const Instance&) = default;
};

enum class Severity { kMajor, kMinor };

std::string_view severity_name(Severity s);
// Case-insensitive. Throws kUnknownSeverity.
Severity parse_severity(std::string_view name);

// Code point offsets into the prediction, half-open. start == end marks a
// zero-width anchor (omissions).
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

struct ErrorAnnotation {
  std::string id;
  std::string instance_id;
  std::string error_type;
  Severity severity = Severity::kMinor;
  Span span;
  std::string explanation;
  std::string origin;
};

struct InstanceScore {
  std::string instance_id;
  std::string metric;
  double value = 0.0;
};

struct RankedOutput {
  std::string run_id;
  std::string run_name;
  std::string prediction;
};

struct RankingFeedback {
  std::string id;
  std::string group_key;
  std::vector<std::string> ordering;  // run ids, best first
  std::string session_id;
  bool consented = false;
  std::string created_at;
  std::string source_text;
  std::string reference_text;
  std::vector<RankedOutput> outputs;
};

enum class JobState { kQueued, kRunning, kDone, kFailed };

std::string_view job_state_name(JobState s);
JobState parse_job_state(std::string_view name);

struct EvaluationJob {
  std::string id;
  std::string run_id;
  std::vector<std::string> metrics;
  std::vector<std::string> device_hints;
  JobState state = JobState::kQueued;
  std::size_t completed = 0;
  std::size_t total = 0;
  std::string diagnostics;
  std::string created_at;

  bool terminal() const { return state == JobState::kDone || state == JobState::kFailed; }
};

// ISO-8601 UTC timestamp with millisecond precision.
std::string utc_now();

// Random opaque identifier with a readable prefix, e.g. "run_3f9a...".
std::string make_id(std::string_view prefix);

}  // namespace mtwb
