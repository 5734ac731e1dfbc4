#include "mtwb/types.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <random>
#include <regex>

#include "mtwb/error.hpp"

namespace mtwb {

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string normalize_code(std::string_view raw, std::string_view role) {
  static const std::regex kCode("[a-z]{2,8}(-[a-z0-9]{1,8})*");
  std::string code = lower_ascii(raw);
  if (code.empty() || !std::regex_match(code, kCode)) {
    throw Error(ErrorCode::kInvalidLanguageCode,
                "invalid " + std::string(role) + " language code '" + std::string(raw) + "'",
                {{"field", std::string(role) + "_lang"}});
  }
  return code;
}

}  // namespace

LanguagePair LanguagePair::make(std::string_view source, std::string_view target) {
  return {normalize_code(source, "source"), normalize_code(target, "target")};
}

std::string_view status_name(RunStatus s) {
  switch (s) {
    case RunStatus::kCreated: return "created";
    case RunStatus::kEvaluating: return "evaluating";
    case RunStatus::kReady: return "ready";
    case RunStatus::kFailed: return "failed";
  }
  return "created";
}

RunStatus parse_status(std::string_view name) {
  if (name == "created") return RunStatus::kCreated;
  if (name == "evaluating") return RunStatus::kEvaluating;
  if (name == "ready") return RunStatus::kReady;
  if (name == "failed") return RunStatus::kFailed;
  throw Error(ErrorCode::kStorageError, "unknown run status '" + std::string(name) + "'");
}

bool can_transition(RunStatus from, RunStatus to) {
  switch (from) {
    case RunStatus::kCreated:
    case RunStatus::kReady:
      return to == RunStatus::kEvaluating;
    case RunStatus::kEvaluating:
      return to == RunStatus::kReady || to == RunStatus::kFailed;
    case RunStatus::kFailed:
      return false;
  }
  return false;
}

std::string_view severity_name(Severity s) {
  return s == Severity::kMajor ? "major" : "minor";
}

Severity parse_severity(std::string_view name) {
  const std::string lowered = lower_ascii(name);
  if (lowered == "major") return Severity::kMajor;
  if (lowered == "minor") return Severity::kMinor;
  throw Error(ErrorCode::kUnknownSeverity, "unknown severity '" + std::string(name) + "'",
              {{"severity", std::string(name)}});
}

std::string_view job_state_name(JobState s) {
  switch (s) {
    case JobState::kQueued: return "queued";
    case JobState::kRunning: return "running";
    case JobState::kDone: return "done";
    case JobState::kFailed: return "failed";
  }
  return "queued";
}

JobState parse_job_state(std::string_view name) {
  if (name == "queued") return JobState::kQueued;
  if (name == "running") return JobState::kRunning;
  if (name == "done") return JobState::kDone;
  if (name == "failed") return JobState::kFailed;
  throw Error(ErrorCode::kStorageError, "unknown job state '" + std::string(name) + "'");
}

std::string utc_now() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t t = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

std::string make_id(std::string_view prefix) {
  thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return std::string(prefix) + "_" + buf;
}

}  // namespace mtwb
