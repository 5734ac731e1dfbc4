#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace mtwb {

// Error vocabulary shared by every module. The names double as the
// machine-readable codes returned by the HTTP API and the CLI.
enum class ErrorCode {
  kUnknownRun,
  kUnknownInstance,
  kNonTextPayload,
  kInvalidSpan,
  kUnknownSeverity,
  kInvalidLanguageCode,
  kUnknownMetric,
  kEmptyCorpus,
  kMissingReference,
  kMalformedRecord,
  kAdapterMissing,
  kAdapterFailed,
  kLineCountMismatch,
  kFieldMissing,
  kPatternNoMatch,
  kInvalidSpec,
  kEmptyRun,
  kInvalidState,
  kNotFound,
  kParseError,
  kInvalidPage,
  kInvalidBinCount,
  kNotAPermutation,
  kUnknownGroup,
  kPortInUse,
  kStorageUnwritable,
  kStorageError,
  kBadRequest,
};

std::string_view error_code_name(ErrorCode code);

// HTTP status used when the error crosses the gateway.
int http_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::json details = nlohmann::json::object())
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  // Structured context, e.g. {"line": 3} or {"indices": [0, 4]}.
  const nlohmann::json& details() const noexcept { return details_; }

  nlohmann::json to_json() const;

 private:
  ErrorCode code_;
  nlohmann::json details_;
};

}  // namespace mtwb
