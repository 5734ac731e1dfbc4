#include "mtwb/error.hpp"

namespace mtwb {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownRun: return "UnknownRun";
    case ErrorCode::kUnknownInstance: return "UnknownInstance";
    case ErrorCode::kNonTextPayload: return "NonTextPayload";
    case ErrorCode::kInvalidSpan: return "InvalidSpan";
    case ErrorCode::kUnknownSeverity: return "UnknownSeverity";
    case ErrorCode::kInvalidLanguageCode: return "InvalidLanguageCode";
    case ErrorCode::kUnknownMetric: return "UnknownMetric";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kMissingReference: return "MissingReference";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kAdapterMissing: return "AdapterMissing";
    case ErrorCode::kAdapterFailed: return "AdapterFailed";
    case ErrorCode::kLineCountMismatch: return "LineCountMismatch";
    case ErrorCode::kFieldMissing: return "FieldMissing";
    case ErrorCode::kPatternNoMatch: return "PatternNoMatch";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kEmptyRun: return "EmptyRun";
    case ErrorCode::kInvalidState: return "InvalidState";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidPage: return "InvalidPage";
    case ErrorCode::kInvalidBinCount: return "InvalidBinCount";
    case ErrorCode::kNotAPermutation: return "NotAPermutation";
    case ErrorCode::kUnknownGroup: return "UnknownGroup";
    case ErrorCode::kPortInUse: return "PortInUse";
    case ErrorCode::kStorageUnwritable: return "StorageUnwritable";
    case ErrorCode::kStorageError: return "StorageError";
    case ErrorCode::kBadRequest: return "BadRequest";
  }
  return "Unknown";
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownRun:
    case ErrorCode::kUnknownInstance:
    case ErrorCode::kNotFound:
    case ErrorCode::kUnknownGroup:
      return 404;
    case ErrorCode::kInvalidState:
      return 409;
    case ErrorCode::kAdapterFailed:
    case ErrorCode::kPortInUse:
    case ErrorCode::kStorageUnwritable:
    case ErrorCode::kStorageError:
      return 500;
    default:
      return 400;
  }
}

nlohmann::json Error::to_json() const {
  nlohmann::json body = {{"code", error_code_name(code_)}, {"message", what()}};
  if (!details_.empty()) body["details"] = details_;
  return {{"error", std::move(body)}};
}

}  // namespace mtwb
