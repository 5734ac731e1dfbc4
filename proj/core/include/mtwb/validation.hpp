#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "mtwb/store.hpp"
#include "mtwb/types.hpp"

namespace mtwb {

struct RawInstance {
  std::string run_id;
  std::optional<std::string> source;
  std::string prediction;
  std::optional<std::string> reference;
};

// Reads {"source", "prediction", "reference"} from a JSON object. Null or
// absent source/reference mean "not provided". Throws kNonTextPayload for
// non-string values and kFieldMissing when prediction is absent.
RawInstance raw_instance_from_json(std::string run_id, const nlohmann::json& fields);

struct ValidatedInstance {
  Instance instance;  // id assigned, index left for the caller
  bool empty_prediction = false;
};

// Throws kUnknownRun, kNonTextPayload (invalid UTF-8).
ValidatedInstance validate_instance(const Reader& store, const RawInstance& raw);

struct RawAnnotation {
  std::string instance_id;
  std::string error_type;
  std::string severity;
  // nullopt anchors the error at the end of the prediction.
  std::optional<Span> span;
  std::string explanation;
  std::string origin;
};

// Throws kInvalidSpan, kUnknownSeverity.
ErrorAnnotation validate_annotation(const RawAnnotation& raw, const Instance& instance);

// Looks the instance up first. Throws kUnknownInstance.
ErrorAnnotation validate_annotation(const Reader& store, const RawAnnotation& raw);

}  // namespace mtwb
