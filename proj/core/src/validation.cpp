#include "mtwb/validation.hpp"

#include "mtwb/error.hpp"
#include "mtwb/unicode.hpp"

namespace mtwb {

namespace {

std::optional<std::string> text_field(const nlohmann::json& fields, const char* name) {
  auto it = fields.find(name);
  if (it == fields.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorCode::kNonTextPayload, std::string("field '") + name + "' must be text",
                {{"field", name}});
  }
  return it->get<std::string>();
}

void check_text(const std::optional<std::string>& s, const char* name) {
  if (s && !unicode::is_valid(*s)) {
    throw Error(ErrorCode::kNonTextPayload, std::string("field '") + name + "' is not UTF-8",
                {{"field", name}});
  }
}

}  // namespace

RawInstance raw_instance_from_json(std::string run_id, const nlohmann::json& fields) {
  if (!fields.is_object()) {
    throw Error(ErrorCode::kNonTextPayload, "instance must be an object");
  }
  RawInstance raw;
  raw.run_id = std::move(run_id);
  raw.source = text_field(fields, "source");
  auto prediction = text_field(fields, "prediction");
  if (!prediction) {
    throw Error(ErrorCode::kFieldMissing, "instance has no prediction",
                {{"field", "prediction"}});
  }
  raw.prediction = std::move(*prediction);
  raw.reference = text_field(fields, "reference");
  return raw;
}

ValidatedInstance validate_instance(const Reader& store, const RawInstance& raw) {
  store.require_run(raw.run_id);
  check_text(raw.source, "source");
  check_text(raw.prediction, "prediction");
  check_text(raw.reference, "reference");

  ValidatedInstance out;
  out.instance.id = make_id("inst");
  out.instance.run_id = raw.run_id;
  out.instance.source = raw.source;
  out.instance.prediction = raw.prediction;
  out.instance.reference = raw.reference;
  out.empty_prediction = raw.prediction.empty();
  return out;
}

ErrorAnnotation validate_annotation(const RawAnnotation& raw, const Instance& instance) {
  const std::size_t length = unicode::length(instance.prediction);
  const Span span = raw.span.value_or(Span{length, length});
  if (span.start > span.end || span.end > length) {
    throw Error(ErrorCode::kInvalidSpan,
                "span [" + std::to_string(span.start) + ", " + std::to_string(span.end) +
                    ") does not fit a prediction of length " + std::to_string(length),
                {{"span", {span.start, span.end}}, {"length", length}});
  }
  ErrorAnnotation out;
  out.id = make_id("err");
  out.instance_id = instance.id;
  out.error_type = raw.error_type;
  out.severity = parse_severity(raw.severity);
  out.span = span;
  out.explanation = raw.explanation;
  out.origin = raw.origin;
  return out;
}

ErrorAnnotation validate_annotation(const Reader& store, const RawAnnotation& raw) {
  auto instance = store.find_instance(raw.instance_id);
  if (!instance) {
    throw Error(ErrorCode::kUnknownInstance, "unknown instance '" + raw.instance_id + "'",
                {{"instance_id", raw.instance_id}});
  }
  return validate_annotation(raw, *instance);
}

}  // namespace mtwb
