#include "mtwb/json.hpp"

namespace mtwb {

using nlohmann::json;

json optional_text(const std::optional<std::string>& s) {
  return s ? json(*s) : json(nullptr);
}

void to_json(json& j, const BleuReport& r) {
  j = {{"score", r.score},
       {"precisions", r.precisions},
       {"matches", r.matches},
       {"totals", r.totals},
       {"brevity_penalty", r.brevity_penalty},
       {"hyp_length", r.hyp_length},
       {"ref_length", r.ref_length},
       {"smoothing", smoothing_name(r.smoothing)}};
}

void from_json(const json& j, BleuReport& r) {
  r.score = j.at("score").get<double>();
  r.precisions = j.at("precisions").get<std::vector<double>>();
  r.matches = j.value("matches", std::vector<std::size_t>{});
  r.totals = j.value("totals", std::vector<std::size_t>{});
  r.brevity_penalty = j.at("brevity_penalty").get<double>();
  r.hyp_length = j.at("hyp_length").get<std::size_t>();
  r.ref_length = j.at("ref_length").get<std::size_t>();
  r.smoothing = parse_smoothing(j.value("smoothing", std::string("none")));
}

void to_json(json& j, const LanguagePair& p) {
  j = {{"source", p.source}, {"target", p.target}};
}

void to_json(json& j, const Run& r) {
  j = {{"id", r.id},
       {"name", r.name},
       {"lang", r.lang},
       {"created_at", r.created_at},
       {"requested_metrics", r.requested_metrics},
       {"device_hints", r.device_hints},
       {"status", status_name(r.status)},
       {"bleu", r.bleu ? json(*r.bleu) : json(nullptr)}};
}

void to_json(json& j, const Instance& i) {
  j = {{"id", i.id},
       {"run_id", i.run_id},
       {"index", i.index},
       {"source", optional_text(i.source)},
       {"prediction", i.prediction},
       {"reference", optional_text(i.reference)}};
}

void to_json(json& j, const Span& s) { j = json::array({s.start, s.end}); }

void to_json(json& j, const ErrorAnnotation& a) {
  j = {{"id", a.id},
       {"instance_id", a.instance_id},
       {"type", a.error_type},
       {"severity", severity_name(a.severity)},
       {"span", a.span},
       {"explanation", a.explanation},
       {"origin", a.origin}};
}

void to_json(json& j, const InstanceScore& s) {
  j = {{"instance_id", s.instance_id}, {"metric", s.metric}, {"value", s.value}};
}

void to_json(json& j, const RankedOutput& o) {
  j = {{"run_id", o.run_id}, {"run_name", o.run_name}, {"prediction", o.prediction}};
}

void to_json(json& j, const RankingFeedback& f) {
  j = {{"id", f.id},
       {"group_key", f.group_key},
       {"ordering", f.ordering},
       {"session_id", f.session_id},
       {"consented", f.consented},
       {"created_at", f.created_at},
       {"source", f.source_text},
       {"reference", f.reference_text},
       {"outputs", f.outputs}};
}

void to_json(json& j, const EvaluationJob& job) {
  j = {{"id", job.id},
       {"run_id", job.run_id},
       {"metrics", job.metrics},
       {"device_hints", job.device_hints},
       {"state", job_state_name(job.state)},
       {"progress", {{"completed", job.completed}, {"total", job.total}}},
       {"diagnostics", job.diagnostics},
       {"created_at", job.created_at}};
}

}  // namespace mtwb
