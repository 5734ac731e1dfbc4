#pragma once

// JSON mappings for the domain types. Field names here are the wire format
// used by the HTTP API, the CLI --json mode and the export streams.

#include <nlohmann/json.hpp>

#include "mtwb/bleu.hpp"
#include "mtwb/types.hpp"

namespace mtwb {

void to_json(nlohmann::json& j, const BleuReport& r);
void from_json(const nlohmann::json& j, BleuReport& r);

void to_json(nlohmann::json& j, const LanguagePair& p);
void to_json(nlohmann::json& j, const Run& r);
void to_json(nlohmann::json& j, const Instance& i);
void to_json(nlohmann::json& j, const Span& s);
void to_json(nlohmann::json& j, const ErrorAnnotation& a);
void to_json(nlohmann::json& j, const InstanceScore& s);
void to_json(nlohmann::json& j, const RankedOutput& o);
void to_json(nlohmann::json& j, const RankingFeedback& f);
void to_json(nlohmann::json& j, const EvaluationJob& job);

// Optional text as string or null.
nlohmann::json optional_text(const std::optional<std::string>& s);

}  // namespace mtwb
