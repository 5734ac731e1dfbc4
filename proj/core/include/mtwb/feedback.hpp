#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mtwb/grouping.hpp"
#include "mtwb/store.hpp"

namespace mtwb {

struct RankingRequest {
  std::string group_key;
  std::vector<std::string> ordering;  // run ids, best first
  std::string session_id;
  bool consented = false;
  // Run selection the group was computed over; empty means every run.
  std::vector<std::string> run_ids;
};

struct RankingReceipt {
  bool stored = false;
  std::optional<RankingFeedback> feedback;
};

struct FeedbackOptions {
  // When false, consented rankings are acknowledged but never written.
  bool retain = true;
};

// Throws kUnknownGroup, kNotAPermutation, kBadRequest, kUnknownRun.
RankingReceipt submit_ranking(Store& store, const RankingRequest& request,
                              const FeedbackOptions& options = {});

// Number of records deleted; unknown sessions delete nothing.
std::size_t revoke_feedback(Store& store, const std::string& session_id);

// One record per consented ranking, oldest first, with fields in the order
// source, reference, outputs, ranking, timestamp.
std::vector<nlohmann::ordered_json> export_feedback(const Reader& store);
std::string export_feedback_ndjson(const Reader& store);

}  // namespace mtwb
