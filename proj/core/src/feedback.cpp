#include "mtwb/feedback.hpp"

#include <algorithm>
#include <set>

#include "mtwb/error.hpp"

namespace mtwb {

namespace {

std::vector<std::string> selection(const Reader& store, const std::vector<std::string>& run_ids) {
  if (!run_ids.empty()) return run_ids;
  std::vector<std::string> all;
  for (const Run& run : store.list_runs()) all.push_back(run.id);
  return all;
}

}  // namespace

RankingReceipt submit_ranking(Store& store, const RankingRequest& request,
                              const FeedbackOptions& options) {
  if (request.session_id.empty()) {
    throw Error(ErrorCode::kBadRequest, "session_id must be nonempty", {{"field", "session_id"}});
  }

  return store.write([&](WriteTxn& txn) {
    const auto groups = build_groups(load_runs(txn, selection(txn, request.run_ids)));
    auto it = std::find_if(groups.begin(), groups.end(), [&](const InstanceGroup& g) {
      return g.group_key == request.group_key;
    });
    if (it == groups.end()) {
      throw Error(ErrorCode::kUnknownGroup, "no group with key " + request.group_key,
                  {{"group_key", request.group_key}});
    }

    std::vector<std::string> expected;
    for (const auto& member : it->members) expected.push_back(member.run_id);
    std::vector<std::string> given = request.ordering;
    std::sort(expected.begin(), expected.end());
    std::sort(given.begin(), given.end());
    if (given != expected) {
      throw Error(ErrorCode::kNotAPermutation,
                  "ordering must list each run of the group exactly once",
                  {{"expected", expected}, {"ordering", request.ordering}});
    }

    RankingReceipt receipt;
    if (!request.consented || !options.retain) return receipt;

    RankingFeedback fb;
    fb.id = make_id("fb");
    fb.group_key = request.group_key;
    fb.ordering = request.ordering;
    fb.session_id = request.session_id;
    fb.consented = true;
    fb.created_at = utc_now();
    fb.source_text = it->source;
    fb.reference_text = it->reference;
    for (const auto& run_id : request.ordering) {
      const auto member = std::find_if(it->members.begin(), it->members.end(),
                                       [&](const GroupMember& m) { return m.run_id == run_id; });
      fb.outputs.push_back({member->run_id, member->run_name, member->instance.prediction});
    }
    txn.insert_feedback(fb);
    receipt.stored = true;
    receipt.feedback = std::move(fb);
    return receipt;
  });
}

std::size_t revoke_feedback(Store& store, const std::string& session_id) {
  return store.write([&](WriteTxn& txn) { return txn.delete_feedback_session(session_id); });
}

std::vector<nlohmann::ordered_json> export_feedback(const Reader& store) {
  std::vector<nlohmann::ordered_json> out;
  for (const RankingFeedback& fb : store.feedback()) {
    if (!fb.consented) continue;
    nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
    for (const auto& o : fb.outputs) {
      outputs.push_back(
          {{"run_id", o.run_id}, {"run_name", o.run_name}, {"prediction", o.prediction}});
    }
    nlohmann::ordered_json record;
    record["source"] = fb.source_text;
    record["reference"] = fb.reference_text;
    record["outputs"] = std::move(outputs);
    record["ranking"] = fb.ordering;
    record["timestamp"] = fb.created_at;
    out.push_back(std::move(record));
  }
  return out;
}

std::string export_feedback_ndjson(const Reader& store) {
  std::string out;
  for (const auto& record : export_feedback(store)) out += record.dump() + "\n";
  return out;
}

}  // namespace mtwb
