#include "mtwb/snapshot.hpp"

#include <algorithm>

#include "mtwb/paging.hpp"
#include "mtwb/error.hpp"

namespace mtwb {

PageRequest PageRequest::make(long long page, long long page_size) {
  if (page < 1) {
    throw Error(ErrorCode::kInvalidPage, "page must be >= 1", {{"field", "page"}});
  }
  if (page_size < 1 || page_size > static_cast<long long>(kMaxPageSize)) {
    throw Error(ErrorCode::kInvalidPage,
                "page_size must be between 1 and " + std::to_string(kMaxPageSize),
                {{"field", "page_size"}});
  }
  return {static_cast<std::size_t>(page), static_cast<std::size_t>(page_size)};
}

const std::vector<ErrorAnnotation>& RunData::errors_of(const Instance& inst) const {
  static const std::vector<ErrorAnnotation> kNone;
  auto it = errors.find(inst.id);
  return it == errors.end() ? kNone : it->second;
}

const std::map<std::string, double>& RunData::scores_of(const Instance& inst) const {
  static const std::map<std::string, double> kNone;
  auto it = scores.find(inst.id);
  return it == scores.end() ? kNone : it->second;
}

RunData load_run(const Reader& store, std::string_view run_id) {
  RunData data;
  data.run = store.require_run(run_id);
  data.instances = store.instances(run_id);
  for (auto& a : store.annotations_for_run(run_id)) {
    data.errors[a.instance_id].push_back(std::move(a));
  }
  for (const auto& s : store.scores_for_run(run_id)) {
    data.scores[s.instance_id][s.metric] = s.value;
  }
  return data;
}

std::vector<RunData> load_runs(const Reader& store, const std::vector<std::string>& run_ids) {
  std::vector<RunData> out;
  std::vector<std::string> seen;
  for (const auto& id : run_ids) {
    if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
    seen.push_back(id);
    out.push_back(load_run(store, id));
  }
  return out;
}

}  // namespace mtwb
