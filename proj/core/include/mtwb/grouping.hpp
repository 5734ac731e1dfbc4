#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtwb/paging.hpp"
#include "mtwb/snapshot.hpp"
#include "mtwb/types.hpp"

namespace mtwb {

struct GroupMember {
  std::string run_id;
  std::string run_name;
  Instance instance;
  std::map<std::string, double> scores;
  std::vector<ErrorAnnotation> annotations;
};

// Predictions from different runs that share identical (source, reference)
// texts; absent texts count as empty. A run contributing the same pair
// more than once puts its k-th copy in the k-th group for that pair, so a
// group never holds two members from one run.
struct InstanceGroup {
  std::string group_key;
  std::string source;
  std::string reference;
  std::vector<GroupMember> members;  // best first
};

// Stable hex digest of (source, reference, occurrence).
std::string group_key(std::string_view source, std::string_view reference,
                      std::size_t occurrence = 0);

// Instance-level quality used for ordering. The InstructScore family is
// "instructscore", then any "instructscore*" metric, then "baseline"; the
// COMET family is "comet", then any "comet*" metric.
std::optional<double> instructscore_family(const std::map<std::string, double>& scores);
std::optional<double> comet_family(const std::map<std::string, double>& scores);

// Strict weak ordering: InstructScore family descending, then COMET family
// descending (scored before unscored), then run name, then run id.
bool better_member(const GroupMember& a, const GroupMember& b);

using InstanceFilter = std::function<bool(const RunData&, const Instance&)>;

// Groups in first-appearance order: smallest instance index, then the
// position of the run in `runs`.
std::vector<InstanceGroup> build_groups(const std::vector<RunData>& runs,
                                        const InstanceFilter& keep = nullptr);

struct GroupPage {
  std::vector<InstanceGroup> groups;
  std::size_t total = 0;
  PageRequest page;
};

// Throws kUnknownRun, kInvalidPage.
GroupPage group_instances(const Reader& store, const std::vector<std::string>& run_ids,
                          const PageRequest& page);

}  // namespace mtwb
