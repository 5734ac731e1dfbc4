#include "mtwb/grouping.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <tuple>
#include <unordered_map>

#include "mtwb/error.hpp"

namespace mtwb {

std::string group_key(std::string_view source, std::string_view reference,
                      std::size_t occurrence) {
  // Length-prefixed so ("ab", "c") and ("a", "bc") differ.
  std::string material = std::to_string(source.size()) + ":" + std::string(source) + "|" +
                         std::to_string(reference.size()) + ":" + std::string(reference);
  if (occurrence > 0) material += "#" + std::to_string(occurrence);

  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_Digest(material.data(), material.size(), digest.data(), &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < 16 && i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

namespace {

std::optional<double> family(const std::map<std::string, double>& scores,
                             std::string_view exact, std::string_view prefix,
                             std::optional<std::string_view> fallback) {
  if (auto it = scores.find(std::string(exact)); it != scores.end()) return it->second;
  for (const auto& [metric, value] : scores) {
    if (metric.rfind(prefix, 0) == 0) return value;
  }
  if (fallback) {
    if (auto it = scores.find(std::string(*fallback)); it != scores.end()) return it->second;
  }
  return std::nullopt;
}

// -1: a before b, 1: b before a, 0: tie. Present scores sort before absent.
int compare_desc(const std::optional<double>& a, const std::optional<double>& b) {
  if (a && b) {
    if (*a > *b) return -1;
    if (*a < *b) return 1;
    return 0;
  }
  if (a) return -1;
  if (b) return 1;
  return 0;
}

}  // namespace

std::optional<double> instructscore_family(const std::map<std::string, double>& scores) {
  return family(scores, "instructscore", "instructscore", "baseline");
}

std::optional<double> comet_family(const std::map<std::string, double>& scores) {
  return family(scores, "comet", "comet", std::nullopt);
}

bool better_member(const GroupMember& a, const GroupMember& b) {
  if (int c = compare_desc(instructscore_family(a.scores), instructscore_family(b.scores))) {
    return c < 0;
  }
  if (int c = compare_desc(comet_family(a.scores), comet_family(b.scores))) return c < 0;
  return std::tie(a.run_name, a.run_id) < std::tie(b.run_name, b.run_id);
}

std::vector<InstanceGroup> build_groups(const std::vector<RunData>& runs,
                                        const InstanceFilter& keep) {
  struct Slot {
    InstanceGroup group;
    std::int64_t first_index;
    std::size_t first_run;
  };
  std::vector<Slot> slots;
  std::unordered_map<std::string, std::size_t> slot_of;  // group key -> slot

  for (std::size_t r = 0; r < runs.size(); ++r) {
    const RunData& run = runs[r];
    // Occurrence counter per (source, reference) within this run.
    std::unordered_map<std::string, std::size_t> seen;
    for (const Instance& inst : run.instances) {
      const std::string source = inst.source.value_or("");
      const std::string reference = inst.reference.value_or("");
      const std::string base = group_key(source, reference);
      const std::size_t occurrence = seen[base]++;
      if (keep && !keep(run, inst)) continue;
      const std::string key = occurrence == 0 ? base : group_key(source, reference, occurrence);

      auto [it, inserted] = slot_of.try_emplace(key, slots.size());
      if (inserted) {
        slots.push_back({InstanceGroup{key, source, reference, {}}, inst.index, r});
      }
      Slot& slot = slots[it->second];
      if (inst.index < slot.first_index) {
        slot.first_index = inst.index;
        slot.first_run = r;
      }
      slot.group.members.push_back(
          {run.run.id, run.run.name, inst, run.scores_of(inst), run.errors_of(inst)});
    }
  }

  std::stable_sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    return std::tie(a.first_index, a.first_run) < std::tie(b.first_index, b.first_run);
  });
  std::vector<InstanceGroup> out;
  out.reserve(slots.size());
  for (auto& slot : slots) {
    std::sort(slot.group.members.begin(), slot.group.members.end(), better_member);
    out.push_back(std::move(slot.group));
  }
  return out;
}

GroupPage group_instances(const Reader& store, const std::vector<std::string>& run_ids,
                          const PageRequest& page) {
  if (run_ids.empty()) {
    throw Error(ErrorCode::kBadRequest, "at least one run is required", {{"field", "run_ids"}});
  }
  auto groups = build_groups(load_runs(store, run_ids));
  GroupPage out;
  out.total = groups.size();
  out.page = page;
  out.groups = page.slice(std::move(groups));
  return out;
}

}  // namespace mtwb
