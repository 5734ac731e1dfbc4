#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtwb/store.hpp"
#include "mtwb/types.hpp"

namespace mtwb {

// Everything the read-side modules need about one run, loaded at once.
struct RunData {
  Run run;
  std::vector<Instance> instances;
  std::unordered_map<std::string, std::vector<ErrorAnnotation>> errors;  // by instance id
  std::unordered_map<std::string, std::map<std::string, double>> scores;  // by instance id

  const std::vector<ErrorAnnotation>& errors_of(const Instance& inst) const;
  const std::map<std::string, double>& scores_of(const Instance& inst) const;
};

RunData load_run(const Reader& store, std::string_view run_id);

// Duplicate ids are dropped, first occurrence wins. Throws kUnknownRun.
std::vector<RunData> load_runs(const Reader& store, const std::vector<std::string>& run_ids);

}  // namespace mtwb
