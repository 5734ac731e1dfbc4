#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mtwb/bleu.hpp"
#include "mtwb/store.hpp"

namespace mtwb {

inline constexpr std::size_t kDefaultBinCount = 20;

struct HistogramBin {
  double lower = 0;
  double upper = 0;
  std::size_t count = 0;
};

struct Histogram {
  std::string metric;
  double lo = 0;
  double hi = 0;
  std::vector<HistogramBin> bins;
  std::size_t total = 0;
};

// Equal-width bins over `range`, or over [min, max] of the values. A value
// equal to hi lands in the last bin; values outside an explicit range are
// counted in the nearest edge bin. With lo == hi every value is in the first
// bin. Throws kInvalidBinCount.
Histogram histogram(const std::vector<double>& values, std::size_t bin_count = kDefaultBinCount,
                    std::optional<std::pair<double, double>> range = std::nullopt);

struct ErrorTypeCount {
  std::string error_type;
  std::size_t count = 0;
};

struct DashboardStats {
  std::string run_id;
  std::string run_name;
  std::optional<BleuReport> corpus_bleu;
  std::map<std::string, double> mean_scores;  // arithmetic mean per metric
  std::map<std::string, std::size_t> scored_instances;
  std::map<std::string, Histogram> histograms;
  // Descending count, then ascending type.
  std::vector<ErrorTypeCount> error_type_counts;
  std::size_t instance_count = 0;
  std::size_t annotation_count = 0;
};

// Throws kUnknownRun.
DashboardStats run_summary(const Reader& store, const std::string& run_id,
                           std::size_t bin_count = kDefaultBinCount);

// Per metric, every run's histogram spans the min/max over all compared runs.
// Throws kUnknownRun, kBadRequest (no runs).
std::vector<DashboardStats> compare_runs(const Reader& store, const std::vector<std::string>& run_ids,
                                         std::size_t bin_count = kDefaultBinCount);

void to_json(nlohmann::json& j, const Histogram& h);
void to_json(nlohmann::json& j, const ErrorTypeCount& c);
void to_json(nlohmann::json& j, const DashboardStats& s);

}  // namespace mtwb
