#include "mtwb/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "mtwb/error.hpp"
#include "mtwb/json.hpp"
#include "mtwb/snapshot.hpp"

namespace mtwb {

Histogram histogram(const std::vector<double>& values, std::size_t bin_count,
                    std::optional<std::pair<double, double>> range) {
  if (bin_count < 1) {
    throw Error(ErrorCode::kInvalidBinCount, "bin_count must be at least 1",
                {{"bin_count", bin_count}});
  }
  Histogram h;
  if (values.empty() && !range) {
    h.bins.assign(bin_count, HistogramBin{});
    return h;
  }
  if (range) {
    h.lo = range->first;
    h.hi = range->second;
    if (!std::isfinite(h.lo) || !std::isfinite(h.hi) || h.lo > h.hi) {
      throw Error(ErrorCode::kBadRequest, "histogram range must be finite with lo <= hi",
                  {{"field", "range"}});
    }
  } else {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    h.lo = *mn;
    h.hi = *mx;
  }

  const double width = (h.hi - h.lo) / static_cast<double>(bin_count);
  h.bins.resize(bin_count);
  for (std::size_t i = 0; i < bin_count; ++i) {
    h.bins[i].lower = h.lo + width * static_cast<double>(i);
    h.bins[i].upper = i + 1 == bin_count ? h.hi : h.lo + width * static_cast<double>(i + 1);
  }

  for (double v : values) {
    std::size_t bin = 0;
    if (width > 0 && v > h.lo) {
      if (v >= h.hi) {
        bin = bin_count - 1;
      } else {
        bin = std::min(bin_count - 1, static_cast<std::size_t>((v - h.lo) / width));
        // Division can round across an edge; settle against the stored edges.
        while (bin > 0 && v < h.bins[bin].lower) --bin;
        while (bin + 1 < bin_count && v >= h.bins[bin + 1].lower) ++bin;
      }
    }
    ++h.bins[bin].count;
    ++h.total;
  }
  return h;
}

namespace {

struct RunScores {
  DashboardStats stats;
  std::map<std::string, std::vector<double>> values;
};

RunScores summarize(const RunData& data) {
  RunScores out;
  DashboardStats& s = out.stats;
  s.run_id = data.run.id;
  s.run_name = data.run.name;
  s.corpus_bleu = data.run.bleu;
  s.instance_count = data.instances.size();

  for (const auto& inst : data.instances) {
    for (const auto& [metric, value] : data.scores_of(inst)) out.values[metric].push_back(value);
  }
  for (const auto& [metric, values] : out.values) {
    double sum = 0;
    for (double v : values) sum += v;
    s.mean_scores[metric] = sum / static_cast<double>(values.size());
    s.scored_instances[metric] = values.size();
  }

  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& [instance_id, errors] : data.errors) {
    for (const auto& e : errors) ++counts[e.error_type];
    s.annotation_count += errors.size();
  }
  for (auto& [type, count] : counts) s.error_type_counts.push_back({type, count});
  std::sort(s.error_type_counts.begin(), s.error_type_counts.end(),
            [](const ErrorTypeCount& a, const ErrorTypeCount& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.error_type < b.error_type;
            });
  return out;
}

void fill_histograms(RunScores& run, std::size_t bin_count,
                     const std::map<std::string, std::pair<double, double>>& ranges) {
  for (const auto& [metric, values] : run.values) {
    auto it = ranges.find(metric);
    Histogram h = it == ranges.end() ? histogram(values, bin_count)
                                     : histogram(values, bin_count, it->second);
    h.metric = metric;
    run.stats.histograms.emplace(metric, std::move(h));
  }
}

}  // namespace

DashboardStats run_summary(const Reader& store, const std::string& run_id,
                           std::size_t bin_count) {
  if (bin_count < 1) histogram({}, bin_count);
  RunScores run = summarize(load_run(store, run_id));
  fill_histograms(run, bin_count, {});
  return std::move(run.stats);
}

std::vector<DashboardStats> compare_runs(const Reader& store,
                                         const std::vector<std::string>& run_ids,
                                         std::size_t bin_count) {
  if (run_ids.empty()) {
    throw Error(ErrorCode::kBadRequest, "at least one run is required", {{"field", "run_ids"}});
  }
  if (bin_count < 1) histogram({}, bin_count);

  std::vector<RunScores> runs;
  for (const auto& data : load_runs(store, run_ids)) runs.push_back(summarize(data));

  std::map<std::string, std::pair<double, double>> ranges;
  for (const auto& run : runs) {
    for (const auto& [metric, values] : run.values) {
      const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
      auto [it, inserted] = ranges.try_emplace(metric, *mn, *mx);
      if (!inserted) {
        it->second.first = std::min(it->second.first, *mn);
        it->second.second = std::max(it->second.second, *mx);
      }
    }
  }

  std::vector<DashboardStats> out;
  for (auto& run : runs) {
    fill_histograms(run, bin_count, ranges);
    out.push_back(std::move(run.stats));
  }
  return out;
}

void to_json(nlohmann::json& j, const Histogram& h) {
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& b : h.bins) {
    bins.push_back({{"lower", b.lower}, {"upper", b.upper}, {"count", b.count}});
  }
  j = {{"metric", h.metric}, {"lo", h.lo}, {"hi", h.hi}, {"bins", bins}, {"total", h.total}};
}

void to_json(nlohmann::json& j, const ErrorTypeCount& c) {
  j = {{"error_type", c.error_type}, {"count", c.count}};
}

void to_json(nlohmann::json& j, const DashboardStats& s) {
  j = {{"run_id", s.run_id},
       {"run_name", s.run_name},
       {"corpus_bleu", s.corpus_bleu ? nlohmann::json(*s.corpus_bleu) : nlohmann::json()},
       {"mean_scores", s.mean_scores},
       {"scored_instances", s.scored_instances},
       {"histograms", s.histograms},
       {"error_type_counts", s.error_type_counts},
       {"instance_count", s.instance_count},
       {"annotation_count", s.annotation_count}};
}

}  // namespace mtwb
