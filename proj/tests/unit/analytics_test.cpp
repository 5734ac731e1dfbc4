#include <gtest/gtest.h>

#include <numeric>

#include "expect_error.hpp"
#include "mtwb/adapter.hpp"
#include "mtwb/analytics.hpp"
#include "mtwb/evaluation.hpp"
#include "oracles.hpp"
#include "testing.hpp"

namespace mtwb {
namespace {

using testing::add_run;
using testing::TempStore;

std::vector<std::size_t> counts_of(const Histogram& h) {
  std::vector<std::size_t> out;
  for (const auto& b : h.bins) out.push_back(b.count);
  return out;
}

TEST(Histogram, IdenticalValuesShareOneBin) {
  const auto h = histogram(std::vector<double>(10, 3.5));
  EXPECT_EQ(h.total, 10u);
  EXPECT_EQ(h.bins[0].count, 10u);
  for (std::size_t i = 1; i < h.bins.size(); ++i) EXPECT_EQ(h.bins[i].count, 0u);
}

TEST(Histogram, OnePerBin) {
  std::vector<double> values(20);
  std::iota(values.begin(), values.end(), 0.0);
  const auto h = histogram(values, 20, std::make_pair(0.0, 19.0));
  EXPECT_EQ(counts_of(h), std::vector<std::size_t>(20, 1));
  EXPECT_EQ(h.bins.back().upper, 19.0);
}

TEST(Histogram, EmptyInput) {
  const auto h = histogram({});
  EXPECT_EQ(h.total, 0u);
  EXPECT_EQ(h.lo, 0.0);
  EXPECT_EQ(h.hi, 0.0);
  EXPECT_MTWB_ERROR(histogram({1.0}, 0), ErrorCode::kInvalidBinCount);
}

TEST(Histogram, BinsAreContiguous) {
  const auto h = histogram({-3.0, 7.0, 1.0}, 7);
  EXPECT_EQ(h.bins.front().lower, -3.0);
  EXPECT_EQ(h.bins.back().upper, 7.0);
  for (std::size_t i = 1; i < h.bins.size(); ++i) EXPECT_EQ(h.bins[i].lower, h.bins[i - 1].upper);
  EXPECT_EQ(h.bins.back().count, 1u);
}

TEST(Histogram, MatchesEdgeOracle) {
  auto gen = testing::rng(71);
  std::uniform_real_distribution<double> value(-50, 50);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t bins = testing::uniform(gen, 1, 25);
    std::vector<double> values(testing::uniform(gen, 0, 60));
    for (auto& v : values) v = value(gen);
    // Boundary values: exact edges of a [lo, hi] range.
    const double lo = -10, hi = 10;
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i) values.push_back(lo + width * static_cast<double>(i));
    if (trial % 3 == 0) {
      const auto h = histogram(values, bins, std::make_pair(lo, hi));
      ASSERT_EQ(h.total, values.size());
      ASSERT_EQ(counts_of(h), oracle::bin_counts(values, lo, hi, bins));
    } else {
      const auto h = histogram(values, bins);
      ASSERT_EQ(h.total, values.size());
      const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
      ASSERT_EQ(counts_of(h), oracle::bin_counts(values, *mn, *mx, bins));
    }
  }
}

TEST(RunSummary, IdentityCorpus) {
  TempStore t;
  const mtwb::Run run = add_run(t.store, "r", {{"s", "a b c d", "a b c d"}, {"s", "e f g h", "e f g h"}},
                          {"bleu", "baseline"});
  Evaluator ev(t.store, AdapterTable());
  ASSERT_EQ(ev.wait(ev.start(run.id, {}, {}).id).state, JobState::kDone);
  const auto s = run_summary(t.store, run.id);
  ASSERT_TRUE(s.corpus_bleu);
  EXPECT_EQ(s.corpus_bleu->score, 100.0);
  EXPECT_TRUE(s.error_type_counts.empty());
  EXPECT_EQ(s.mean_scores.at("baseline"), 0.0);
}

TEST(RunSummary, SortedErrorTypes) {
  TempStore t;
  const mtwb::Run run = add_run(t.store, "r", {{"s", "p0", "r"}, {"s", "p1", "r"}, {"s", "p2", "r"}});
  ingest_annotations(
      t.store, run.id,
      R"({"index": 0, "errors": [{"type": "missing content", "severity": "major", "span": null, "explanation": ""}, {"type": "extraneous content", "severity": "minor", "span": null, "explanation": ""}]})"
      "\n"
      R"({"index": 1, "errors": [{"type": "missing content", "severity": "major", "span": null, "explanation": ""}]})"
      "\n"
      R"({"index": 2, "score": 4, "errors": [{"type": "missing content", "severity": "minor", "span": null, "explanation": ""}]})",
      "instructscore");
  const auto s = run_summary(t.store, run.id);
  ASSERT_EQ(s.error_type_counts.size(), 2u);
  EXPECT_EQ(s.error_type_counts[0].error_type, "missing content");
  EXPECT_EQ(s.error_type_counts[0].count, 3u);
  EXPECT_EQ(s.error_type_counts[1].error_type, "extraneous content");
  EXPECT_EQ(s.annotation_count, 4u);
  EXPECT_NEAR(s.mean_scores.at("instructscore"), (-6.0 - 5.0 + 4.0) / 3, 1e-12);
}

TEST(RunSummary, TiesSortByType) {
  TempStore t;
  const mtwb::Run run = add_run(t.store, "r", {{"s", "p0", "r"}});
  ingest_annotations(
      t.store, run.id,
      R"({"index": 0, "errors": [{"type": "b", "severity": "minor", "span": null, "explanation": ""}, {"type": "a", "severity": "minor", "span": null, "explanation": ""}]})",
      "x");
  const auto s = run_summary(t.store, run.id);
  EXPECT_EQ(s.error_type_counts[0].error_type, "a");
}

TEST(RunSummary, NoScores) {
  TempStore t;
  const mtwb::Run run = add_run(t.store, "r", {{"s", "p0", "r"}});
  const auto s = run_summary(t.store, run.id);
  EXPECT_TRUE(s.mean_scores.empty());
  EXPECT_TRUE(s.histograms.empty());
  EXPECT_FALSE(s.corpus_bleu);
  EXPECT_MTWB_ERROR(run_summary(t.store, "run_none"), ErrorCode::kUnknownRun);
}

std::string scores_stream(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += "{\"index\": " + std::to_string(i) + ", \"score\": " + std::to_string(values[i]) + "}\n";
  }
  return out;
}

TEST(CompareRuns, SharedRangeSpansUnion) {
  TempStore t;
  const mtwb::Run a = add_run(t.store, "a", std::vector<testing::Triple>(3, {"s", "p", "r"}));
  const mtwb::Run b = add_run(t.store, "b", std::vector<testing::Triple>(3, {"s", "p", "r"}));
  ingest_annotations(t.store, a.id, scores_stream({0.0, 0.5, 1.0}), "comet");
  ingest_annotations(t.store, b.id, scores_stream({2.0, 2.5, 3.0}), "comet");
  const auto stats = compare_runs(t.store, {a.id, b.id});
  ASSERT_EQ(stats.size(), 2u);
  for (const auto& s : stats) {
    const auto& h = s.histograms.at("comet");
    EXPECT_EQ(h.lo, 0.0);
    EXPECT_EQ(h.hi, 3.0);
    EXPECT_EQ(h.total, 3u);
  }
}

TEST(CompareRuns, SingleRunEqualsSummary) {
  TempStore t;
  const mtwb::Run a = add_run(t.store, "a", std::vector<testing::Triple>(4, {"s", "p", "r"}));
  ingest_annotations(t.store, a.id, scores_stream({0.1, 0.9, 0.4, 0.4}), "comet");
  const auto single = compare_runs(t.store, {a.id});
  const auto summary = run_summary(t.store, a.id);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(nlohmann::json(single[0]), nlohmann::json(summary));
}

TEST(CompareRuns, DisjointMetrics) {
  TempStore t;
  const mtwb::Run a = add_run(t.store, "a", {{"s", "p", "r"}});
  const mtwb::Run b = add_run(t.store, "b", {{"s", "p", "r"}});
  ingest_annotations(t.store, a.id, scores_stream({0.3}), "comet");
  ingest_annotations(t.store, b.id, scores_stream({-2}), "instructscore");
  const auto stats = compare_runs(t.store, {a.id, b.id});
  EXPECT_EQ(stats[0].histograms.count("instructscore"), 0u);
  EXPECT_EQ(stats[1].histograms.count("comet"), 0u);
  EXPECT_MTWB_ERROR(compare_runs(t.store, {a.id, "run_x"}), ErrorCode::kUnknownRun);
}

}  // namespace
}  // namespace mtwb
