// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and time limits are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <httplib.h>

#include "cli.hpp"
#include "mtwb/adapter.hpp"
#include "mtwb/analytics.hpp"
#include "mtwb/annotate.hpp"
#include "mtwb/api.hpp"
#include "mtwb/bleu.hpp"
#include "mtwb/error.hpp"
#include "mtwb/extraction.hpp"
#include "mtwb/feedback.hpp"
#include "mtwb/ingestion.hpp"
#include "mtwb/search.hpp"
#include "mtwb/server.hpp"
#include "mtwb/unicode.hpp"
#include "oracles.hpp"
#include "search_fixture.hpp"
#include "testing.hpp"

namespace {

using namespace mtwb;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kBleuTolerance = 1e-9;
constexpr double kBleuSeconds = 5.0;
constexpr double kQuerySeconds = 10.0;
constexpr double kAdapterIngestSeconds = 2.0;

// Collects the first few mismatches of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failures_ == 0; }
  std::string notes() const {
    return failures_ <= 3 ? notes_ : notes_ + " (+" + std::to_string(failures_ - 3) + " more)";
  }

 private:
  std::size_t failures_ = 0;
  std::string notes_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::fixed << v;
  return s.str();
}

const std::vector<std::string> kWords = {"the", "cat", "sat", "on", "mat", "a",
                                         "dog", "ran", "red", "big"};

std::vector<std::string> random_tokens(std::mt19937_64& gen, std::size_t lo, std::size_t hi) {
  std::vector<std::string> out(testing::uniform(gen, lo, hi));
  for (auto& t : out) t = testing::pick(gen, kWords);
  return out;
}

Check bleu_oracle_equivalence(std::string& detail) {
  Check c;
  auto gen = testing::rng(1001);
  const auto start = Clock::now();
  for (int corpus = 0; corpus < 200; ++corpus) {
    std::vector<BleuPair> pairs;
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> tokens;
    const std::size_t n = testing::uniform(gen, 1, 10);
    for (std::size_t i = 0; i < n; ++i) {
      auto hyp = random_tokens(gen, 1, 12);
      auto ref = random_tokens(gen, 1, 12);
      pairs.push_back({testing::join(hyp), testing::join(ref)});
      tokens.emplace_back(std::move(hyp), std::move(ref));
    }
    for (bool add_one : {false, true}) {
      const auto got = corpus_bleu(pairs, 4, add_one ? Smoothing::kAddOne : Smoothing::kNone);
      const auto want = oracle::bleu(tokens, 4, add_one);
      c.expect(std::abs(got.score - want.score) <= kBleuTolerance,
               "corpus " + std::to_string(corpus) + " score " + std::to_string(got.score) +
                   " vs " + std::to_string(want.score));
      c.expect(std::abs(got.brevity_penalty - want.brevity_penalty) <= kBleuTolerance,
               "corpus " + std::to_string(corpus) + " brevity penalty");
      for (std::size_t k = 0; k < 4; ++k) {
        c.expect(std::abs(got.precisions.at(k) - want.precisions.at(k)) <= kBleuTolerance,
                 "corpus " + std::to_string(corpus) + " precision " + std::to_string(k + 1));
      }
    }
  }
  std::size_t identity_exact = 0;
  for (int corpus = 0; corpus < 200; ++corpus) {
    std::vector<BleuPair> pairs;
    const std::size_t n = testing::uniform(gen, 1, 10);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string text = testing::join(random_tokens(gen, 4, 12));
      pairs.push_back({text, text});
    }
    const bool exact = corpus_bleu(pairs).score == 100.0;
    identity_exact += exact;
    c.expect(exact, "identity corpus " + std::to_string(corpus) + " below 100");
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < kBleuSeconds, "took " + fmt(elapsed) + " s");
  detail = "400 scorings within 1e-9, " +
           std::to_string(identity_exact) + "/200 identity corpora at 100, " + fmt(elapsed) + " s";
  return c;
}

Check bleu_hand_count(std::string& detail) {
  Check c;
  const std::string hyp = "the cat sat on the mat";
  const std::string ref = "the cat is on the mat";
  const auto got = corpus_bleu({{hyp, ref}});
  const std::vector<std::size_t> matches = {5, 3, 1, 0};
  const std::vector<std::size_t> totals = {6, 5, 4, 3};
  c.expect(got.matches == matches, "clipped matches differ");
  c.expect(got.totals == totals, "n-gram totals differ");
  for (std::size_t k = 0; k < 4; ++k) {
    const double want = static_cast<double>(matches[k]) / static_cast<double>(totals[k]);
    c.expect(std::abs(got.precisions.at(k) - want) <= kBleuTolerance,
             "precision " + std::to_string(k + 1));
  }
  c.expect(got.brevity_penalty == 1.0, "brevity penalty " + std::to_string(got.brevity_penalty));
  c.expect(got.score == 0.0, "unsmoothed score with a zero precision must be 0");
  const auto oracle_result = oracle::bleu({{{"the", "cat", "sat", "on", "the", "mat"},
                                            {"the", "cat", "is", "on", "the", "mat"}}});
  c.expect(oracle_result.precisions == got.precisions, "oracle disagrees");
  detail = "precisions [5/6, 3/5, 1/4, 0/3], BP " + fmt(got.brevity_penalty);
  return c;
}

std::set<std::string> member_ids(const SearchResult& r) {
  std::set<std::string> ids;
  for (const auto& g : r.groups) {
    for (const auto& m : g.members) ids.insert(m.instance.id);
  }
  return ids;
}

Check query_algebra(std::string& detail) {
  Check c;
  testing::TempStore t;
  auto gen = testing::rng(1003);
  const auto fx = testing::build_search_fixture(t.store, gen, 200, 2);
  const auto all = PageRequest::make(1, kMaxPageSize);
  const auto start = Clock::now();
  std::size_t nonempty = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const SearchQuery q = testing::random_query(gen, 4);
    const auto r = execute_query(t.store, q, fx.run_ids, all);
    const auto ids = member_ids(r);
    nonempty += !ids.empty();
    c.expect(ids == testing::oracle_matches(fx, q), "instances differ for " + query_to_text(q));
    const std::set<std::string> errors(r.matched_error_ids.begin(), r.matched_error_ids.end());
    c.expect(errors == testing::oracle_matched_errors(fx, q),
             "matched errors differ for " + query_to_text(q));
  }
  std::size_t contradictions = 0;
  for (int trial = 0; trial < 50; ++trial) {
    SearchQuery q = testing::random_query(gen, 1);
    if (q.clauses.empty()) continue;
    SearchClause negated = q.clauses[0];
    negated.conjunction = Conjunction::kAndNot;
    q.clauses.push_back(negated);
    ++contradictions;
    c.expect(execute_query(t.store, q, fx.run_ids, all).total == 0,
             "A AND NOT A nonempty for " + query_to_text(q));
  }
  const auto everything = execute_query(t.store, {}, fx.run_ids, all);
  c.expect(member_ids(everything).size() == fx.instances.size(), "empty query misses instances");
  const double elapsed = seconds_since(start);
  c.expect(elapsed < kQuerySeconds, "took " + fmt(elapsed) + " s");
  detail = "500 queries (" + std::to_string(nonempty) + " nonempty), " +
           std::to_string(contradictions) + " contradictions, " + fmt(elapsed) + " s";
  return c;
}

Check baseline_annotator(std::string& detail) {
  Check c;
  auto gen = testing::rng(1004);
  for (int i = 0; i < 100; ++i) {
    const std::string x = testing::join(random_tokens(gen, 0, 15));
    c.expect(baseline_annotate(x, x).empty(), "identity annotated: '" + x + "'");
  }
  std::size_t spans = 0;
  for (int i = 0; i < 500; ++i) {
    const std::string pred = testing::join(random_tokens(gen, 0, 12));
    const std::string ref = testing::join(random_tokens(gen, 0, 12));
    const std::size_t len = unicode::length(pred);
    for (const auto& a : baseline_annotate(pred, ref)) {
      ++spans;
      c.expect(a.span.start <= a.span.end && a.span.end <= len,
               "span out of bounds for '" + pred + "'");
      if (a.error_type == kMissingContent) c.expect(a.span.start == a.span.end, "omission has width");
    }
  }
  const std::string reference =
      "The committee approved the budget on Monday, and the new rules take effect next year.";
  const std::string truncated = "The committee approved the budget on Monday,";
  const auto found = baseline_annotate(truncated, reference);
  const std::size_t end = unicode::length(truncated);
  c.expect(found.size() == 1, std::to_string(found.size()) + " annotations on the truncation");
  if (found.size() == 1) {
    c.expect(found[0].error_type == kMissingContent, "type " + found[0].error_type);
    c.expect(found[0].span.start == end && found[0].span.end == end, "not anchored at end");
  }
  detail = "100 identities clean, " + std::to_string(spans) + " spans in bounds, truncation -> " +
           std::to_string(found.size()) + " missing-content anchor at " + std::to_string(end);
  return c;
}

struct Annotated {
  std::string source, prediction, reference;
  double score;
  std::vector<std::tuple<std::string, std::string, std::size_t, std::size_t, std::string>> errors;
};

Check round_trips(std::string& detail) {
  Check c;
  testing::TempStore t;
  auto gen = testing::rng(1005);
  std::vector<Annotated> data;
  std::string jsonl, records;
  for (std::size_t i = 0; i < 60; ++i) {
    Annotated d;
    d.source = "源 " + std::to_string(i) + " " + testing::join(random_tokens(gen, 1, 5));
    d.prediction = testing::join(random_tokens(gen, 1, 8)) + " \"q\"";
    d.reference = testing::join(random_tokens(gen, 1, 8));
    d.score = -static_cast<double>(testing::uniform(gen, 0, 25)) / 4.0;
    const std::size_t len = unicode::length(d.prediction);
    for (std::size_t e = testing::uniform(gen, 0, 3); e > 0; --e) {
      const std::size_t a = testing::uniform(gen, 0, len);
      const std::size_t b = testing::uniform(gen, a, len);
      d.errors.emplace_back(testing::pick(gen, std::vector<std::string>{"missing content", "mistranslation", "grammar"}),
                            testing::uniform(gen, 0, 1) ? "major" : "minor", a, b,
                            "explanation " + std::to_string(e));
    }
    jsonl += json{{"src", d.source}, {"hyp", d.prediction}, {"ref", d.reference}}.dump() + "\n";
    json errs = json::array();
    for (const auto& [type, sev, a, b, expl] : d.errors) {
      errs.push_back({{"type", type}, {"severity", sev}, {"span", {a, b}}, {"explanation", expl}});
    }
    records += json{{"index", i}, {"score", d.score}, {"errors", errs}}.dump() + "\n";
    data.push_back(std::move(d));
  }

  const Run first = testing::add_run(t.store, "first", {});
  const auto spec = ExtractionSpec::from_json(
      {{"mode", "jsonl_fields"},
       {"fields", {{"source", "src"}, {"prediction", "hyp"}, {"reference", "ref"}}}});
  ingest_file(t.store, first.id, std::vector<std::string>{jsonl}, spec);
  ingest_annotations(t.store, first.id, records, "instructscore");

  const Run second = testing::add_run(t.store, "second", {});
  const std::string exported = export_run_ndjson(t.store, first.id);
  import_run(t.store, second.id, exported);

  const auto insts = t.store.instances(second.id);
  std::map<std::string, std::vector<ErrorAnnotation>> errors;
  for (auto& a : t.store.annotations_for_run(second.id)) errors[a.instance_id].push_back(a);
  std::map<std::string, double> scores;
  for (const auto& s : t.store.scores_for_run(second.id)) {
    if (s.metric == "instructscore") scores[s.instance_id] = s.value;
  }
  c.expect(insts.size() == data.size(), "instance count " + std::to_string(insts.size()));
  for (std::size_t i = 0; i < std::min(insts.size(), data.size()); ++i) {
    const auto& d = data[i];
    const auto& inst = insts[i];
    c.expect(inst.source == d.source && inst.prediction == d.prediction &&
                 inst.reference == d.reference,
             "texts differ at " + std::to_string(i));
    c.expect(scores.count(inst.id) && scores[inst.id] == d.score, "score differs at " + std::to_string(i));
    const auto& got = errors[inst.id];
    c.expect(got.size() == d.errors.size(), "error count differs at " + std::to_string(i));
    for (std::size_t e = 0; e < std::min(got.size(), d.errors.size()); ++e) {
      const auto& [type, sev, a, b, expl] = d.errors[e];
      c.expect(got[e].error_type == type && severity_name(got[e].severity) == sev &&
                   got[e].span.start == a && got[e].span.end == b && got[e].explanation == expl &&
                   got[e].origin == "instructscore",
               "error differs at " + std::to_string(i));
    }
  }
  c.expect(export_run_ndjson(t.store, second.id) == exported, "second export differs");

  // 1000-record adapter file.
  std::vector<testing::Triple> triples;
  std::string big;
  for (std::size_t i = 0; i < 1000; ++i) {
    const std::string pred = testing::join(random_tokens(gen, 2, 10));
    triples.push_back({"s" + std::to_string(i), pred, "r"});
    big += json{{"index", i},
                {"score", -static_cast<double>(i % 9)},
                {"errors", json::array({{{"type", "missing content"},
                                         {"severity", "minor"},
                                         {"span", {0, 1}},
                                         {"explanation", "x"}}})}}
               .dump() +
           "\n";
  }
  const Run bulk = testing::add_run(t.store, "bulk", triples);
  const auto start = Clock::now();
  const auto counts = ingest_annotations(t.store, bulk.id, big, "instructscore");
  const double elapsed = seconds_since(start);
  c.expect(elapsed < kAdapterIngestSeconds, "1000 records took " + fmt(elapsed) + " s");
  c.expect(counts.scores_added == 1000 && counts.errors_added == 1000, "bulk counts wrong");
  const auto before = t.store.counts();
  ingest_annotations(t.store, bulk.id, big, "instructscore");
  c.expect(t.store.counts() == before, "re-ingestion changed row counts");
  detail = "60-instance round trip, 1000 records in " + fmt(elapsed) + " s, re-ingest stable";
  return c;
}

Check analytics(std::string& detail) {
  Check c;
  auto gen = testing::rng(1006);
  std::uniform_real_distribution<double> value(-10, 10);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t bins = testing::uniform(gen, 1, 30);
    std::vector<double> values(testing::uniform(gen, 0, 100));
    for (auto& v : values) v = value(gen);
    if (trial % 2 == 0) {
      // Exact bin edges of the observed range.
      const double lo = values.empty() ? -1 : *std::min_element(values.begin(), values.end());
      const double hi = values.empty() ? 1 : *std::max_element(values.begin(), values.end());
      for (std::size_t i = 0; i <= bins; ++i) {
        values.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins));
      }
    }
    if (trial % 10 == 0) values.assign(values.size(), 2.5);
    const auto h = histogram(values, bins);
    std::size_t sum = 0;
    for (const auto& b : h.bins) sum += b.count;
    c.expect(sum == values.size() && h.total == values.size() && h.bins.size() == bins,
             "counts sum " + std::to_string(sum) + " of " + std::to_string(values.size()));
  }

  testing::TempStore t;
  const Run a = testing::add_run(t.store, "a", std::vector<testing::Triple>(4, {"s", "p", "r"}));
  const Run b = testing::add_run(t.store, "b", std::vector<testing::Triple>(4, {"s", "p", "r"}));
  auto stream = [](std::vector<double> scores, std::vector<std::vector<std::string>> types) {
    std::string out;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      json errs = json::array();
      for (const auto& ty : types[i]) {
        errs.push_back({{"type", ty}, {"severity", "minor"}, {"span", nullptr}, {"explanation", ""}});
      }
      out += json{{"index", i}, {"score", scores[i]}, {"errors", errs}}.dump() + "\n";
    }
    return out;
  };
  ingest_annotations(t.store, a.id,
                     stream({0, 0.25, 0.75, 1}, {{"x"}, {"y", "x"}, {"z", "y", "x"}, {}}), "comet");
  ingest_annotations(t.store, b.id, stream({2, 2.5, 2.5, 3}, {{}, {}, {}, {}}), "comet");
  const auto summary = run_summary(t.store, a.id);
  const auto& types = summary.error_type_counts;
  c.expect(types.size() == 3, "distinct error types " + std::to_string(types.size()));
  for (std::size_t i = 1; i < types.size(); ++i) {
    c.expect(types[i - 1].count >= types[i].count, "error types not descending");
  }
  const auto stats = compare_runs(t.store, {a.id, b.id});
  for (const auto& s : stats) {
    const auto& h = s.histograms.at("comet");
    c.expect(h.lo == 0.0 && h.hi == 3.0, "range [" + fmt(h.lo) + ", " + fmt(h.hi) + "]");
  }
  std::string counts;
  for (const auto& ty : types) counts += (counts.empty() ? "" : ", ") + std::to_string(ty.count);
  detail = "1000 value sets summed, error types [" + counts + "], shared range [0, 3]";
  return c;
}

Check feedback_lifecycle(std::string& detail) {
  Check c;
  testing::TempStore t;
  const Run a = testing::add_run(t.store, "a", {{"s", "pa", "r"}});
  const Run b = testing::add_run(t.store, "b", {{"s", "pb", "r"}});
  const std::string key = group_key("s", "r");
  const auto stored = submit_ranking(t.store, {key, {b.id, a.id}, "session", true, {}});
  const auto records = export_feedback(t.store);
  c.expect(stored.stored && records.size() == 1, "consented ranking not exported");
  if (records.size() == 1) {
    const auto& r = records[0];
    c.expect(r["source"] == "s" && r["reference"] == "r" && r["outputs"].size() == 2 &&
                 r["ranking"] == nlohmann::ordered_json({b.id, a.id}),
             "exported record content");
  }
  c.expect(revoke_feedback(t.store, "session") == 1, "revoke count");
  c.expect(export_feedback(t.store).empty(), "export not empty after revoke");
  bool rejected = false;
  try {
    submit_ranking(t.store, {key, {a.id, a.id}, "session", true, {}});
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::kNotAPermutation;
  }
  c.expect(rejected, "non-permutation accepted");
  const auto discarded = submit_ranking(t.store, {key, {a.id, b.id}, "other", false, {}});
  c.expect(!discarded.stored && t.store.counts().feedback == 0, "unconsented ranking persisted");
  detail = "submit, export, revoke, reject, discard";
  return c;
}

Check cli_api_parity(std::string& detail) {
  Check c;
  testing::TempDir dir;
  const std::string db = dir.file("parity.db").string();
  auto gen = testing::rng(1008);

  auto cli = [&](std::vector<std::string> args, std::string* out_text = nullptr) {
    args.insert(args.begin(), {"--db", db, "--json"});
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    c.expect(code == 0, "cli failed: " + err.str());
    if (out_text) *out_text = out.str();
    return code == 0 && !out.str().empty() ? json::parse(out.str()) : json();
  };

  // System A omits content more often than system B. Indices below 40 share
  // their (source, reference) pair across the two runs.
  std::map<std::pair<std::string, std::string>, bool> oracle_groups;
  std::vector<std::string> run_ids;
  std::vector<std::string> references;
  for (std::size_t i = 0; i < 50; ++i) {
    references.push_back("reference " + std::to_string(i) + " " + testing::join(random_tokens(gen, 2, 6)));
  }
  for (const std::string name : {"system-a", "system-b"}) {
    const std::string id = cli({"create-run", "--name", name, "--source-lang", "zh",
                                "--target-lang", "en"})["id"];
    run_ids.push_back(id);
    std::string instances, records;
    for (std::size_t i = 0; i < 50; ++i) {
      const std::string source = "源句 " + std::to_string(i < 40 ? i : i + 100 * run_ids.size());
      const std::string& reference = references[i];
      const std::string prediction = testing::join(random_tokens(gen, 2, 8));
      instances += json{{"source", source}, {"prediction", prediction}, {"reference", reference}}.dump() + "\n";
      json errs = json::array();
      const bool omits = testing::uniform(gen, 0, 9) < (name == "system-a" ? 4 : 1);
      if (omits) {
        const std::size_t end = unicode::length(prediction);
        errs.push_back({{"type", "Output is missing content present in the reference"},
                        {"severity", "major"},
                        {"span", {end, end}},
                        {"explanation", "omitted final clause"}});
      }
      if (testing::uniform(gen, 0, 2) == 0) {
        errs.push_back({{"type", "mistranslation"}, {"severity", "minor"}, {"span", nullptr},
                        {"explanation", "word choice"}});
      }
      records += json{{"index", i}, {"score", omits ? -5.0 : -1.0}, {"errors", errs}}.dump() + "\n";
      auto& matched = oracle_groups[{source, reference}];
      matched = matched || omits;
    }
    cli({"add", id, "--file", dir.write(name + ".jsonl", instances)});
    cli({"annotate", id, dir.write(name + ".scores.jsonl", records), "--origin", "instructscore"});
  }
  std::size_t brute = 0;
  for (const auto& [key, matched] : oracle_groups) brute += matched;

  const std::string runs = run_ids[0] + "," + run_ids[1];
  const std::string query = "error.type ~ '%missing content%'";
  const json cli_doc = cli({"search", "--runs", runs, "--query", query, "--page-size", "200"});

  Store store(db);
  Api api(store, AdapterTable());
  Server server(api, {"127.0.0.1", 0, std::nullopt});
  const int port = server.start();
  httplib::Client client("127.0.0.1", port);
  const auto res = client.Post("/api/search",
                               json{{"run_ids", run_ids}, {"query", query}, {"page_size", 200}}.dump(),
                               "application/json");
  std::size_t api_total = 0;
  if (res && res->status == 200) {
    const json api_doc = json::parse(res->body);
    api_total = api_doc["total"];
    c.expect(api_doc == cli_doc, "CLI and API documents differ");
  } else {
    c.expect(false, "POST /api/search failed");
  }
  server.stop();
  const std::size_t cli_total = cli_doc.is_null() ? 0 : cli_doc["total"].get<std::size_t>();
  c.expect(cli_total == api_total && api_total == brute,
           "cli " + std::to_string(cli_total) + ", api " + std::to_string(api_total) +
               ", brute force " + std::to_string(brute));
  c.expect(brute > 0, "fixture has no matching groups");
  detail = "cli " + std::to_string(cli_total) + " = api " + std::to_string(api_total) +
           " = brute force " + std::to_string(brute) + " groups";
  return c;
}

struct Criterion {
  const char* name;
  std::function<Check(std::string&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"bleu-oracle-equivalence", bleu_oracle_equivalence},
      {"bleu-hand-count", bleu_hand_count},
      {"query-algebra", query_algebra},
      {"baseline-annotator", baseline_annotator},
      {"round-trips", round_trips},
      {"analytics", analytics},
      {"feedback-lifecycle", feedback_lifecycle},
      {"cli-api-parity", cli_api_parity},
  };
  int failed = 0;
  for (const auto& criterion : criteria) {
    std::string detail;
    Check check;
    try {
      check = criterion.run(detail);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    if (check.ok()) {
      std::cout << "PASS " << criterion.name << ": " << detail << "\n";
    } else {
      ++failed;
      std::cout << "FAIL " << criterion.name << ": " << check.notes() << "\n";
    }
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
