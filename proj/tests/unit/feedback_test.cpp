#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "mtwb/feedback.hpp"
#include "testing.hpp"

namespace mtwb {
namespace {

using testing::add_run;
using testing::TempStore;

struct Fixture {
  TempStore t;
  mtwb::Run a = add_run(t.store, "A", {{"s0", "a0", "r0"}, {"s1", "a1", "r1"}});
  mtwb::Run b = add_run(t.store, "B", {{"s0", "b0", "r0"}, {"s1", "b1", "r1"}});
  std::string key = group_key("s0", "r0");
};

TEST(Feedback, ConsentedIsExported) {
  Fixture f;
  const auto receipt = submit_ranking(f.t.store, {f.key, {f.b.id, f.a.id}, "sess", true, {}});
  EXPECT_TRUE(receipt.stored);
  const auto records = export_feedback(f.t.store);
  ASSERT_EQ(records.size(), 1u);
  const auto& rec = records[0];
  std::vector<std::string> keys;
  for (const auto& [k, v] : rec.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"source", "reference", "outputs", "ranking", "timestamp"}));
  EXPECT_EQ(rec["source"], "s0");
  EXPECT_EQ(rec["ranking"], nlohmann::ordered_json({f.b.id, f.a.id}));
  EXPECT_EQ(rec["outputs"][0]["prediction"], "b0");
  EXPECT_EQ(rec["outputs"][1]["run_name"], "A");
}

TEST(Feedback, NotConsentedIsDiscarded) {
  Fixture f;
  const auto receipt = submit_ranking(f.t.store, {f.key, {f.a.id, f.b.id}, "sess", false, {}});
  EXPECT_FALSE(receipt.stored);
  EXPECT_TRUE(export_feedback(f.t.store).empty());
  EXPECT_EQ(f.t.store.counts().feedback, 0u);
}

TEST(Feedback, RetentionOff) {
  Fixture f;
  const auto receipt =
      submit_ranking(f.t.store, {f.key, {f.a.id, f.b.id}, "sess", true, {}}, {false});
  EXPECT_FALSE(receipt.stored);
  EXPECT_EQ(f.t.store.counts().feedback, 0u);
}

TEST(Feedback, Validation) {
  Fixture f;
  EXPECT_MTWB_ERROR(submit_ranking(f.t.store, {f.key, {f.a.id}, "s", true, {}}),
                    ErrorCode::kNotAPermutation);
  EXPECT_MTWB_ERROR(submit_ranking(f.t.store, {f.key, {f.a.id, f.a.id}, "s", true, {}}),
                    ErrorCode::kNotAPermutation);
  EXPECT_MTWB_ERROR(submit_ranking(f.t.store, {f.key, {f.a.id, f.b.id, "run_x"}, "s", true, {}}),
                    ErrorCode::kNotAPermutation);
  EXPECT_MTWB_ERROR(submit_ranking(f.t.store, {"nokey", {f.a.id, f.b.id}, "s", true, {}}),
                    ErrorCode::kUnknownGroup);
  // Group computed over the given selection only.
  EXPECT_MTWB_ERROR(submit_ranking(f.t.store, {f.key, {f.a.id, f.b.id}, "s", true, {f.a.id}}),
                    ErrorCode::kNotAPermutation);
  EXPECT_NO_THROW(submit_ranking(f.t.store, {f.key, {f.a.id}, "s", true, {f.a.id}}));
  EXPECT_MTWB_ERROR(submit_ranking(f.t.store, {f.key, {f.a.id, f.b.id}, "", true, {}}),
                    ErrorCode::kBadRequest);
}

TEST(Feedback, RevokeDeletesSession) {
  Fixture f;
  const std::string other_key = group_key("s1", "r1");
  for (int i = 0; i < 3; ++i) submit_ranking(f.t.store, {f.key, {f.a.id, f.b.id}, "mine", true, {}});
  submit_ranking(f.t.store, {other_key, {f.b.id, f.a.id}, "theirs", true, {}});
  EXPECT_EQ(revoke_feedback(f.t.store, "mine"), 3u);
  EXPECT_EQ(revoke_feedback(f.t.store, "mine"), 0u);
  EXPECT_EQ(revoke_feedback(f.t.store, "nobody"), 0u);
  const auto records = export_feedback(f.t.store);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0]["source"], "s1");
}

TEST(Feedback, OrderingRoundTrips) {
  Fixture f;
  auto gen = testing::rng(91);
  std::vector<std::vector<std::string>> submitted;
  for (int i = 0; i < 20; ++i) {
    std::vector<std::string> ordering = {f.a.id, f.b.id};
    if (testing::uniform(gen, 0, 1)) std::swap(ordering[0], ordering[1]);
    submit_ranking(f.t.store, {f.key, ordering, "s", true, {}});
    submitted.push_back(ordering);
  }
  const auto records = export_feedback(f.t.store);
  ASSERT_EQ(records.size(), submitted.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i]["ranking"].get<std::vector<std::string>>(), submitted[i]);
  }
}

TEST(Feedback, EmptyExport) {
  TempStore t;
  EXPECT_TRUE(export_feedback(t.store).empty());
  EXPECT_EQ(export_feedback_ndjson(t.store), "");
}

}  // namespace
}  // namespace mtwb
