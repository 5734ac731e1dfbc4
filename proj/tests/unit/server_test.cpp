#include <gtest/gtest.h>

#include <httplib.h>

#include "mtwb/error.hpp"
#include "mtwb/server.hpp"
#include "testing.hpp"

namespace mtwb {
namespace {

using nlohmann::json;

struct Live {
  testing::TempStore t;
  Api api{t.store, AdapterTable()};
  Server server{api, {"127.0.0.1", 0, std::nullopt}};
  int port = server.start();
  httplib::Client client{"127.0.0.1", port};

  std::string make_run(const std::string& name) {
    auto res = client.Post("/api/runs",
                           json{{"name", name}, {"source_lang", "en"}, {"target_lang", "de"}}.dump(),
                           "application/json");
    return json::parse(res->body)["id"];
  }
};

TEST(Server, HealthAndRuns) {
  Live live;
  auto res = live.client.Get("/api/health");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body), live.api.health());
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");

  auto created = live.client.Post(
      "/api/runs", R"({"name": "r", "source_lang": "en", "target_lang": "de"})", "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 201);
  const std::string id = json::parse(created->body)["id"];
  auto one = live.client.Get("/api/runs/" + id);
  EXPECT_EQ(json::parse(one->body)["name"], "r");
  EXPECT_EQ(json::parse(live.client.Get("/api/runs")->body)["runs"].size(), 1u);
}

TEST(Server, StructuredErrors) {
  Live live;
  auto missing = live.client.Get("/api/runs/run_nope");
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(json::parse(missing->body)["error"]["code"], "UnknownRun");

  auto unrouted = live.client.Get("/api/nothing");
  EXPECT_EQ(unrouted->status, 404);
  EXPECT_EQ(json::parse(unrouted->body)["error"]["code"], "NotFound");

  auto bad_json = live.client.Post("/api/search", "{not json", "application/json");
  EXPECT_EQ(bad_json->status, 400);
  EXPECT_EQ(json::parse(bad_json->body)["error"]["details"]["field"], "body");

  auto bad_field = live.client.Post("/api/search", R"({"run_ids": 7})", "application/json");
  EXPECT_EQ(bad_field->status, 400);
  const auto err = json::parse(bad_field->body)["error"];
  EXPECT_EQ(err["code"], "BadRequest");
  EXPECT_EQ(err["details"]["field"], "run_ids");

  const std::string id = live.make_run("r");
  auto bins = live.client.Get("/api/runs/" + id + "/summary?bins=abc");
  EXPECT_EQ(bins->status, 400);
  auto zero = live.client.Get("/api/runs/" + id + "/summary?bins=0");
  EXPECT_EQ(json::parse(zero->body)["error"]["code"], "InvalidBinCount");

  auto parse = live.client.Post(
      "/api/search", json{{"run_ids", {id}}, {"query", "text.source ~"}}.dump(), "application/json");
  EXPECT_EQ(parse->status, 400);
  EXPECT_EQ(json::parse(parse->body)["error"]["code"], "ParseError");
  EXPECT_TRUE(json::parse(parse->body)["error"]["details"].contains("position"));
}

TEST(Server, MultipartIngestAndAnnotations) {
  Live live;
  const std::string id = live.make_run("r");
  httplib::MultipartFormDataItems items = {
      {"spec", R"({"mode": "parallel_files", "fields": {"prediction": 0, "reference": 1}})", "", ""},
      {"files", "a b\nc d\n", "hyp.txt", "text/plain"},
      {"files", "a b\nc e\n", "ref.txt", "text/plain"},
      {"dry_run", "true", "", ""},
  };
  auto preview = live.client.Post("/api/runs/" + id + "/ingest", items);
  ASSERT_TRUE(preview);
  ASSERT_EQ(preview->status, 200) << preview->body;
  EXPECT_EQ(json::parse(preview->body)["extracted"], 2);
  EXPECT_EQ(live.api.get_run(id)["instance_count"], 0);

  items.pop_back();
  auto done = live.client.Post("/api/runs/" + id + "/ingest", items);
  EXPECT_EQ(json::parse(done->body)["appended"]["count"], 2);

  httplib::MultipartFormDataItems records = {
      {"file", R"({"index": 1, "score": 0.5})", "comet.jsonl", "application/jsonl"},
      {"origin", "comet", "", ""},
  };
  auto ann = live.client.Post("/api/runs/" + id + "/annotations", records);
  ASSERT_EQ(ann->status, 200) << ann->body;
  EXPECT_EQ(json::parse(ann->body)["scores_added"], 1);

  auto raw = live.client.Post("/api/runs/" + id + "/annotations?origin=comet",
                              R"({"index": 9, "score": 0.5})", "application/jsonl");
  EXPECT_EQ(raw->status, 404);
  EXPECT_EQ(json::parse(raw->body)["error"]["code"], "UnknownInstance");
}

TEST(Server, EvaluateSearchFeedback) {
  Live live;
  const std::string a = live.make_run("a");
  const std::string b = live.make_run("b");
  for (const auto& [id, pred] : {std::pair{a, "x y"}, std::pair{b, "x y z"}}) {
    auto res = live.client.Post("/api/runs/" + id + "/instances",
                                json::array({{{"source", "s"}, {"prediction", pred}, {"reference", "x y z"}}}).dump(),
                                "application/json");
    ASSERT_EQ(res->status, 200) << res->body;
  }
  auto job = live.client.Post("/api/runs/" + a + "/evaluate", R"({"metrics": ["baseline"]})",
                              "application/json");
  ASSERT_EQ(job->status, 202) << job->body;
  const std::string job_id = json::parse(job->body)["id"];
  live.api.wait_job(job_id);
  EXPECT_EQ(json::parse(live.client.Get("/api/jobs/" + job_id)->body)["state"], "done");

  const json query = {{"run_ids", {a, b}}, {"query", "error.type ~ '%missing content%'"}};
  auto hits = live.client.Post("/api/search", query.dump(), "application/json");
  EXPECT_EQ(json::parse(hits->body), live.api.search(query));
  EXPECT_EQ(json::parse(hits->body)["total"], 1);

  auto groups = live.client.Get("/api/groups?run_ids=" + a + "," + b);
  const std::string key = json::parse(groups->body)["groups"][0]["group_key"];
  auto ranked = live.client.Post("/api/feedback/ranking",
                                 json{{"group_key", key}, {"ordering", {b, a}},
                                      {"session_id", "sess"}, {"consented", true}}.dump(),
                                 "application/json");
  EXPECT_EQ(json::parse(ranked->body)["stored"], true);
  auto exported = live.client.Get("/api/feedback/export");
  EXPECT_EQ(json::parse(exported->body)["ranking"], json({b, a}));
  auto revoked = live.client.Delete("/api/feedback/sess");
  EXPECT_EQ(json::parse(revoked->body)["deleted"], 1);
  EXPECT_EQ(live.client.Get("/api/feedback/export")->body, "");

  auto compare = live.client.Post("/api/dashboard/compare", json{{"run_ids", {a, b}}}.dump(),
                                  "application/json");
  EXPECT_EQ(json::parse(compare->body)["runs"].size(), 2u);
  EXPECT_EQ(live.client.Get("/api/runs/" + a + "/export")->body, live.api.export_run(a));
}

TEST(Server, PortInUse) {
  Live live;
  Server second(live.api, {"127.0.0.1", live.port, std::nullopt});
  try {
    second.start();
    FAIL() << "expected PortInUse";
  } catch (const mtwb::Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPortInUse);
  }
}

TEST(Server, StopUnblocksWait) {
  Live live;
  std::thread waiter([&] { live.server.wait(); });
  live.server.stop();
  waiter.join();
  SUCCEED();
}

}  // namespace
}  // namespace mtwb
