#include <gtest/gtest.h>
#include <httplib.h>

#include "mvl/service.hpp"
#include "mvl/workspace.hpp"
#include "support.hpp"

using namespace mvl;
using io::Json;

namespace {

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    service_ = std::make_unique<Service>(std::make_shared<Workspace>());
    port_ = service_->start("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override { service_->stop(); }

  std::pair<int, Json> post(const std::string& path, const Json& body) {
    auto r = client_->Post(path, body.dump(), "application/json");
    return unpack(r);
  }
  std::pair<int, Json> get(const std::string& path) { return unpack(client_->Get(path)); }
  int del(const std::string& path) { return client_->Delete(path)->status; }

  static std::pair<int, Json> unpack(const httplib::Result& r) {
    EXPECT_TRUE(r);
    if (!r) return {0, nullptr};
    return {r->status, r->body.empty() ? Json() : Json::parse(r->body)};
  }

  std::string four_chain_session() {
    auto [status, body] = post("/v1/sessions", Json{{"A", support::fixture("a4.json")},
                                                    {"B", support::fixture("B3_min.json")},
                                                    {"f", support::fixture("a4_b3_collapse.json")}});
    EXPECT_EQ(status, 201);
    return body["id"];
  }

  std::unique_ptr<Service> service_;
  std::unique_ptr<httplib::Client> client_;
  int port_ = 0;
};

}  // namespace

TEST_F(ServiceTest, FiveChainSessionIsDoneOnCreation) {
  auto [status, body] = post("/v1/sessions", Json{{"A", support::fixture("a5.json")},
                                                  {"B", support::fixture("b7_min.json")},
                                                  {"f", support::fixture("a5_b7_f.json")}});
  EXPECT_EQ(status, 201);
  EXPECT_EQ(body["phase"], "Done");
  EXPECT_EQ(body["shape"], "check");
  auto [s2, result] = get("/v1/sessions/" + body["id"].get<std::string>() + "/result");
  EXPECT_EQ(s2, 200);
  EXPECT_EQ(result["shape"], "check");
  EXPECT_EQ(result["result"]["f"]["image"]["a1"], Json({"0", "b3"}));
}

TEST_F(ServiceTest, ThreeDeclinesFail) {
  const std::string id = four_chain_session();
  const std::string path = "/v1/sessions/" + id + "/select";
  EXPECT_EQ(post(path, Json{{"candidate", nullptr}}).first, 200);
  EXPECT_EQ(post(path, Json("none")).first, 200);
  auto [status, body] = post(path, Json{{"none", true}});
  EXPECT_EQ(status, 200);
  EXPECT_EQ(body["phase"], "Failed");
  EXPECT_EQ(body["shape"], "nil");
  EXPECT_EQ(body["declined"], Json({"SelectRenaming", "SelectTable", "SelectBoth"}));
  EXPECT_EQ(post(path, Json{{"candidate", 0}}).first, 409);
  EXPECT_EQ(get("/v1/sessions/" + id + "/result").second["shape"], "nil");
}

TEST_F(ServiceTest, CandidatePagesHaveNoMorphismsForFourChain) {
  const std::string id = four_chain_session();
  auto [status, page] = get("/v1/sessions/" + id + "/candidates?page=0&size=2");
  EXPECT_EQ(status, 200);
  EXPECT_EQ(page["phase"], "SelectRenaming");
  EXPECT_EQ(page["morphismCount"], 0);
  EXPECT_GE(page["total"].get<int>(), 1);
  for (const auto& item : page["items"]) EXPECT_FALSE(item["metrics"]["morphism"].get<bool>());
  EXPECT_EQ(get("/v1/sessions/" + id + "/candidates?page=-1").first, 400);
}

TEST_F(ServiceTest, SelectionFinishesAndBlocksFurtherSelections) {
  const std::string id = four_chain_session();
  const std::string path = "/v1/sessions/" + id + "/select";
  EXPECT_EQ(post(path, Json{{"candidate", 12345}}).first, 422);
  auto [status, body] = post(path, Json{{"candidate", 0}});
  EXPECT_EQ(status, 200);
  EXPECT_EQ(body["shape"], "renaming");
  EXPECT_EQ(post(path, Json{{"candidate", nullptr}}).first, 409);
  EXPECT_EQ(get("/v1/sessions/" + id).second["phase"], "Done");
}

TEST_F(ServiceTest, EntitiesCrud) {
  auto [s1, created] = post("/v1/algebras", support::fixture("a5.json"));
  EXPECT_EQ(s1, 201);
  const std::string a = created["id"];
  EXPECT_EQ(post("/v1/algebras", support::fixture("a5.json")).first, 200);
  const std::string b = post("/v1/algebras", support::fixture("b7_min.json")).second["id"];
  const std::string f = post("/v1/renamings", support::fixture("a5_b7_f.json")).second["id"];
  auto [s2, bridge] =
      post("/v1/bridges", Json{{"source", a}, {"target", b}, {"renaming", f}});
  EXPECT_EQ(s2, 201);
  EXPECT_EQ(get("/v1/algebras/" + a).second, support::fixture("a5.json"));
  EXPECT_EQ(get("/v1/algebras").second["ids"].size(), 2u);
  EXPECT_EQ(get("/v1/algebras/" + a + "/validate").second["ok"], true);
  EXPECT_EQ(get("/v1/algebras/" + a + "/intervals").second["intervals"].size(), 15u);
  EXPECT_EQ(del("/v1/algebras/" + a), 409);
  EXPECT_EQ(del("/v1/bridges/" + bridge["id"].get<std::string>()), 204);
  EXPECT_EQ(del("/v1/algebras/" + a), 204);
  EXPECT_EQ(get("/v1/algebras/" + a).first, 404);
  EXPECT_EQ(get("/v1/widgets").first, 404);

  // Sessions can name stored entities.
  auto [s3, session] = post("/v1/sessions", Json{{"A", support::fixture("a5.json")},
                                                 {"B", b},
                                                 {"f", f}});
  EXPECT_EQ(s3, 201);
  EXPECT_EQ(session["phase"], "Done");
}

TEST_F(ServiceTest, ErrorStatuses) {
  Json alg = support::fixture("a4.json");
  alg["conj"][1][2] = "zz";
  auto [s1, e1] = post("/v1/algebras", alg);
  EXPECT_EQ(s1, 400);
  EXPECT_EQ(e1["path"], "/conj/1/2");
  alg["conj"][1][2] = "a1";
  alg["conj"][2][1] = "a1";
  EXPECT_EQ(post("/v1/algebras", alg).first, 422);
  EXPECT_EQ(post("/v1/bridges", Json{{"source", "nope"}, {"target", "nope"}, {"renaming", "x"}})
                .first,
            422);
  auto r = client_->Post("/v1/algebras", "{not json", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(get("/v1/sessions/unknown").first, 404);
}
