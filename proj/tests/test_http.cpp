#include <gtest/gtest.h>

#include <thread>

#include "httplib.h"
#include "permwordle/http_server.hpp"

using namespace permwordle;

namespace {

class LiveServer : public ::testing::Test {
 protected:
  void SetUp() override {
    install_routes(server_, manager_, "http://localhost:5173");
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  httplib::Result post(const std::string& path, const std::string& body) {
    return client_->Post(path, body, "application/json");
  }

  Json create(const std::string& body) {
    auto res = post("/api/v1/sessions", body);
    EXPECT_TRUE(res);
    EXPECT_EQ(res->status, 201) << res->body;
    return Json::parse(res->body);
  }

  std::string feedback_path(const Json& session) {
    return "/api/v1/sessions/" + session["id"].get<std::string>() + "/feedback";
  }

  SessionManager manager_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace

TEST_F(LiveServer, NineCardOverHttp) {
  const Json s = create(R"({"n":9,"s":1,"strategy":"cycle"})");
  EXPECT_EQ(s["guess"].dump(), "[1,2,3,4,5,6,7,8,9]");
  EXPECT_EQ(s["round"], 1);
  EXPECT_EQ(s["candidate_count"], 362880);
  const std::vector<std::pair<std::string, std::string>> rounds{
      {"[2,5,9]", "[8,2,1,3,5,4,6,7,9]"},
      {"[2,5,9]", "[7,2,8,1,5,3,4,6,9]"},
      {"[1,2,5,6,8,9]", "[7,2,4,8,5,3,1,6,9]"},
  };
  int round = 2;
  for (const auto& [fb, next] : rounds) {
    auto res = post(feedback_path(s), R"({"positions":)" + fb + "}");
    ASSERT_EQ(res->status, 200) << res->body;
    const Json j = Json::parse(res->body);
    EXPECT_EQ(j["guess"].dump(), next);
    EXPECT_EQ(j["round"], round++);
    EXPECT_FALSE(j["solved"].get<bool>());
  }
  auto res = post(feedback_path(s), R"({"positions":[1,2,3,4,5,6,7,8,9]})");
  ASSERT_EQ(res->status, 200);
  const Json done = Json::parse(res->body);
  EXPECT_TRUE(done["solved"].get<bool>());
  EXPECT_EQ(done["round"], 4);
  EXPECT_FALSE(done.contains("guess"));

  auto view = client_->Get("/api/v1/sessions/" + s["id"].get<std::string>());
  ASSERT_EQ(view->status, 200);
  const Json v = Json::parse(view->body);
  EXPECT_EQ(v["steps"].size(), 4u);
  EXPECT_EQ(v["steps"][2]["feedback"].dump(), "[1,2,5,6,8,9]");
  EXPECT_TRUE(v["solved"].get<bool>());
}

TEST_F(LiveServer, SuitedEncoding) {
  const Json s = create(R"({"n":3,"s":2})");
  EXPECT_EQ(s["guess"].dump(), R"({"s":2,"cards":[[0,1],[0,2],[0,3]]})");
  EXPECT_EQ(s["strategy"], "cycle");
}

TEST_F(LiveServer, Contradiction409) {
  const Json s = create(R"({"n":3})");
  EXPECT_EQ(post(feedback_path(s), R"({"positions":[]})")->status, 200);
  EXPECT_EQ(post(feedback_path(s), R"({"positions":[]})")->status, 200);
  auto res = post(feedback_path(s), R"({"positions":[]})");
  ASSERT_EQ(res->status, 409);
  const Json j = Json::parse(res->body);
  EXPECT_EQ(j["error"], "inconsistent");
  EXPECT_EQ(j["contradicting_round"], 2);
}

TEST_F(LiveServer, ErrorStatuses) {
  EXPECT_EQ(post("/api/v1/sessions", "{nope")->status, 400);
  EXPECT_EQ(post("/api/v1/sessions", "[1]")->status, 400);
  EXPECT_EQ(post("/api/v1/sessions", R"({"n":0})")->status, 422);
  EXPECT_EQ(post("/api/v1/sessions", R"({"n":"3"})")->status, 422);
  EXPECT_EQ(post("/api/v1/sessions", R"({"n":3,"strategy":"greedy"})")->status, 422);
  EXPECT_EQ(post("/api/v1/sessions", R"({"n":8,"strategy":"optimal"})")->status, 422);
  EXPECT_EQ(post("/api/v1/sessions/abc123/feedback", R"({"positions":[]})")->status, 404);
  EXPECT_EQ(client_->Get("/api/v1/sessions/abc123")->status, 404);
  EXPECT_EQ(client_->Delete("/api/v1/sessions/abc123")->status, 404);
  const Json s = create(R"({"n":4})");
  EXPECT_EQ(post(feedback_path(s), R"({"positions":[7]})")->status, 422);
  EXPECT_EQ(post(feedback_path(s), R"({"positions":"1"})")->status, 422);
  EXPECT_EQ(post(feedback_path(s), R"({})")->status, 422);
  EXPECT_EQ(post(feedback_path(s), "garbage")->status, 400);
}

TEST_F(LiveServer, DeleteAndCors) {
  const Json s = create(R"({"n":5,"strategy":"optimal"})");
  EXPECT_EQ(s["guess"].dump(), "[1,2,3,4,5]");
  const std::string path = "/api/v1/sessions/" + s["id"].get<std::string>();
  auto get = client_->Get(path);
  EXPECT_EQ(get->get_header_value("Access-Control-Allow-Origin"), "http://localhost:5173");
  auto pre = client_->Options(path);
  EXPECT_EQ(pre->status, 204);
  EXPECT_NE(pre->get_header_value("Access-Control-Allow-Methods").find("DELETE"), std::string::npos);
  EXPECT_EQ(client_->Delete(path)->status, 204);
  EXPECT_EQ(client_->Get(path)->status, 404);
}

TEST_F(LiveServer, OptimalSessionGuesses) {
  const Json s = create(R"({"n":4,"strategy":"optimal"})");
  auto res = post(feedback_path(s), R"({"positions":[]})");
  ASSERT_EQ(res->status, 200);
  const Json j = Json::parse(res->body);
  EXPECT_EQ(j["candidate_count"], 9);
  EXPECT_TRUE(j["guess"].is_array());
}
