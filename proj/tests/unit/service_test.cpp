#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "honeybee/service.hpp"

using namespace honeybee;

namespace {

const char* kStrip3 =
    R"({"k":3,"cells":[{"q":0,"r":0,"color":0},{"q":1,"r":0,"color":1},{"q":2,"r":0,"color":2}],)"
    R"("start_a":[0,0],"start_b":[2,0]})";

// 0 1 2 1 0 in a row; A starts left, B right.
const char* kStrip5 =
    R"({"k":3,"cells":[{"q":0,"r":0,"color":0},{"q":1,"r":0,"color":1},{"q":2,"r":0,"color":2},)"
    R"({"q":3,"r":0,"color":1},{"q":4,"r":0,"color":0}],"start_a":[0,0],"start_b":[4,0]})";

std::string game_body(const std::string& board, const std::string& human = "A") {
  return R"({"board":)" + board + R"(,"human":")" + human + R"(","policy":"greedy","seed":1})";
}

class LiveServer : public ::testing::Test {
 protected:
  void SetUp() override {
    mount_routes(srv_, svc_, static_dir());
    port_ = srv_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { srv_.listen_after_bind(); });
    srv_.wait_until_ready();
  }
  void TearDown() override {
    srv_.stop();
    thread_.join();
  }

  static std::string static_dir() {
    auto dir = std::filesystem::temp_directory_path() / "honeybee_static_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "index.html") << "<html>bee</html>";
    return dir.string();
  }

  httplib::Client client() { return httplib::Client("127.0.0.1", port_); }

  json post(const std::string& path, const std::string& body, int expect) {
    auto res = client().Post(path, body, "application/json");
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, expect) << res->body;
    return json::parse(res->body);
  }

  GameService svc_;
  httplib::Server srv_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(LiveServer, Health) {
  auto res = client().Get("/healthz");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["status"], "ok");
}

TEST_F(LiveServer, CreateOnStripListsLegalColors) {
  auto j = post("/games", game_body(kStrip3), 201);
  EXPECT_EQ(j["human"], "A");
  EXPECT_EQ(j["status"], "active");
  EXPECT_EQ(j["legal_colors"], json::array({1}));
  EXPECT_TRUE(j["transcript"].empty());

  auto res = client().Get("/games/" + j["id"].get<std::string>());
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["state"]["to_move"], "A");
}

TEST_F(LiveServer, RepeatingOwnColorNamesR2) {
  auto j = post("/games", game_body(kStrip5), 201);
  const std::string id = j["id"];
  auto m = post("/games/" + id + "/moves", R"({"color":1})", 200);
  ASSERT_EQ(m["moves"].size(), 2u);  // human move plus the AI reply
  EXPECT_EQ(m["moves"][1]["player"], "B");
  auto e = post("/games/" + id + "/moves", R"({"color":1})", 409);
  EXPECT_EQ(e["code"], "rule_violation");
  EXPECT_EQ(e["rule"], "R2");
  EXPECT_NE(e["message"].get<std::string>().find("R2"), std::string::npos);
}

TEST_F(LiveServer, OpponentsColorNamesR1) {
  auto j = post("/games", game_body(kStrip5), 201);
  const std::string id = j["id"];
  auto m = post("/games/" + id + "/moves", R"({"color":1})", 200);
  const int b_color = m["moves"][1]["color"];
  auto e = post("/games/" + id + "/moves", R"({"color":)" + std::to_string(b_color) + "}", 409);
  EXPECT_EQ(e["rule"], "R1");
}

TEST_F(LiveServer, FullGameEndsWithVerdict) {
  auto j = post("/games", game_body(kStrip3), 201);
  const std::string id = j["id"];
  auto m = post("/games/" + id + "/moves", R"({"color":1})", 200);
  EXPECT_EQ(m["status"], "finished");
  EXPECT_EQ(m["verdict"]["winner"], "A");
  EXPECT_EQ(m["verdict"]["reason"], "majority");
  EXPECT_EQ(m["moves"].size(), 1u);
  auto e = post("/games/" + id + "/moves", R"({"color":2})", 409);
  EXPECT_EQ(e["code"], "game_over");
  EXPECT_TRUE(svc_.replay_matches(id));
}

TEST_F(LiveServer, HumanAsBLetsTheAiOpen) {
  auto j = post("/games", game_body(kStrip5, "B"), 201);
  ASSERT_EQ(j["transcript"].size(), 1u);
  EXPECT_EQ(j["transcript"][0]["player"], "A");
  EXPECT_EQ(j["state"]["to_move"], "B");
}

TEST_F(LiveServer, Errors) {
  auto e = client().Get("/games/nope");
  ASSERT_TRUE(e);
  EXPECT_EQ(e->status, 404);
  EXPECT_EQ(json::parse(e->body)["code"], "not_found");
  post("/games/nope/moves", R"({"color":1})", 404);
  auto bad = post("/games", "{not json", 400);
  EXPECT_EQ(bad["code"], "parse_error");
  post("/games", R"({"human":"A"})", 400);
  auto even = post("/games", R"({"board":{"k":3,"cells":[{"q":0,"r":0,"color":0},{"q":1,"r":0,"color":1}],)"
                             R"("start_a":[0,0],"start_b":[1,0]}})",
                   422);
  EXPECT_EQ(even["code"], "invalid_instance");
  auto route = client().Get("/nowhere/at/all");
  ASSERT_TRUE(route);
  EXPECT_EQ(route->status, 404);
}

TEST_F(LiveServer, Solve) {
  const std::string p3 = R"({"k":2,"nodes":[{"id":"v0","color":0},{"id":"v1","color":1},{"id":"v2","color":0}],)"
                         R"("edges":[["v0","v1"],["v1","v2"]]})";
  auto r = post("/solve", R"({"instance":)" + p3 + R"(,"start":"v0","method":"exact"})", 200);
  EXPECT_EQ(r["length"], 2);
  EXPECT_EQ(r["sequence"], json::array({1, 0}));
  auto c = post("/solve", R"({"instance":)" + p3 + R"(,"start":"v0","method":"cocomp"})", 200);
  EXPECT_EQ(c["length"], 2);
  auto e = post("/solve", R"({"instance":)" + p3 + R"(,"start":"v0","method":"magic"})", 422);
  EXPECT_EQ(e["code"], "invalid_instance");
  post("/solve", R"({"instance":)" + p3 + "}", 400);
}

TEST_F(LiveServer, RandomBoardPlayedToTheEnd) {
  auto j = post("/games", R"({"random_board":{"rows":5,"cols":5,"k":4,"seed":9},"policy":"greedy"})", 201);
  const std::string id = j["id"];
  for (int guard = 0; guard < 200 && j["status"] == "active"; ++guard) {
    const auto& st = j["state"];
    std::set<std::string> a(st["territory_a"].begin(), st["territory_a"].end());
    for (const auto& v : st["territory_b"]) EXPECT_FALSE(a.count(v.get<std::string>()));
    ASSERT_FALSE(j["legal_colors"].empty());
    j = post("/games/" + id + "/moves", R"({"color":)" + j["legal_colors"][0].dump() + "}", 200);
  }
  EXPECT_EQ(j["status"], "finished");
  EXPECT_FALSE(j["verdict"].is_null());
  EXPECT_TRUE(svc_.replay_matches(id));
}

TEST_F(LiveServer, ConcurrentMovesToOneSession) {
  auto j = post("/games", game_body(kStrip5), 201);
  const std::string id = j["id"];
  std::vector<int> status(8, 0);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < status.size(); ++i) {
    threads.emplace_back([&, i] {
      auto res = client().Post("/games/" + id + "/moves", R"({"color":1})", "application/json");
      status[i] = res ? res->status : -1;
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(std::count(status.begin(), status.end(), 200), 1);
  EXPECT_EQ(std::count(status.begin(), status.end(), 409), 7);
  EXPECT_TRUE(svc_.replay_matches(id));
}

TEST_F(LiveServer, StaticFiles) {
  auto res = client().Get("/index.html");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "<html>bee</html>");
}

TEST(Service, InFlightMoveIsAConflict) {
  GameService svc;
  auto j = svc.create_game(game_body(kStrip3));
  ASSERT_EQ(j.status, 201);
  const std::string id = j.body["id"];
  {
    auto lock = svc.hold(id);
    auto r = svc.post_move(id, R"({"color":1})");
    EXPECT_EQ(r.status, 409);
    EXPECT_EQ(r.body["code"], "conflict");
  }
  EXPECT_EQ(svc.post_move(id, R"({"color":1})").status, 200);
}

TEST(Service, NodeCap) {
  ServiceOptions opt;
  opt.node_cap = 3;
  GameService svc(opt);
  auto r = svc.create_game(game_body(kStrip5));
  EXPECT_EQ(r.status, 413);
  EXPECT_EQ(r.body["code"], "too_large");
  EXPECT_EQ(svc.create_game(game_body(kStrip3)).status, 201);
}

TEST(Service, NotYourTurnWhenSessionsAreDistinct) {
  GameService svc;
  auto a = svc.create_game(game_body(kStrip5));
  auto b = svc.create_game(game_body(kStrip5));
  EXPECT_NE(a.body["id"], b.body["id"]);
  EXPECT_EQ(svc.post_move(a.body["id"], R"({"color":1})").status, 200);
  EXPECT_EQ(svc.get_game(b.body["id"]).body["transcript"].size(), 0u);
}

TEST(Service, PersistedTranscriptReplays) {
  ServiceOptions opt;
  opt.persist_dir = (std::filesystem::temp_directory_path() / "honeybee_persist_test").string();
  std::filesystem::remove_all(opt.persist_dir);
  GameService svc(opt);
  auto j = svc.create_game(R"({"random_board":{"rows":3,"cols":5,"k":4,"seed":4},"human":"B"})");
  ASSERT_EQ(j.status, 201);
  const std::string id = j.body["id"];
  json cur = j.body;
  while (cur["status"] == "active") cur = svc.post_move(id, json{{"color", cur["legal_colors"][0]}}.dump()).body;
  std::ifstream f(std::filesystem::path(opt.persist_dir) / (id + ".jsonl"));
  std::stringstream ss;
  ss << f.rdbuf();
  const auto moves = transcript_from_jsonl(ss.str());
  ASSERT_EQ(moves.size(), cur["transcript"].size());
  for (std::size_t i = 0; i < moves.size(); ++i) EXPECT_EQ(move_to_json(moves[i]), cur["transcript"][i]);
}

TEST(Service, PortFromEnvironment) {
  ::unsetenv("HONEYBEE_PORT");
  EXPECT_EQ(service_port(8123), 8123);
  ::setenv("HONEYBEE_PORT", "9099", 1);
  EXPECT_EQ(service_port(8123), 9099);
  ::setenv("HONEYBEE_PORT", "abc", 1);
  EXPECT_THROW(service_port(8123), InvalidInstance);
  ::unsetenv("HONEYBEE_PORT");
}

TEST(Service, StateCheck) {
  auto inst = instance_or_board(json::parse(kStrip5));
  GameState s = new_game(inst);
  EXPECT_TRUE(state_is_consistent(s));
  GameState bad = s;
  bad.wb = bad.wa;
  EXPECT_FALSE(state_is_consistent(bad));
}

}  // namespace
