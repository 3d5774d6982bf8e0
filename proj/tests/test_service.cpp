#include <filesystem>
#include <future>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "sgo/http.hpp"
#include "sgo/service.hpp"
#include "test_support.hpp"

using namespace sgo;
using namespace sgo::service;
using sgo::testing::at;
using sgo::testing::fixture;
using sgo::testing::place;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::io_error;
}

Created started(MatchService& svc, GameConfig cfg = GameConfig{7, {}, {}}) {
    Created c = svc.create_match(cfg);
    svc.join(c.match_id, c.black_token);
    svc.join(c.match_id, c.white_token);
    return c;
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("sgo_test_" + name + "_" + random_hex(4));
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Service, CreateAndJoin) {
    MatchService svc;
    Created c = svc.create_match(GameConfig{9, {}, {}});
    EXPECT_NE(c.black_token, c.white_token);
    EXPECT_EQ(svc.get_state(c.match_id)["status"], "open");
    EXPECT_EQ(svc.join(c.match_id, c.black_token), Color::black);
    EXPECT_EQ(svc.get_state(c.match_id)["status"], "open");
    EXPECT_EQ(code_of([&] { svc.submit_move(c.match_id, c.black_token, place("C4"), 1); }), ErrorCode::not_joined);
    EXPECT_EQ(svc.join(c.match_id, c.white_token), Color::white);
    json s = svc.get_state(c.match_id, c.white_token);
    EXPECT_EQ(s["status"], "in_progress");
    EXPECT_EQ(s["you"], "white");
    EXPECT_EQ(s["size"], 9);
    EXPECT_EQ(s["turn"], 1);
}

TEST(Service, BadConfigAndUnknownIds) {
    MatchService svc;
    EXPECT_EQ(code_of([&] { svc.create_match(GameConfig{1, {}, {}}); }), ErrorCode::invalid_size);
    EXPECT_EQ(code_of([&] { svc.get_state("nope"); }), ErrorCode::unknown_match);
    Created c = svc.create_match(GameConfig{7, {}, {}});
    EXPECT_EQ(code_of([&] { svc.join(c.match_id, "forged"); }), ErrorCode::unauthorized);
    EXPECT_EQ(code_of([&] { svc.get_state(c.match_id, "forged"); }), ErrorCode::unauthorized);
}

TEST(Service, CommitmentsStaySecretUntilResolution) {
    MatchService svc;
    Created c = started(svc);
    auto r = svc.submit_move(c.match_id, c.black_token, place("C4"), 1);
    EXPECT_FALSE(r.resolved);
    for (const std::string& token : {std::string(), c.white_token, c.black_token}) {
        json s = svc.get_state(c.match_id, token);
        EXPECT_EQ(s["committed"]["black"], true);
        EXPECT_EQ(s["committed"]["white"], false);
        EXPECT_EQ(s.dump().find("C4"), std::string::npos) << s.dump();
        EXPECT_EQ(s["board"][3][2], ".");
    }
    r = svc.submit_move(c.match_id, c.white_token, place("C4"), 1);
    ASSERT_TRUE(r.resolved);
    EXPECT_EQ(r.outcome["black"], "C4");
    EXPECT_EQ(r.outcome["events"][0]["type"], "RedCreated");
    json s = svc.get_state(c.match_id);
    EXPECT_EQ(s["board"][3][2], "R");
    EXPECT_EQ(s["turn"], 2);
    EXPECT_EQ(s["committed"]["black"], false);
}

TEST(Service, WrongTurnAndResubmission) {
    MatchService svc;
    Created c = started(svc);
    EXPECT_EQ(code_of([&] { svc.submit_move(c.match_id, c.black_token, place("C4"), 2); }), ErrorCode::wrong_turn);
    EXPECT_EQ(code_of([&] { svc.submit_move(c.match_id, c.black_token, place("C4"), 0); }), ErrorCode::wrong_turn);
    svc.submit_move(c.match_id, c.black_token, place("C4"), 1);
    EXPECT_NO_THROW(svc.submit_move(c.match_id, c.black_token, place("C4"), 1));
    EXPECT_EQ(code_of([&] { svc.submit_move(c.match_id, c.black_token, place("D4"), 1); }),
              ErrorCode::already_committed_differently);
    EXPECT_EQ(code_of([&] { svc.submit_move(c.match_id, "forged", place("D4"), 1); }), ErrorCode::unauthorized);
}

TEST(Service, IllegalMoveIsRejectedAndNotCommitted) {
    MatchService svc;
    Created c = started(svc, GameConfig{7, setup_of(fixture("diagram1.txt")), {}});
    EXPECT_EQ(code_of([&] { svc.submit_move(c.match_id, c.black_token, place("C4"), 1); }), ErrorCode::invalid_move);
    EXPECT_EQ(svc.get_state(c.match_id)["committed"]["black"], false);
    svc.submit_move(c.match_id, c.black_token, place("D4"), 1);
    auto r = svc.submit_move(c.match_id, c.white_token, place("E3"), 1);
    EXPECT_TRUE(r.resolved);
}

TEST(Service, DoublePassFinishesWithScore) {
    MatchService svc;
    Created c = started(svc);
    svc.submit_move(c.match_id, c.black_token, Pass{}, 1);
    svc.submit_move(c.match_id, c.white_token, Pass{}, 1);
    json s = svc.get_state(c.match_id);
    EXPECT_EQ(s["status"], "finished");
    EXPECT_EQ(s["result"]["winner"], "tie");
    EXPECT_EQ(s["result"]["by"], "score");
    EXPECT_EQ(code_of([&] { svc.submit_move(c.match_id, c.black_token, Pass{}, 2); }), ErrorCode::match_finished);
}

TEST(Service, Resign) {
    MatchService svc;
    Created c = started(svc);
    svc.submit_move(c.match_id, c.white_token, place("A1"), 1);
    json s = svc.resign(c.match_id, c.white_token);
    EXPECT_EQ(s["status"], "finished");
    EXPECT_EQ(s["result"]["winner"], "black");
    EXPECT_EQ(s["committed"]["white"], false);
    EXPECT_EQ(code_of([&] { svc.resign(c.match_id, c.black_token); }), ErrorCode::match_finished);
    EXPECT_EQ(code_of([&] { svc.resign(c.match_id, "x"); }), ErrorCode::unauthorized);
}

TEST(Service, LongPollWakesOnResolution) {
    MatchService svc;
    Created c = started(svc);
    auto waiter = std::async(std::launch::async,
                             [&] { return svc.events_since(c.match_id, 0, std::chrono::milliseconds(5000)); });
    svc.submit_move(c.match_id, c.black_token, place("A1"), 1);
    svc.submit_move(c.match_id, c.white_token, place("B1"), 1);
    json got = waiter.get();
    ASSERT_EQ(got["events"].size(), 1u);
    EXPECT_EQ(got["events"][0]["turn"], 1);
    json none = svc.events_since(c.match_id, 1, std::chrono::milliseconds(10));
    EXPECT_TRUE(none["events"].empty());
    EXPECT_EQ(none["turn"], 2);
}

TEST(Service, ReplaysExampleOneThroughSessions) {
    MatchService svc;
    GameRecord r = sgo::testing::record("example1.sgo");
    Created c = started(svc, GameConfig{7, r.setup, {}});
    for (std::size_t i = 0; i < r.turns.size(); ++i) {
        int turn = static_cast<int>(i) + 1;
        svc.submit_move(c.match_id, c.white_token, r.turns[i].white, turn);
        svc.submit_move(c.match_id, c.black_token, r.turns[i].black, turn);
    }
    json s = svc.get_state(c.match_id);
    EXPECT_EQ(s["board"], wire::board_rows(fixture("diagram2.txt")));
    EXPECT_EQ(s["prisoners_white"], 2);
    EXPECT_EQ(s["history"].size(), 3u);
}

TEST(Service, JournalSurvivesRestart) {
    auto dir = scratch_dir("journal");
    Created c, done;
    {
        MatchService svc(dir);
        c = started(svc);
        svc.submit_move(c.match_id, c.black_token, place("C4"), 1);
        svc.submit_move(c.match_id, c.white_token, place("C4"), 1);
        svc.submit_move(c.match_id, c.black_token, place("D4"), 2);  // pending, not journaled
        done = started(svc);
        svc.resign(done.match_id, done.black_token);
    }
    MatchService again(dir);
    EXPECT_EQ(again.match_ids().size(), 2u);
    json s = again.get_state(c.match_id, c.black_token);
    EXPECT_EQ(s["turn"], 2);
    EXPECT_EQ(s["board"][3][2], "R");
    EXPECT_EQ(s["status"], "in_progress");
    EXPECT_EQ(s["committed"]["black"], false);
    json d = again.get_state(done.match_id);
    EXPECT_EQ(d["result"]["winner"], "white");
    auto r = again.submit_move(c.match_id, c.black_token, place("D4"), 2);
    EXPECT_FALSE(r.resolved);
    std::filesystem::remove_all(dir);
}

// --- HTTP binding ---

class HttpFixture : public ::testing::Test {
protected:
    void SetUp() override {
        http::install_routes(server_, svc_);
        port_ = server_.bind_to_any_port("127.0.0.1");
        ASSERT_GT(port_, 0);
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    void TearDown() override {
        server_.stop();
        if (thread_.joinable()) thread_.join();
    }
    httplib::Client client() { return httplib::Client("127.0.0.1", port_); }

    MatchService svc_;
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
};

TEST_F(HttpFixture, FullTurnOverHttp) {
    auto cli = client();
    auto res = cli.Post("/match", R"({"size": 7})", "application/json");
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 201);
    json created = json::parse(res->body);
    std::string id = created["match_id"];
    std::string bt = created["black_token"], wt = created["white_token"];

    for (const auto& tok : {bt, wt}) {
        res = cli.Post("/match/" + id + "/join", json{{"token", tok}}.dump(), "application/json");
        ASSERT_EQ(res->status, 200);
    }
    res = cli.Post("/match/" + id + "/move", json{{"token", bt}, {"turn", 1}, {"move", "C4"}}.dump(), "application/json");
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(json::parse(res->body)["status"], "committed");

    res = cli.Get("/match/" + id + "/state?token=" + wt);
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(res->body.find("C4"), std::string::npos);

    res = cli.Post("/match/" + id + "/move", json{{"token", wt}, {"turn", 1}, {"move", "C4"}}.dump(), "application/json");
    ASSERT_EQ(res->status, 200);
    json out = json::parse(res->body);
    EXPECT_EQ(out["status"], "resolved");
    EXPECT_EQ(out["outcome"]["events"][0]["type"], "RedCreated");

    res = cli.Get("/match/" + id + "/events?since=0&timeout_ms=0");
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(json::parse(res->body)["events"].size(), 1u);
}

TEST_F(HttpFixture, ErrorsMapToStatusCodes) {
    auto cli = client();
    auto res = cli.Post("/match", R"({"size": 1})", "application/json");
    EXPECT_EQ(res->status, 400);
    EXPECT_EQ(json::parse(res->body)["error"], "invalid-size");
    res = cli.Post("/match", "{not json", "application/json");
    EXPECT_EQ(res->status, 400);
    res = cli.Get("/match/abcdef/state");
    EXPECT_EQ(res->status, 404);

    Created c = started(svc_);
    res = cli.Post("/match/" + c.match_id + "/move", json{{"token", "x"}, {"turn", 1}, {"move", "C4"}}.dump(),
                   "application/json");
    EXPECT_EQ(res->status, 403);
    res = cli.Post("/match/" + c.match_id + "/move",
                   json{{"token", c.black_token}, {"turn", 3}, {"move", "C4"}}.dump(), "application/json");
    EXPECT_EQ(res->status, 409);
    res = cli.Post("/match/" + c.match_id + "/move",
                   json{{"token", c.black_token}, {"turn", 1}, {"move", "Z99"}}.dump(), "application/json");
    EXPECT_EQ(res->status, 422);
}

TEST_F(HttpFixture, SetupThroughJson) {
    auto cli = client();
    json body{{"size", 7}, {"setup", json::array({json{{"code", "R"}, {"point", "C4"}}, json{{"code", "B"}, {"point", "C5"}}})}};
    auto res = cli.Post("/match", body.dump(), "application/json");
    ASSERT_EQ(res->status, 201);
    std::string id = json::parse(res->body)["match_id"];
    json s = json::parse(cli.Get("/match/" + id + "/state")->body);
    EXPECT_EQ(s["board"][3][2], "R");
    EXPECT_EQ(s["board"][2][2], "B");
    EXPECT_EQ(s["you"], "spectator");
}
