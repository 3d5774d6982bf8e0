#include <gtest/gtest.h>

#include "sgo/simulation.hpp"
#include "test_support.hpp"

using namespace sgo;
using namespace sgo::sim;
using sgo::testing::at;

TEST(Rng, IsReproducibleAndBounded) {
    Rng a(5), b(5);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t x = a.below(7);
        EXPECT_EQ(x, b.below(7));
        EXPECT_LT(x, 7u);
        double u = a.unit();
        b.unit();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(PickMove, FullBoardPasses) {
    GameState g;
    g.board = Board(2);
    for (int idx = 0; idx < 4; ++idx) g.board.set(g.board.point(idx), kRed);
    for (auto kind : {PolicyKind::uniform_random, PolicyKind::greedy_capture})
        EXPECT_TRUE(is_pass(pick_move(BotPolicy{kind, 3, 0.0}, g, Color::black)));
}

TEST(PickMove, SameSeedSameTurnSameMove) {
    GameState g = new_game(GameConfig{9, {}, {}});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        BotPolicy p{PolicyKind::uniform_random, seed, 0.01};
        EXPECT_EQ(pick_move(p, g, Color::black), pick_move(p, g, Color::black));
        EXPECT_EQ(pick_move(p, g, Color::black), pick_move(p, g, Color::white));
    }
}

TEST(PickMove, PassProbabilityOneAlwaysPasses) {
    GameState g = new_game(GameConfig{5, {}, {}});
    EXPECT_TRUE(is_pass(pick_move(BotPolicy{PolicyKind::greedy_capture, 1, 1.0}, g, Color::white)));
}

TEST(PickMove, GreedyTakesTheLastLiberty) {
    GameState g = new_game(GameConfig{5, {}, {}});
    g.board.set(at("A1", 5), plain(Color::white));
    g.board.set(at("B1", 5), plain(Color::black));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Move m = pick_move(BotPolicy{PolicyKind::greedy_capture, seed, 0.0}, g, Color::black);
        EXPECT_EQ(m, Move{Place{at("A2", 5)}});
    }
    // and symmetric for white
    GameState f = g;
    f.board = color_flip(g.board);
    EXPECT_EQ(pick_move(BotPolicy{PolicyKind::greedy_capture, 4, 0.0}, f, Color::white), Move{Place{at("A2", 5)}});
}

TEST(SelfPlay, AlwaysPassingGamesEndAtOnce) {
    SelfPlayConfig cfg;
    cfg.size = 5;
    cfg.games = 4;
    cfg.black.pass_probability = cfg.white.pass_probability = 1.0;
    SelfPlayStats st = selfplay(cfg);
    for (const auto& g : st.per_game) {
        EXPECT_EQ(g.length, 1);
        EXPECT_EQ(g.winner, Outcome::tie);
    }
    EXPECT_DOUBLE_EQ(st.tie_rate, 1.0);
}

TEST(SelfPlay, CsvIsReproducibleAcrossThreadCounts) {
    SelfPlayConfig cfg;
    cfg.size = 5;
    cfg.games = 12;
    cfg.seed = 99;
    cfg.threads = 1;
    std::string one = to_csv(cfg, selfplay(cfg));
    cfg.threads = 4;
    EXPECT_EQ(to_csv(cfg, selfplay(cfg)), one);
    EXPECT_EQ(one.rfind("index,length,winner,prisoners_black,prisoners_white,red_count,entangle_count\n", 0), 0u);
    EXPECT_NE(one.find("# mean_game_length "), std::string::npos);
}

TEST(SelfPlay, RandomPlayMeetsTheNovelMechanics) {
    SelfPlayConfig cfg;
    cfg.size = 7;
    cfg.games = 20;
    cfg.seed = 1;
    SelfPlayStats st = selfplay(cfg);
    EXPECT_GT(st.red_created_per_game, 0.0);
    EXPECT_GT(st.entanglements_per_game, 0.0);
    EXPECT_GT(st.mean_game_length, 1.0);
    EXPECT_NEAR(st.win_rate_black + st.win_rate_white + st.tie_rate, 1.0, 1e-12);
}

TEST(SelfPlay, PairedGamesAreMirrorImages) {
    SelfPlayConfig cfg;
    cfg.size = 5;
    cfg.games = 10;
    cfg.seed = 3;
    cfg.paired = true;
    cfg.black.kind = PolicyKind::greedy_capture;
    SelfPlayStats st = selfplay(cfg);
    for (int i = 0; i + 1 < cfg.games; i += 2) {
        const auto& a = st.per_game[static_cast<std::size_t>(i)];
        const auto& b = st.per_game[static_cast<std::size_t>(i + 1)];
        EXPECT_EQ(a.length, b.length);
        EXPECT_EQ(a.prisoners_black, b.prisoners_white);
        EXPECT_EQ(a.reds, b.reds);
        if (a.winner == Outcome::tie) EXPECT_EQ(b.winner, Outcome::tie);
        else EXPECT_NE(a.winner, b.winner);
    }
    EXPECT_DOUBLE_EQ(st.win_rate_black, st.win_rate_white);
}

TEST(SelfPlay, RejectsEmptyRuns) {
    SelfPlayConfig cfg;
    cfg.games = 0;
    EXPECT_THROW(selfplay(cfg), Error);
}
