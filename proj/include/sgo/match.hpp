#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sgo/board.hpp"
#include "sgo/engine.hpp"

namespace sgo {

struct SetupStone {
    Point point;
    Cell cell;
    friend bool operator==(const SetupStone&, const SetupStone&) = default;
};

struct GameConfig {
    int size = kDefaultSize;
    std::vector<SetupStone> setup;
    std::optional<int> max_turns;
};

// Builds a board from setup stones, checking bounds, overlaps and pair consistency.
inline Board board_from_setup(int size, const std::vector<SetupStone>& setup) {
    Board b(size);
    std::set<Point> used;
    std::map<int, std::pair<std::vector<Point>, std::vector<Point>>> pairs;
    for (const auto& s : setup) {
        if (!b.in_bounds(s.point)) throw Error(ErrorCode::invalid_setup, "setup stone outside the board");
        if (!used.insert(s.point).second)
            throw Error(ErrorCode::invalid_setup, "two setup stones on " + to_coord(s.point));
        if (s.cell.kind == CellKind::empty) continue;
        if (is_entangled(s.cell.kind)) {
            auto& side = pairs[s.cell.pair];
            (s.cell.kind == CellKind::eblack ? side.first : side.second).push_back(s.point);
        } else {
            b.set(s.point, s.cell);
        }
    }
    for (auto& [id, sides] : pairs) {
        if (sides.first.empty() || sides.second.empty())
            throw Error(ErrorCode::inconsistent_pair, "pair " + std::to_string(id) + " lacks a black or white side");
        b.entangle(id, sides.first, sides.second);
    }
    return b;
}

struct HistoryEntry {
    TurnInput input;
    TurnOutcome outcome;
};

struct GameState {
    Board board;
    int turn = 0;
    int prisoners_black = 0;  // stones captured by black
    int prisoners_white = 0;
    bool over = false;
    std::optional<int> max_turns;
    std::vector<HistoryEntry> history;

    int prisoners(Color c) const { return c == Color::black ? prisoners_black : prisoners_white; }
};

inline GameState new_game(const GameConfig& cfg) {
    GameState g;
    g.board = board_from_setup(cfg.size, cfg.setup);
    g.max_turns = cfg.max_turns;
    return g;
}

inline bool is_over(const GameState& g) { return g.over; }

inline GameState step(GameState g, const TurnInput& t) {
    if (g.over) throw Error(ErrorCode::game_over, "game is over");
    TurnOutcome out = apply_turn(g.board, t);
    g.board = out.board;
    g.prisoners_black += out.prisoners_black;
    g.prisoners_white += out.prisoners_white;
    g.history.push_back(HistoryEntry{t, std::move(out)});
    ++g.turn;
    if ((is_pass(t.black) && is_pass(t.white)) || (g.max_turns && g.turn >= *g.max_turns)) g.over = true;
    return g;
}

enum class Outcome { black_wins, white_wins, tie };

inline std::string_view outcome_name(Outcome o) {
    switch (o) {
        case Outcome::black_wins: return "black";
        case Outcome::white_wins: return "white";
        case Outcome::tie: return "tie";
    }
    return "tie";
}

struct Score {
    int black_territory = 0;
    int white_territory = 0;
    int black_prisoners = 0;
    int white_prisoners = 0;
    int black_total = 0;
    int white_total = 0;
    Outcome outcome = Outcome::tie;

    friend bool operator==(const Score&, const Score&) = default;
};

// Territory of a board as it stands: empty regions bordered by one color's
// walls (Red borders both colors, e-stones count as their nominal color).
inline std::pair<int, int> territory(const Board& b) {
    int black = 0;
    int white = 0;
    std::vector<char> seen(static_cast<std::size_t>(b.area()), 0);
    for (int idx = 0; idx < b.area(); ++idx) {
        if (seen[idx] || b.at(idx).kind != CellKind::empty) continue;
        int region = 0;
        bool touches_black = false;
        bool touches_white = false;
        std::vector<int> stack{idx};
        seen[idx] = 1;
        while (!stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            ++region;
            for (Point q : neighbors(b.point(s), b.size())) {
                int qi = b.index(q);
                CellKind k = b.at(qi).kind;
                if (k == CellKind::empty) {
                    if (!seen[qi]) {
                        seen[qi] = 1;
                        stack.push_back(qi);
                    }
                } else if (k == CellKind::red) {
                    continue;  // borders both sides equally
                } else if (stone_color(k) == Color::black) {
                    touches_black = true;
                } else {
                    touches_white = true;
                }
            }
        }
        if (touches_black && !touches_white) black += region;
        if (touches_white && !touches_black) white += region;
    }
    return {black, white};
}

inline Score score_board(const Board& b, int prisoners_black, int prisoners_white) {
    Score s;
    std::tie(s.black_territory, s.white_territory) = territory(b);
    s.black_prisoners = prisoners_black;
    s.white_prisoners = prisoners_white;
    s.black_total = s.black_territory + s.black_prisoners;
    s.white_total = s.white_territory + s.white_prisoners;
    s.outcome = s.black_total > s.white_total   ? Outcome::black_wins
                : s.white_total > s.black_total ? Outcome::white_wins
                                                : Outcome::tie;
    return s;
}

inline Score score(const GameState& g) {
    if (!g.over) throw Error(ErrorCode::game_not_over, "game is still in progress");
    return score_board(g.board, g.prisoners_black, g.prisoners_white);
}

}  // namespace sgo
