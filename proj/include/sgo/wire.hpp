#pragma once

// JSON shapes shared by the match service and its clients.

#include <json.hpp>

#include "sgo/board.hpp"
#include "sgo/events.hpp"
#include "sgo/match.hpp"

namespace sgo::wire {

using nlohmann::json;

inline json points(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return std::pair(a.row, a.col) < std::pair(b.row, b.col); });
    json out = json::array();
    for (Point p : pts) out.push_back(to_coord(p));
    return out;
}

inline json to_json(const Event& e) {
    json j;
    j["type"] = event_name(e);
    std::visit(
        [&](const auto& ev) {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, event::Placed> || std::is_same_v<T, event::RedCreated>) {
                j["point"] = to_coord(ev.point);
            } else if constexpr (std::is_same_v<T, event::EntangleCreated>) {
                j["pair"] = ev.pair;
                j["black"] = points(ev.black);
                j["white"] = points(ev.white);
            } else if constexpr (std::is_same_v<T, event::RedResolved>) {
                j["point"] = to_coord(ev.point);
                j["to"] = color_name(ev.to);
            } else if constexpr (std::is_same_v<T, event::EResolved>) {
                j["pair"] = ev.pair;
                j["resolved"] = color_name(ev.resolved);
            } else if constexpr (std::is_same_v<T, event::GroupCaptured>) {
                j["color"] = color_name(ev.color);
                j["points"] = points(ev.points);
                j["captured_by"] = color_name(ev.captured_by);
            } else if constexpr (std::is_same_v<T, event::SuicideAbsorbedRed>) {
                j["point"] = to_coord(ev.point);
                j["dying"] = color_name(ev.dying);
            } else {
                j["point"] = to_coord(ev.point);
                j["by"] = color_name(ev.by);
            }
        },
        e);
    return j;
}

// Rows top to bottom, cell codes as in the fixture format.
inline json board_rows(const Board& b) {
    json rows = json::array();
    for (int row = b.size() - 1; row >= 0; --row) {
        json r = json::array();
        for (int col = 0; col < b.size(); ++col) r.push_back(cell_code(b.at(Point{col, row})));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline json resolved_turn(int number, const HistoryEntry& h) {
    json evs = json::array();
    for (const Event& e : h.outcome.events) evs.push_back(to_json(e));
    return json{{"turn", number},
                {"black", to_string(h.input.black)},
                {"white", to_string(h.input.white)},
                {"events", std::move(evs)},
                {"prisoners_black", h.outcome.prisoners_black},
                {"prisoners_white", h.outcome.prisoners_white},
                {"board", board_rows(h.outcome.board)}};
}

inline json to_json(const Score& s) {
    return json{{"black_territory", s.black_territory}, {"white_territory", s.white_territory},
                {"black_prisoners", s.black_prisoners}, {"white_prisoners", s.white_prisoners},
                {"black_total", s.black_total},         {"white_total", s.white_total},
                {"outcome", outcome_name(s.outcome)}};
}

}  // namespace sgo::wire
