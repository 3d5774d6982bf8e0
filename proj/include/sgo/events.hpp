#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <variant>
#include <vector>

#include "sgo/board.hpp"

namespace sgo {

namespace event {

struct Placed {
    Color color;
    Point point;
    friend bool operator==(const Placed&, const Placed&) = default;
};

struct RedCreated {
    Point point;
    friend bool operator==(const RedCreated&, const RedCreated&) = default;
};

struct EntangleCreated {
    int pair;
    std::vector<Point> black;
    std::vector<Point> white;
    friend bool operator==(const EntangleCreated&, const EntangleCreated&) = default;
};

// A Red stone used in a kill turns into the killer's color.
struct RedResolved {
    Point point;
    Color to;
    friend bool operator==(const RedResolved&, const RedResolved&) = default;
};

// `resolved` side of the pair becomes plain `resolved`; the partner side plain opposite.
struct EResolved {
    int pair;
    Color resolved;
    friend bool operator==(const EResolved&, const EResolved&) = default;
};

struct GroupCaptured {
    Color color;
    std::vector<Point> points;
    Color captured_by;
    friend bool operator==(const GroupCaptured&, const GroupCaptured&) = default;
};

// A Red created this turn that sealed its co-placer's own group; it joins that group and dies with it.
struct SuicideAbsorbedRed {
    Point point;
    Color dying;
    friend bool operator==(const SuicideAbsorbedRed&, const SuicideAbsorbedRed&) = default;
};

// A Red enclosed entirely by one color's plain stones becomes a stone of that color.
struct RedCaptured {
    Point point;
    Color by;
    friend bool operator==(const RedCaptured&, const RedCaptured&) = default;
};

}  // namespace event

using Event = std::variant<event::Placed, event::RedCreated, event::EntangleCreated, event::RedResolved,
                           event::EResolved, event::GroupCaptured, event::SuicideAbsorbedRed, event::RedCaptured>;

struct TurnOutcome {
    Board board;
    std::vector<Event> events;
    int prisoners_black = 0;  // captured by black this turn
    int prisoners_white = 0;

    int prisoners(Color c) const { return c == Color::black ? prisoners_black : prisoners_white; }
    friend bool operator==(const TurnOutcome&, const TurnOutcome&) = default;
};

namespace detail {
inline std::string point_list(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return std::pair(a.row, a.col) < std::pair(b.row, b.col); });
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ',';
        out += to_coord(pts[i]);
    }
    return out;
}
}  // namespace detail

inline std::string event_name(const Event& e) {
    return std::visit(
        [](const auto& ev) -> std::string {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, event::Placed>)
                return ev.color == Color::black ? "PlacedBlack" : "PlacedWhite";
            else if constexpr (std::is_same_v<T, event::RedCreated>) return "RedCreated";
            else if constexpr (std::is_same_v<T, event::EntangleCreated>) return "EntangleCreated";
            else if constexpr (std::is_same_v<T, event::RedResolved>) return "RedResolved";
            else if constexpr (std::is_same_v<T, event::EResolved>) return "EResolved";
            else if constexpr (std::is_same_v<T, event::GroupCaptured>) return "GroupCaptured";
            else if constexpr (std::is_same_v<T, event::SuicideAbsorbedRed>) return "SuicideAbsorbedRed";
            else return "RedCaptured";
        },
        e);
}

// Canonical one-line rendering; point lists are sorted so the text is order-independent.
inline std::string to_string(const Event& e) {
    std::string head = event_name(e);
    return std::visit(
        [&](const auto& ev) -> std::string {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, event::Placed> || std::is_same_v<T, event::RedCreated>)
                return head + " " + to_coord(ev.point);
            else if constexpr (std::is_same_v<T, event::EntangleCreated>)
                return head + " " + std::to_string(ev.pair) + " B[" + detail::point_list(ev.black) + "] W[" +
                       detail::point_list(ev.white) + "]";
            else if constexpr (std::is_same_v<T, event::RedResolved>)
                return head + " " + to_coord(ev.point) + " " + std::string(color_name(ev.to));
            else if constexpr (std::is_same_v<T, event::EResolved>)
                return head + " " + std::to_string(ev.pair) + " " + std::string(color_name(ev.resolved));
            else if constexpr (std::is_same_v<T, event::GroupCaptured>)
                return head + " " + std::string(color_name(ev.color)) + " [" + detail::point_list(ev.points) +
                       "] by " + std::string(color_name(ev.captured_by));
            else if constexpr (std::is_same_v<T, event::SuicideAbsorbedRed>)
                return head + " " + to_coord(ev.point) + " " + std::string(color_name(ev.dying));
            else
                return head + " " + to_coord(ev.point) + " by " + std::string(color_name(ev.by));
        },
        e);
}

// Folds one event into a board and prisoner tally (index 0 black, 1 white).
inline void apply_event(Board& b, std::array<int, 2>& prisoners, const Event& e) {
    auto slot = [](Color c) { return c == Color::black ? 0 : 1; };
    std::visit(
        [&](const auto& ev) {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, event::Placed>) b.set(ev.point, plain(ev.color));
            else if constexpr (std::is_same_v<T, event::RedCreated>) b.set(ev.point, kRed);
            else if constexpr (std::is_same_v<T, event::EntangleCreated>) b.entangle(ev.pair, ev.black, ev.white);
            else if constexpr (std::is_same_v<T, event::RedResolved>) b.set(ev.point, plain(ev.to));
            else if constexpr (std::is_same_v<T, event::EResolved>) b.dissolve(ev.pair, ev.resolved);
            else if constexpr (std::is_same_v<T, event::GroupCaptured>) {
                for (Point p : ev.points) b.set(p, kEmpty);
                prisoners[slot(ev.captured_by)] += static_cast<int>(ev.points.size());
            } else if constexpr (std::is_same_v<T, event::SuicideAbsorbedRed>) b.set(ev.point, plain(ev.dying));
            else {
                b.set(ev.point, plain(ev.by));
                prisoners[slot(ev.by)] += 1;
            }
        },
        e);
}

// Replays an event log over the pre-turn board.
inline TurnOutcome replay_events(const Board& before, const std::vector<Event>& events) {
    TurnOutcome out{before, events, 0, 0};
    std::array<int, 2> prisoners{0, 0};
    for (const Event& e : events) apply_event(out.board, prisoners, e);
    out.prisoners_black = prisoners[0];
    out.prisoners_white = prisoners[1];
    return out;
}

// Hash of the post-board fixture, the sorted event lines and the prisoner deltas.
inline std::uint64_t outcome_digest(const TurnOutcome& o) {
    std::vector<std::string> lines;
    for (const Event& e : o.events) lines.push_back(to_string(e));
    std::sort(lines.begin(), lines.end());
    std::string text = to_fixture(o.board);
    for (const auto& l : lines) text += l + '\n';
    text += "prisoners " + std::to_string(o.prisoners_black) + " " + std::to_string(o.prisoners_white) + '\n';
    return fnv1a(text);
}

}  // namespace sgo
