#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace sgo {

inline constexpr int kMinSize = 2;
inline constexpr int kMaxSize = 25;
inline constexpr int kDefaultSize = 19;

enum class ErrorCode {
    invalid_size,
    out_of_bounds,
    occupied_point,
    invalid_move,
    invalid_setup,
    inconsistent_pair,
    game_over,
    game_not_over,
    parse_error,
    wrong_turn,
    already_committed_differently,
    unauthorized,
    match_finished,
    unknown_match,
    not_joined,
    io_error,
};

inline std::string_view error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::invalid_size: return "invalid-size";
        case ErrorCode::out_of_bounds: return "out-of-bounds";
        case ErrorCode::occupied_point: return "occupied-point";
        case ErrorCode::invalid_move: return "invalid-move";
        case ErrorCode::invalid_setup: return "invalid-setup";
        case ErrorCode::inconsistent_pair: return "inconsistent-pair";
        case ErrorCode::game_over: return "game-over";
        case ErrorCode::game_not_over: return "game-not-over";
        case ErrorCode::parse_error: return "parse-error";
        case ErrorCode::wrong_turn: return "wrong-turn";
        case ErrorCode::already_committed_differently: return "already-committed-differently";
        case ErrorCode::unauthorized: return "unauthorized";
        case ErrorCode::match_finished: return "match-finished";
        case ErrorCode::unknown_match: return "unknown-match";
        case ErrorCode::not_joined: return "not-joined";
        case ErrorCode::io_error: return "io-error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

enum class Color : std::uint8_t { black, white };

constexpr Color opposite(Color c) { return c == Color::black ? Color::white : Color::black; }

inline std::string_view color_name(Color c) { return c == Color::black ? "black" : "white"; }
inline char color_letter(Color c) { return c == Color::black ? 'B' : 'W'; }

struct Point {
    int col = 0;
    int row = 0;  // 0 is the bottom row ("1" in coordinate notation)

    friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

// Column letters skip 'I', as on a standard goban.
inline constexpr std::string_view kColumnLetters = "ABCDEFGHJKLMNOPQRSTUVWXYZ";

inline std::string to_coord(Point p) {
    return std::string(1, kColumnLetters.at(static_cast<std::size_t>(p.col))) + std::to_string(p.row + 1);
}

// Parses "C4" / "c4"; nullopt if malformed or outside a board of the given size.
inline std::optional<Point> parse_coord(std::string_view s, int size) {
    if (s.size() < 2 || s.size() > 3) return std::nullopt;
    char letter = s[0];
    if (letter >= 'a' && letter <= 'z') letter = static_cast<char>(letter - 'a' + 'A');
    auto col = kColumnLetters.find(letter);
    if (col == std::string_view::npos) return std::nullopt;
    int row = 0;
    for (char ch : s.substr(1)) {
        if (ch < '0' || ch > '9') return std::nullopt;
        row = row * 10 + (ch - '0');
    }
    if (s[1] == '0' || row < 1 || row > size || static_cast<int>(col) >= size) return std::nullopt;
    return Point{static_cast<int>(col), row - 1};
}

struct Pass {
    friend constexpr bool operator==(const Pass&, const Pass&) = default;
};

struct Place {
    Point point;
    friend constexpr bool operator==(const Place&, const Place&) = default;
};

using Move = std::variant<Pass, Place>;

inline bool is_pass(const Move& m) { return std::holds_alternative<Pass>(m); }

inline std::optional<Point> placed_point(const Move& m) {
    if (auto* p = std::get_if<Place>(&m)) return p->point;
    return std::nullopt;
}

inline std::string to_string(const Move& m) {
    if (auto p = placed_point(m)) return to_coord(*p);
    return "pass";
}

// "pass" (any case) or a coordinate.
inline std::optional<Move> parse_move(std::string_view s, int size) {
    if (s.size() == 4) {
        std::string lower;
        for (char ch : s) lower += static_cast<char>(ch >= 'A' && ch <= 'Z' ? ch - 'A' + 'a' : ch);
        if (lower == "pass") return Move{Pass{}};
    }
    if (auto p = parse_coord(s, size)) return Move{Place{*p}};
    return std::nullopt;
}

struct TurnInput {
    Move black = Pass{};
    Move white = Pass{};

    const Move& of(Color c) const { return c == Color::black ? black : white; }
    friend bool operator==(const TurnInput&, const TurnInput&) = default;
};

inline TurnInput swapped(const TurnInput& t) { return TurnInput{t.white, t.black}; }

}  // namespace sgo
