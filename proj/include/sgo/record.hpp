#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sgo/board.hpp"
#include "sgo/match.hpp"

namespace sgo {

// Text form:
//   sgo 1
//   size 7
//   setup
//   B E7
//   R C4
//   1. B C4 W C4
//   2. B pass W E3
// '#' starts a comment; keywords are case-insensitive.
struct GameRecord {
    int size = kDefaultSize;
    std::vector<SetupStone> setup;
    std::vector<TurnInput> turns;

    friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

struct Diagnostic {
    int line = 0;
    int column = 0;
    std::string message;
};

class ParseError : public Error {
public:
    explicit ParseError(std::vector<Diagnostic> diags)
        : Error(ErrorCode::parse_error, render(diags)), diags_(std::move(diags)) {}

    const std::vector<Diagnostic>& diagnostics() const { return diags_; }

private:
    static std::string render(const std::vector<Diagnostic>& diags) {
        std::string out;
        for (const auto& d : diags) {
            if (!out.empty()) out += '\n';
            out += std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message;
        }
        return out;
    }

    std::vector<Diagnostic> diags_;
};

inline std::string serialize(const GameRecord& r) {
    std::ostringstream out;
    out << "sgo 1\nsize " << r.size << '\n';
    if (!r.setup.empty()) {
        out << "setup\n";
        for (const auto& s : r.setup) out << cell_code(s.cell) << ' ' << to_coord(s.point) << '\n';
    }
    for (std::size_t i = 0; i < r.turns.size(); ++i)
        out << i + 1 << ". B " << to_string(r.turns[i].black) << " W " << to_string(r.turns[i].white) << '\n';
    return out.str();
}

namespace detail {

struct Token {
    std::string text;
    int column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
        out.push_back(Token{std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    return out;
}

inline std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

}  // namespace detail

// Strict parse; every problem found is reported with its line and column.
inline GameRecord parse_record(std::string_view text) {
    GameRecord r;
    std::vector<Diagnostic> errs;
    enum class Section { header, size, body } section = Section::header;
    bool in_setup = false;
    std::set<Point> setup_points;
    std::map<int, std::pair<int, int>> pair_sides;  // id -> (black count, white count)
    std::map<int, int> pair_line;
    int line_no = 0;
    for (std::string_view line : detail::split_lines(text)) {
        ++line_no;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        auto err = [&](const detail::Token& t, std::string msg) { errs.push_back({line_no, t.column, std::move(msg)}); };
        std::string head = detail::lower(toks[0].text);

        if (section == Section::header) {
            if (head != "sgo" || toks.size() != 2 || toks[1].text != "1") {
                err(toks[0], "expected header 'sgo 1'");
                break;
            }
            section = Section::size;
            continue;
        }
        if (section == Section::size) {
            if (head != "size" || toks.size() != 2) {
                err(toks[0], "expected 'size N'");
                break;
            }
            try {
                std::size_t used = 0;
                r.size = std::stoi(toks[1].text, &used);
                if (used != toks[1].text.size()) throw std::invalid_argument("size");
            } catch (const std::exception&) {
                err(toks[1], "size is not a number");
                break;
            }
            if (r.size < kMinSize || r.size > kMaxSize) {
                err(toks[1], "size out of range [" + std::to_string(kMinSize) + ", " + std::to_string(kMaxSize) + "]");
                break;
            }
            section = Section::body;
            continue;
        }

        if (head == "setup" && toks.size() == 1) {
            if (!r.setup.empty() || !r.turns.empty() || in_setup) err(toks[0], "setup block must come once, before turns");
            in_setup = true;
            continue;
        }
        if (head.size() >= 2 && head.back() == '.' && std::all_of(head.begin(), head.end() - 1, ::isdigit)) {
            in_setup = false;
            int number = std::stoi(head.substr(0, head.size() - 1));
            if (number != static_cast<int>(r.turns.size()) + 1) {
                err(toks[0], "turn " + std::to_string(number) + " out of sequence, expected " +
                                 std::to_string(r.turns.size() + 1));
            }
            if (toks.size() != 5 || detail::lower(toks[1].text) != "b" || detail::lower(toks[3].text) != "w") {
                err(toks[0], "expected 'k. B <move> W <move>'");
                r.turns.push_back(TurnInput{});
                continue;
            }
            TurnInput t;
            auto mb = parse_move(toks[2].text, r.size);
            auto mw = parse_move(toks[4].text, r.size);
            if (!mb) err(toks[2], "bad coordinate '" + toks[2].text + "'");
            if (!mw) err(toks[4], "bad coordinate '" + toks[4].text + "'");
            if (mb) t.black = *mb;
            if (mw) t.white = *mw;
            r.turns.push_back(t);
            continue;
        }
        if (in_setup && toks.size() == 2) {
            auto cell = parse_cell_code(toks[0].text);
            if (!cell || cell->kind == CellKind::empty) {
                err(toks[0], "unknown cell code '" + toks[0].text + "'");
                continue;
            }
            auto p = parse_coord(toks[1].text, r.size);
            if (!p) {
                err(toks[1], "bad coordinate '" + toks[1].text + "'");
                continue;
            }
            if (!setup_points.insert(*p).second) {
                err(toks[1], "duplicate setup point " + to_coord(*p));
                continue;
            }
            if (is_entangled(cell->kind)) {
                auto& counts = pair_sides[cell->pair];
                (cell->kind == CellKind::eblack ? counts.first : counts.second) += 1;
                pair_line.try_emplace(cell->pair, line_no);
            }
            r.setup.push_back(SetupStone{*p, *cell});
            continue;
        }
        err(toks[0], "unknown directive '" + toks[0].text + "'");
    }
    if (section != Section::body && errs.empty())
        errs.push_back({line_no + 1, 1, section == Section::header ? "missing 'sgo 1' header" : "missing 'size N' line"});
    for (const auto& [id, counts] : pair_sides) {
        if (counts.first == 0 || counts.second == 0)
            errs.push_back({pair_line[id], 1, "pair " + std::to_string(id) + " lacks a black or white side"});
    }
    if (!errs.empty()) throw ParseError(std::move(errs));
    return r;
}

// Parses the ASCII board fixture: "size N" then N rows, top row first.
inline Board parse_diagram(std::string_view text) {
    std::vector<Diagnostic> errs;
    std::vector<std::pair<int, std::vector<detail::Token>>> rows;
    int line_no = 0;
    int size = 0;
    for (std::string_view line : detail::split_lines(text)) {
        ++line_no;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        if (size == 0) {
            if (detail::lower(toks[0].text) != "size" || toks.size() != 2 ||
                !std::all_of(toks[1].text.begin(), toks[1].text.end(), ::isdigit) || toks[1].text.size() > 3) {
                throw ParseError({{line_no, toks[0].column, "expected 'size N'"}});
            }
            size = std::stoi(toks[1].text);
            if (size < kMinSize || size > kMaxSize) throw ParseError({{line_no, toks[1].column, "size out of range"}});
            continue;
        }
        rows.emplace_back(line_no, std::move(toks));
    }
    if (size == 0) throw ParseError({{1, 1, "missing 'size N' line"}});
    if (static_cast<int>(rows.size()) != size)
        throw ParseError({{line_no, 1, "expected " + std::to_string(size) + " rows, found " + std::to_string(rows.size())}});

    std::vector<SetupStone> stones;
    for (int r = 0; r < size; ++r) {
        const auto& [ln, toks] = rows[static_cast<std::size_t>(r)];
        if (static_cast<int>(toks.size()) != size) {
            errs.push_back({ln, 1, "expected " + std::to_string(size) + " cells, found " + std::to_string(toks.size())});
            continue;
        }
        for (int c = 0; c < size; ++c) {
            auto cell = parse_cell_code(toks[static_cast<std::size_t>(c)].text);
            if (!cell) {
                errs.push_back({ln, toks[static_cast<std::size_t>(c)].column,
                                "unknown cell code '" + toks[static_cast<std::size_t>(c)].text + "'"});
                continue;
            }
            if (cell->kind != CellKind::empty) stones.push_back(SetupStone{Point{c, size - 1 - r}, *cell});
        }
    }
    if (!errs.empty()) throw ParseError(std::move(errs));
    return board_from_setup(size, stones);
}

// Setup stones listing every non-empty cell of a board in row-major order.
inline std::vector<SetupStone> setup_of(const Board& b) {
    std::vector<SetupStone> out;
    for (int idx = 0; idx < b.area(); ++idx)
        if (b.at(idx).kind != CellKind::empty) out.push_back(SetupStone{b.point(idx), b.at(idx)});
    return out;
}

class ReplayError : public Error {
public:
    ReplayError(int turn, const Error& cause)
        : Error(cause.code(), "turn " + std::to_string(turn) + ": " + cause.what()), turn_(turn) {}
    int turn() const { return turn_; }

private:
    int turn_;
};

inline GameState replay(const GameRecord& r, std::optional<int> max_turns = std::nullopt) {
    GameState g = new_game(GameConfig{r.size, r.setup, max_turns});
    for (std::size_t i = 0; i < r.turns.size(); ++i) {
        try {
            g = step(std::move(g), r.turns[i]);
        } catch (const Error& e) {
            throw ReplayError(static_cast<int>(i) + 1, e);
        }
    }
    return g;
}

inline GameRecord record_of(const GameState& g, const std::vector<SetupStone>& setup) {
    GameRecord r{g.board.size(), setup, {}};
    for (const auto& h : g.history) r.turns.push_back(h.input);
    return r;
}

}  // namespace sgo
