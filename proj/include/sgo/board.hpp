#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sgo/types.hpp"

namespace sgo {

enum class CellKind : std::uint8_t { empty, black, white, red, eblack, ewhite };

struct Cell {
    CellKind kind = CellKind::empty;
    int pair = 0;  // nonzero only for eblack / ewhite

    friend constexpr bool operator==(const Cell&, const Cell&) = default;
};

inline constexpr Cell kEmpty{};
inline constexpr Cell kRed{CellKind::red, 0};

constexpr Cell plain(Color c) { return Cell{c == Color::black ? CellKind::black : CellKind::white, 0}; }
constexpr Cell entangled(Color c, int pair) {
    return Cell{c == Color::black ? CellKind::eblack : CellKind::ewhite, pair};
}

constexpr bool is_plain(CellKind k) { return k == CellKind::black || k == CellKind::white; }
constexpr bool is_entangled(CellKind k) { return k == CellKind::eblack || k == CellKind::ewhite; }

// Nominal color of a plain or entangled stone.
constexpr std::optional<Color> stone_color(CellKind k) {
    switch (k) {
        case CellKind::black:
        case CellKind::eblack: return Color::black;
        case CellKind::white:
        case CellKind::ewhite: return Color::white;
        default: return std::nullopt;
    }
}

inline std::string cell_code(const Cell& c) {
    switch (c.kind) {
        case CellKind::empty: return ".";
        case CellKind::black: return "B";
        case CellKind::white: return "W";
        case CellKind::red: return "R";
        case CellKind::eblack: return "b" + std::to_string(c.pair);
        case CellKind::ewhite: return "w" + std::to_string(c.pair);
    }
    return "?";
}

// Inverse of cell_code; nullopt on unknown codes.
inline std::optional<Cell> parse_cell_code(std::string_view s) {
    if (s == ".") return kEmpty;
    if (s == "B") return plain(Color::black);
    if (s == "W") return plain(Color::white);
    if (s == "R") return kRed;
    if (s.size() >= 2 && (s[0] == 'b' || s[0] == 'w')) {
        int id = 0;
        for (char ch : s.substr(1)) {
            if (ch < '0' || ch > '9') return std::nullopt;
            id = id * 10 + (ch - '0');
            if (id > 1'000'000) return std::nullopt;
        }
        if (id == 0 || s[1] == '0') return std::nullopt;
        return entangled(s[0] == 'b' ? Color::black : Color::white, id);
    }
    return std::nullopt;
}

// One entanglement pair: the two sides are frozen at creation.
struct Entanglement {
    std::vector<Point> black;  // sorted
    std::vector<Point> white;  // sorted

    const std::vector<Point>& side(Color c) const { return c == Color::black ? black : white; }
    friend bool operator==(const Entanglement&, const Entanglement&) = default;
};

class Board {
public:
    explicit Board(int size = kDefaultSize) : size_(size) {
        if (size < kMinSize || size > kMaxSize) {
            throw Error(ErrorCode::invalid_size,
                        "board size " + std::to_string(size) + " outside [" + std::to_string(kMinSize) + ", " +
                            std::to_string(kMaxSize) + "]");
        }
        cells_.assign(static_cast<std::size_t>(size * size), kEmpty);
    }

    int size() const { return size_; }
    int area() const { return size_ * size_; }

    bool in_bounds(Point p) const { return p.col >= 0 && p.row >= 0 && p.col < size_ && p.row < size_; }
    int index(Point p) const { return p.row * size_ + p.col; }
    Point point(int idx) const { return Point{idx % size_, idx / size_}; }

    const Cell& at(Point p) const { return cells_[static_cast<std::size_t>(index(p))]; }
    const Cell& at(int idx) const { return cells_[static_cast<std::size_t>(idx)]; }

    // Writes a non-entangled cell state. Use entangle()/dissolve() for e-stones.
    void set(Point p, Cell c) {
        check(p);
        detach(p);
        cells_[static_cast<std::size_t>(index(p))] = c;
    }

    // Turns the given plain stones into a fresh entanglement pair.
    void entangle(int pair, std::vector<Point> blacks, std::vector<Point> whites) {
        std::sort(blacks.begin(), blacks.end());
        std::sort(whites.begin(), whites.end());
        for (Point p : blacks) set_raw(p, entangled(Color::black, pair));
        for (Point p : whites) set_raw(p, entangled(Color::white, pair));
        registry_[pair] = Entanglement{std::move(blacks), std::move(whites)};
    }

    // Resolves pair: the `winner` side becomes plain winner, the partner plain opposite(winner).
    void dissolve(int pair, Color winner) {
        auto it = registry_.find(pair);
        if (it == registry_.end()) return;
        for (Point p : it->second.side(winner)) set_raw(p, plain(winner));
        for (Point p : it->second.side(opposite(winner))) set_raw(p, plain(opposite(winner)));
        registry_.erase(it);
    }

    const std::map<int, Entanglement>& registry() const { return registry_; }

    // Smallest positive id not currently registered.
    int fresh_pair_id() const {
        int id = 1;
        for (const auto& [k, _] : registry_) {
            if (k != id) break;
            ++id;
        }
        return id;
    }

    friend bool operator==(const Board&, const Board&) = default;

private:
    void check(Point p) const {
        if (!in_bounds(p)) throw Error(ErrorCode::out_of_bounds, "point outside board");
    }

    void set_raw(Point p, Cell c) {
        check(p);
        cells_[static_cast<std::size_t>(index(p))] = c;
    }

    // Overwriting an e-stone drops it from its pair; a pair with an emptied side is dropped whole.
    void detach(Point p) {
        const Cell& old = at(p);
        if (!is_entangled(old.kind)) return;
        auto it = registry_.find(old.pair);
        if (it == registry_.end()) return;
        auto& side = old.kind == CellKind::eblack ? it->second.black : it->second.white;
        side.erase(std::remove(side.begin(), side.end(), p), side.end());
        if (side.empty()) {
            Color survivor = old.kind == CellKind::eblack ? Color::white : Color::black;
            for (Point q : it->second.side(survivor)) set_raw(q, plain(survivor));
            registry_.erase(it);
        }
    }

    int size_;
    std::vector<Cell> cells_;
    std::map<int, Entanglement> registry_;
};

inline Board make_board(int size) { return Board(size); }

inline std::vector<Point> neighbors(Point p, int size) {
    std::vector<Point> out;
    out.reserve(4);
    if (p.col > 0) out.push_back({p.col - 1, p.row});
    if (p.col + 1 < size) out.push_back({p.col + 1, p.row});
    if (p.row > 0) out.push_back({p.col, p.row - 1});
    if (p.row + 1 < size) out.push_back({p.col, p.row + 1});
    return out;
}

enum class GroupKind : std::uint8_t { black, white, red, eblack, ewhite };

struct Group {
    GroupKind kind = GroupKind::black;
    std::vector<Point> stones;  // sorted, nonempty
    std::optional<int> pair;

    friend bool operator==(const Group&, const Group&) = default;
};

inline GroupKind group_kind(CellKind k) {
    switch (k) {
        case CellKind::black: return GroupKind::black;
        case CellKind::white: return GroupKind::white;
        case CellKind::red: return GroupKind::red;
        case CellKind::eblack: return GroupKind::eblack;
        case CellKind::ewhite: return GroupKind::ewhite;
        case CellKind::empty: break;
    }
    throw Error(ErrorCode::invalid_setup, "empty cell has no group kind");
}

// Partition of all stones: plain chains by 4-connectivity, Red cells as
// singletons, e-stones by (kind, pair) regardless of connectivity.
// Ordered by each group's smallest point index.
inline std::vector<Group> compute_groups(const Board& b) {
    std::vector<Group> groups;
    std::vector<char> seen(static_cast<std::size_t>(b.area()), 0);
    std::map<std::pair<CellKind, int>, std::size_t> epos;
    for (int idx = 0; idx < b.area(); ++idx) {
        const Cell& c = b.at(idx);
        if (c.kind == CellKind::empty || seen[static_cast<std::size_t>(idx)]) continue;
        Point origin = b.point(idx);
        if (c.kind == CellKind::red) {
            groups.push_back(Group{GroupKind::red, {origin}, std::nullopt});
            seen[static_cast<std::size_t>(idx)] = 1;
            continue;
        }
        if (is_entangled(c.kind)) {
            auto key = std::make_pair(c.kind, c.pair);
            auto it = epos.find(key);
            if (it == epos.end()) {
                epos.emplace(key, groups.size());
                groups.push_back(Group{group_kind(c.kind), {origin}, c.pair});
            } else {
                groups[it->second].stones.push_back(origin);
            }
            seen[static_cast<std::size_t>(idx)] = 1;
            continue;
        }
        Group g{group_kind(c.kind), {}, std::nullopt};
        std::vector<Point> stack{origin};
        seen[static_cast<std::size_t>(idx)] = 1;
        while (!stack.empty()) {
            Point p = stack.back();
            stack.pop_back();
            g.stones.push_back(p);
            for (Point q : neighbors(p, b.size())) {
                int qi = b.index(q);
                if (!seen[static_cast<std::size_t>(qi)] && b.at(qi) == c) {
                    seen[static_cast<std::size_t>(qi)] = 1;
                    stack.push_back(q);
                }
            }
        }
        std::sort(g.stones.begin(), g.stones.end(),
                  [&](Point x, Point y) { return b.index(x) < b.index(y); });
        groups.push_back(std::move(g));
    }
    return groups;
}

inline std::vector<Point> liberties(const Board& b, const Group& g) {
    std::set<int> libs;
    for (Point p : g.stones)
        for (Point q : neighbors(p, b.size()))
            if (b.at(q).kind == CellKind::empty) libs.insert(b.index(q));
    std::vector<Point> out;
    for (int i : libs) out.push_back(b.point(i));
    return out;
}

inline Board color_flip(const Board& b) {
    Board out(b.size());
    for (int idx = 0; idx < b.area(); ++idx) {
        const Cell& c = b.at(idx);
        switch (c.kind) {
            case CellKind::black: out.set(b.point(idx), plain(Color::white)); break;
            case CellKind::white: out.set(b.point(idx), plain(Color::black)); break;
            case CellKind::red: out.set(b.point(idx), kRed); break;
            default: break;
        }
    }
    for (const auto& [id, e] : b.registry()) out.entangle(id, e.white, e.black);
    return out;
}

// Registry consistency; returns a description of the first violation found.
inline std::optional<std::string> check_invariants(const Board& b) {
    std::map<std::pair<CellKind, int>, std::vector<Point>> seen;
    for (int idx = 0; idx < b.area(); ++idx) {
        const Cell& c = b.at(idx);
        if (is_entangled(c.kind)) {
            if (!b.registry().contains(c.pair))
                return "e-stone at " + to_coord(b.point(idx)) + " has unregistered pair " + std::to_string(c.pair);
            seen[{c.kind, c.pair}].push_back(b.point(idx));
        } else if (c.pair != 0) {
            return "non-entangled cell at " + to_coord(b.point(idx)) + " carries a pair id";
        }
    }
    for (const auto& [id, e] : b.registry()) {
        if (e.black.empty() || e.white.empty()) return "pair " + std::to_string(id) + " has an empty side";
        auto blacks = seen[{CellKind::eblack, id}];
        auto whites = seen[{CellKind::ewhite, id}];
        std::sort(blacks.begin(), blacks.end());
        std::sort(whites.begin(), whites.end());
        if (blacks != e.black || whites != e.white)
            return "pair " + std::to_string(id) + " registry does not match its cells";
    }
    return std::nullopt;
}

// ASCII fixture: "size N" then N rows, top row first.
inline std::string to_fixture(const Board& b) {
    std::ostringstream out;
    out << "size " << b.size() << '\n';
    for (int row = b.size() - 1; row >= 0; --row) {
        for (int col = 0; col < b.size(); ++col) {
            if (col) out << ' ';
            out << cell_code(b.at(Point{col, row}));
        }
        out << '\n';
    }
    return out.str();
}

// 64-bit FNV-1a; used for fingerprints and outcome digests.
inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fingerprint(const Board& b) { return fnv1a(to_fixture(b)); }

inline int count_kind(const Board& b, CellKind k) {
    int n = 0;
    for (int idx = 0; idx < b.area(); ++idx) n += b.at(idx).kind == k;
    return n;
}

}  // namespace sgo
